"""Stability of a family of games indexed by the maximum coalition size.

Player ``i``'s equilibrium payoff in the game with bound ``K`` is compared
with the best payoff ``i`` could get in the game with bound ``K1`` by
deviating against that game's equilibrium. Local stability looks at
``K1 = K +- 1``, global stability at every ``K1 != K``, and the strong
criterion additionally wants the grand coalition to be the only outcome at
``K = N``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .equilibrium import (
    VERIFY_EPS,
    EquilibriumResult,
    action_values,
    solve,
)
from .errors import MissingEquilibrium, ValidationError
from .game import Choice, Game

MODES = ("forall", "exists")


def select_equilibrium(results: Sequence[EquilibriumResult]) -> int:
    """Index of the equilibrium reported as the game's outcome.

    Highest total expected payoff wins; ties prefer a tied-block representative,
    then the earliest in support order.
    """
    if not results:
        raise MissingEquilibrium("no equilibria to select from")
    return min(range(len(results)),
               key=lambda j: (-sum(results[j].payoffs), not results[j].component, j))


@dataclass
class FamilyEntry:
    k: int
    game: Game
    equilibria: list[EquilibriumResult]
    selected: int = 0

    @property
    def equilibrium(self) -> EquilibriumResult:
        return self.equilibria[self.selected]


@dataclass(frozen=True)
class Comparison:
    player: int
    k: int
    k1: int
    equilibrium_index: int
    equilibrium_payoff: object
    deviation: Choice
    deviation_payoff: object

    @property
    def holds(self) -> bool:
        return self.equilibrium_payoff >= self.deviation_payoff


@dataclass
class Witness:
    reason: str
    player: int | None = None
    k: int | None = None
    k1: int | None = None
    equilibrium_index: int | None = None
    deviation: Choice | None = None
    deviation_payoff: object = None
    equilibrium_payoff: object = None
    mass: object = None


@dataclass
class Verdict:
    criterion: str
    k: int
    mode: str
    stable: bool
    witnesses: list[Witness] = field(default_factory=list)
    comparisons: list[Comparison] = field(default_factory=list)


class FamilyAnalysis:
    """Games ``K = 1..N`` with their stored equilibria and one selected equilibrium each."""

    def __init__(self, entries: Sequence[FamilyEntry], eps: float = VERIFY_EPS):
        entries = sorted(entries, key=lambda e: e.k)
        ks = [e.k for e in entries]
        if not entries or ks != list(range(1, len(entries) + 1)):
            raise ValidationError(f"family must cover K = 1..N contiguously, got {ks}")
        n = {e.game.n_players for e in entries}
        if len(n) != 1:
            raise ValidationError("all games of a family need the same players")
        self.n_players = n.pop()
        if len(entries) != self.n_players:
            raise ValidationError(f"{self.n_players} players need K = 1..{self.n_players}, got {len(entries)} games")
        for e in entries:
            for j, res in enumerate(e.equilibria):
                if res.max_regret > eps:
                    raise ValidationError(f"K={e.k} equilibrium {j} has regret {res.max_regret}")
        self.entries = {e.k: e for e in entries}
        self.eps = eps
        self._cache: dict = {}

    @property
    def N(self) -> int:
        return len(self.entries)

    def entry(self, k: int) -> FamilyEntry:
        e = self.entries.get(k)
        if e is None or not e.equilibria:
            raise MissingEquilibrium(f"no equilibrium stored for K={k}")
        return e

    def compare(self, player: int, k: int, k1: int) -> list[Comparison]:
        """One comparison per stored equilibrium of the ``K1`` game."""
        key = (player, k, k1)
        if key not in self._cache:
            mine = self.entry(k).equilibrium.payoffs[player - 1]
            other = self.entry(k1)
            g1 = other.game.induced
            rows = []
            for j, res in enumerate(other.equilibria):
                vals = action_values(g1, res.profile)[player - 1]
                best = max(vals)
                a = next(t for t, v in enumerate(vals) if v == best)
                rows.append(Comparison(player, k, k1, j, mine, g1.choice_sets[player - 1][a], best))
            self._cache[key] = rows
        return self._cache[key]

    def table(self) -> list[Comparison]:
        out = []
        for k in self.entries:
            for k1 in self.entries:
                if k1 != k:
                    for i in range(1, self.n_players + 1):
                        out.extend(self.compare(i, k, k1))
        return out


def analyze_family(games: Sequence[Game], method: str = "auto", eps: float = VERIFY_EPS,
                   equilibria: dict | None = None) -> FamilyAnalysis:
    """Solve every game of the family (index ``K`` is each game's ``k_max``).

    ``equilibria`` may supply precomputed result lists per ``K``.
    """
    entries = []
    for game in games:
        k = game.k_max
        res = list(equilibria[k]) if equilibria and k in equilibria else list(solve(game.induced, method))
        entries.append(FamilyEntry(k, game, res, select_equilibrium(res) if res else 0))
    return FamilyAnalysis(entries, eps)


def _check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def _against(fam: FamilyAnalysis, k: int, others: Sequence[int], mode: str, criterion: str) -> Verdict:
    _check_mode(mode)
    fam.entry(k)
    stable = True
    witnesses = []
    comparisons = []
    for i in range(1, fam.n_players + 1):
        for k1 in others:
            rows = fam.compare(i, k, k1)
            comparisons.extend(rows)
            ok = all(r.holds for r in rows) if mode == "forall" else any(r.holds for r in rows)
            if not ok:
                stable = False
                for r in rows:
                    if not r.holds:
                        witnesses.append(Witness(
                            reason=(f"player {i} gets {r.deviation_payoff} in K={k1} by playing "
                                    f"{r.deviation} against equilibrium {r.equilibrium_index}, "
                                    f"more than {r.equilibrium_payoff} at K={k}"),
                            player=i, k=k, k1=k1, equilibrium_index=r.equilibrium_index,
                            deviation=r.deviation, deviation_payoff=r.deviation_payoff,
                            equilibrium_payoff=r.equilibrium_payoff))
    return Verdict(criterion, k, mode, stable, witnesses, comparisons)


def local_stability(fam: FamilyAnalysis, k: int, mode: str = "forall") -> Verdict:
    """Compare against the neighbouring bounds ``K - 1`` and ``K + 1`` that exist."""
    others = [k1 for k1 in (k - 1, k + 1) if 1 <= k1 <= fam.N]
    return _against(fam, k, others, mode, "local")


def global_stability(fam: FamilyAnalysis, k: int, mode: str = "forall") -> Verdict:
    others = [k1 for k1 in range(1, fam.N + 1) if k1 != k]
    verdict = _against(fam, k, others, mode, "global")
    if verdict.stable and not local_stability(fam, k, mode).stable:
        raise AssertionError(f"global stability at K={k} without local stability")
    return verdict


def _describe(s) -> str:
    if s.is_grand:
        return f"grand ({s.id})"
    if s.is_separated:
        return f"separated ({s.id})"
    return s.id


def strong_nash_criterion(fam: FamilyAnalysis, mode: str = "forall") -> Verdict:
    """Global stability at ``K = N`` plus a point mass on the grand coalition."""
    n = fam.N
    verdict = global_stability(fam, n, mode)
    verdict.criterion = "strong"
    dist = fam.entry(n).equilibrium.structure_distribution
    for s, mass in dist.items():
        if not s.is_grand and mass > 0:
            verdict.stable = False
            verdict.witnesses.append(Witness(
                reason=f"structure distribution mass {mass} on {_describe(s)}", k=n, mass=mass))
    if not any(s.is_grand for s in dist):
        verdict.stable = False
    return verdict


def evaluate(fam: FamilyAnalysis, criterion: str, mode: str = "forall", k: int | None = None) -> list[Verdict]:
    if criterion == "strong":
        return [strong_nash_criterion(fam, mode)]
    fn = {"local": local_stability, "global": global_stability}.get(criterion)
    if fn is None:
        raise ValueError(f"unknown criterion {criterion!r}")
    ks = [k] if k is not None else list(fam.entries)
    return [fn(fam, kk, mode) for kk in ks]
