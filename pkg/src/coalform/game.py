"""Coalition-structure formation games and their induced normal form.

A :class:`GameSpec` is extensional: per-player label sets for each coalition
structure a player may pick, and an explicit payoff row for every
(structure, label profile) the mechanism can produce. :func:`build_game`
validates it; :func:`induced_normal_form` composes it with a mechanism into
an ordinary finite game over (structure, label) choices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    DuplicateLabel,
    InvalidBounds,
    MechanismImageUncovered,
    MissingPayoff,
    ScaleExceeded,
    StructureOutOfBounds,
    UnknownPlayer,
    ValidationError,
)
from .mechanism import Mechanism, Outcome, TableMechanism, get_mechanism
from .partitions import CoalitionStructure, enumerate_structures, growth_key

MAX_PROFILES = 10**6


@dataclass(frozen=True)
class Choice:
    structure: CoalitionStructure
    label: str

    def __str__(self):
        return f"({self.structure.id},{self.label})"


@dataclass
class GameSpec:
    n_players: int
    k_max: int
    # (player, structure) -> labels available to that player in that structure
    strategy_labels: dict[tuple[int, CoalitionStructure], tuple[str, ...]]
    # (structure, labels of players 1..n) -> payoff of players 1..n
    payoffs: dict[tuple[CoalitionStructure, tuple[str, ...]], tuple[Fraction, ...]]
    mechanism_name: str = "unanimity"
    projection: dict = field(default_factory=dict)
    mechanism_table: dict | None = None
    player_names: tuple[str, ...] | None = None

    @property
    def names(self) -> tuple[str, ...]:
        return self.player_names or tuple(str(i) for i in range(1, self.n_players + 1))

    def structures(self) -> list[CoalitionStructure]:
        """Structures some player can pick, in canonical order."""
        found = {s for (_, s) in self.strategy_labels}
        return sorted(found, key=growth_key, reverse=True)


def _check_structure(s: CoalitionStructure, n: int, k: int) -> None:
    if s.players != tuple(range(1, n + 1)):
        raise StructureOutOfBounds(f"structure {s} does not partition players 1..{n}")
    if s.max_block > k:
        raise StructureOutOfBounds(f"structure {s} has a coalition larger than k={k}")


class Game:
    """A validated game. Build with :func:`build_game`."""

    def __init__(self, spec: GameSpec, mechanism: Mechanism):
        self.spec = spec
        self.n_players = spec.n_players
        self.k_max = spec.k_max
        self.strategy_labels = spec.strategy_labels
        self.payoffs = spec.payoffs
        self.mechanism = mechanism
        order = {s: r for r, s in enumerate(enumerate_structures(spec.n_players, spec.k_max))}
        sets = []
        for i in range(1, self.n_players + 1):
            keys = sorted((s for (p, s) in spec.strategy_labels if p == i), key=order.__getitem__)
            sets.append(tuple(Choice(s, lab) for s in keys for lab in spec.strategy_labels[(i, s)]))
        self.choice_sets: tuple[tuple[Choice, ...], ...] = tuple(sets)

    @property
    def names(self):
        return self.spec.names

    @property
    def n_profiles(self) -> int:
        return math.prod(len(c) for c in self.choice_sets)

    def choice_set(self, i: int) -> tuple[Choice, ...]:
        if not 1 <= i <= self.n_players:
            raise UnknownPlayer(f"no player {i} in a {self.n_players}-player game")
        return self.choice_sets[i - 1]

    def payoff(self, structure: CoalitionStructure, labels: Sequence[str]) -> tuple[Fraction, ...]:
        return self.payoffs[(structure, tuple(labels))]

    @cached_property
    def induced(self) -> "InducedGame":
        return induced_normal_form(self, self.mechanism)

    def __repr__(self):
        return (f"Game(n={self.n_players}, k={self.k_max}, mechanism={self.mechanism.name}, "
                f"choices={[len(c) for c in self.choice_sets]})")


class InducedGame:
    """Finite normal-form game over choices, payoffs read at the mechanism's outcome.

    Profiles are addressed by C-order flat index over ``dims``.
    """

    def __init__(self, choice_sets, outcomes, outcome_index, payoff_exact, names=None):
        self.choice_sets = tuple(tuple(c) for c in choice_sets)
        self.n_players = len(self.choice_sets)
        self.dims = np.array([len(c) for c in self.choice_sets], dtype=np.int64)
        self.outcomes: list[Outcome] = outcomes
        self.outcome_index = outcome_index
        self.payoff_exact = payoff_exact
        self.payoff_float = payoff_exact.astype(float)
        self.names = names or tuple(str(i) for i in range(1, self.n_players + 1))
        structs = sorted({o.structure for o in outcomes}, key=growth_key, reverse=True)
        self.structures: list[CoalitionStructure] = structs
        pos = {s: j for j, s in enumerate(structs)}
        to_struct = np.array([pos[o.structure] for o in outcomes], dtype=np.int64)
        self.structure_index = to_struct[outcome_index] if len(outcomes) else outcome_index

    @property
    def n_profiles(self) -> int:
        return int(self.payoff_exact.shape[1])

    def flat_index(self, indices: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(indices), tuple(self.dims)))

    def indices_of(self, profile: Sequence[Choice]) -> tuple[int, ...]:
        try:
            return tuple(cs.index(c) for cs, c in zip(self.choice_sets, profile))
        except ValueError:
            raise ValidationError(f"profile {tuple(map(str, profile))} is not in the choice space") from None

    def _flat(self, profile) -> int:
        if len(profile) != self.n_players:
            raise ValidationError(f"profile needs {self.n_players} entries, got {len(profile)}")
        if all(isinstance(c, (int, np.integer)) for c in profile):
            return self.flat_index(profile)
        return self.flat_index(self.indices_of(profile))

    def utility(self, profile) -> tuple[Fraction, ...]:
        """Exact payoff vector at a profile of choices (or choice indices)."""
        return tuple(self.payoff_exact[:, self._flat(profile)])

    def outcome(self, profile) -> Outcome:
        return self.outcomes[self.outcome_index[self._flat(profile)]]

    def matrix(self, i: int, exact: bool = True) -> np.ndarray:
        """Payoff tensor of player ``i`` (1-based), shape ``dims``."""
        src = self.payoff_exact if exact else self.payoff_float
        return src[i - 1].reshape(tuple(self.dims))


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValidationError(f"payoff {v!r} is not finite")
        return Fraction(repr(v))
    return Fraction(v)


def induced_normal_form(game: Game, m: Mechanism) -> InducedGame:
    """Compose ``game`` with ``m`` by applying the mechanism to every choice profile."""
    n = game.n_players
    total = game.n_profiles
    exact = np.empty((n, total), dtype=object)
    outcome_index = np.empty(total, dtype=np.int64)
    outcomes: list[Outcome] = []
    seen: dict[Outcome, int] = {}
    for p, profile in enumerate(product(*game.choice_sets)):
        o = m.apply(profile, game.strategy_labels)
        j = seen.get(o)
        if j is None:
            for i, lab in enumerate(o.labels, start=1):
                if lab not in game.strategy_labels.get((i, o.structure), ()):
                    raise MechanismImageUncovered(
                        f"mechanism gives player {i} label {lab!r} in {o.structure}, which is not declared there")
            if (o.structure, o.labels) not in game.payoffs:
                raise MechanismImageUncovered(
                    f"no payoff row for structure {o.structure} with labels {o.labels}")
            j = seen[o] = len(outcomes)
            outcomes.append(o)
        outcome_index[p] = j
        exact[:, p] = game.payoffs[(o.structure, o.labels)]
    return InducedGame(game.choice_sets, outcomes, outcome_index, exact, game.names)


def build_game(spec: GameSpec, force: bool = False) -> Game:
    """Validate ``spec`` and return the game, with its induced normal form precomputed."""
    n, k = spec.n_players, spec.k_max
    if n < 1 or k < 1 or k > n:
        raise InvalidBounds(f"need 1 <= k <= n, got n={n}, k={k}")
    if not spec.strategy_labels:
        raise ValidationError("no strategies declared")
    for (i, s), labels in spec.strategy_labels.items():
        if not 1 <= i <= n:
            raise UnknownPlayer(f"strategies declared for unknown player {i}")
        _check_structure(s, n, k)
        if not labels:
            raise ValidationError(f"player {i} has an empty label set in {s}")
        if len(set(labels)) != len(labels):
            raise DuplicateLabel(f"player {i} repeats a label in {s}: {list(labels)}")
    for (s, labels), pay in spec.payoffs.items():
        _check_structure(s, n, k)
        if len(labels) != n or len(pay) != n:
            raise ValidationError(f"payoff row for {s} {labels} must have {n} labels and {n} payoffs")
        for v in pay:
            if not isinstance(v, Fraction):
                raise ValidationError(f"payoff {v!r} for {s} {labels} is not an exact rational")
    for i in range(1, n + 1):
        if not any(p == i for (p, _) in spec.strategy_labels):
            raise ValidationError(f"player {i} has no choices")

    if spec.mechanism_table is not None:
        mech = TableMechanism(spec.mechanism_table, spec.projection)
    else:
        mech = get_mechanism(spec.mechanism_name, spec.projection)
    game = Game(spec, mech)
    if game.n_profiles > MAX_PROFILES and not force:
        raise ScaleExceeded(f"{game.n_profiles} choice profiles exceed the {MAX_PROFILES} guardrail")

    try:
        induced = induced_normal_form(game, mech)
    except MechanismImageUncovered as exc:
        raise MissingPayoff(str(exc)) from None
    for s in induced.structures:
        label_sets = []
        for i in range(1, n + 1):
            if (i, s) not in spec.strategy_labels:
                raise MissingPayoff(f"structure {s} is implementable but player {i} has no labels there")
            label_sets.append(spec.strategy_labels[(i, s)])
        for labels in product(*label_sets):
            if (s, labels) not in spec.payoffs:
                raise MissingPayoff(f"implementable structure {s} lacks a payoff row for labels {labels}")
    game.__dict__["induced"] = induced
    return game


def choice_set(game: Game, i: int) -> tuple[Choice, ...]:
    return game.choice_set(i)


def nested_specs(small: GameSpec, big: GameSpec) -> bool:
    """True iff ``big`` extends ``small``: same labels and payoffs wherever ``small`` defines them."""
    if small.n_players != big.n_players:
        return False
    for key, labels in small.strategy_labels.items():
        if big.strategy_labels.get(key) != labels:
            return False
    return all(big.payoffs.get(key) == pay for key, pay in small.payoffs.items())


def spec_from_payoff_tensor(payoffs, labels: Sequence[Sequence[str]] | None = None) -> GameSpec:
    """K=1 spec whose only structure is all-singletons: a plain normal-form game."""
    arr = np.asarray(payoffs, dtype=object)
    n = arr.shape[0]
    dims = arr.shape[1:]
    labels = [list(l) for l in labels] if labels else [[f"a{j}" for j in range(d)] for d in dims]
    sep = CoalitionStructure.separated(range(1, n + 1))
    strategy_labels = {(i + 1, sep): tuple(labels[i]) for i in range(n)}
    pay = {}
    for combo in product(*[range(d) for d in dims]):
        key = (sep, tuple(labels[i][a] for i, a in enumerate(combo)))
        pay[key] = tuple(_as_fraction(arr[(i,) + combo]) for i in range(n))
    return GameSpec(n, 1, strategy_labels, pay, mechanism_name="identity")
