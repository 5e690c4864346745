"""Nash equilibria of induced games.

A mixed profile is a sequence with one probability vector per player over
that player's choice set. Vectors of ``Fraction`` (or ``int``) take the
exact path; anything else is treated as float.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np
from scipy import optimize

from . import kernels
from .errors import DimensionMismatch, InvalidInit, NonConvergence, ScaleExceeded, UnknownPlayer
from .game import Game, InducedGame
from .partitions import CoalitionStructure

log = logging.getLogger(__name__)

VERIFY_EPS = 1e-9
REPLICATOR_EPS = 1e-6
MAX_SUPPORT_SYSTEMS = 200_000


@dataclass
class EquilibriumResult:
    profile: list
    payoffs: tuple
    regret: tuple
    structure_distribution: dict
    method: str
    support: tuple[tuple[int, ...], ...]
    exact: bool
    converged: bool = True
    component: bool = False
    degenerate: bool = False
    steps: int | None = None

    @property
    def max_regret(self):
        return max(self.regret)


class EquilibriumSet(list):
    """List of results; ``failures`` holds (support, reason) pairs the numeric search gave up on."""

    def __init__(self, items=(), failures=()):
        super().__init__(items)
        self.failures = list(failures)


# ---------------------------------------------------------------- profiles


def _is_exact(p) -> bool:
    return all(isinstance(v, (Fraction, int)) and not isinstance(v, bool) for vec in p for v in vec)


def check_profile(g: InducedGame, p) -> bool:
    """Validate shape and normalization; return True for an exact profile."""
    if len(p) != g.n_players:
        raise DimensionMismatch(f"profile has {len(p)} vectors for {g.n_players} players")
    exact = _is_exact(p)
    for i, (vec, d) in enumerate(zip(p, g.dims), start=1):
        if len(vec) != d:
            raise DimensionMismatch(f"player {i}: vector of length {len(vec)}, expected {d}")
        if exact:
            if any(v < 0 for v in vec) or sum(vec) != 1:
                raise DimensionMismatch(f"player {i}: not a probability vector")
        else:
            arr = np.asarray(vec, dtype=float)
            if arr.min() < -1e-12 or abs(arr.sum() - 1.0) > 1e-12:
                raise DimensionMismatch(f"player {i}: not a probability vector (sum {arr.sum()!r})")
    return exact


def pure_profile(g: InducedGame, indices: Sequence[int]) -> list[list[Fraction]]:
    out = []
    for a, d in zip(indices, g.dims):
        vec = [Fraction(0)] * int(d)
        vec[a] = Fraction(1)
        out.append(vec)
    return out


def uniform_profile(g: InducedGame, exact: bool = True, supports=None) -> list:
    supports = supports or [range(int(d)) for d in g.dims]
    out = []
    for sup, d in zip(supports, g.dims):
        sup = list(sup)
        if exact:
            vec = [Fraction(0)] * int(d)
            for a in sup:
                vec[a] = Fraction(1, len(sup))
        else:
            vec = np.zeros(int(d))
            vec[sup] = 1.0 / len(sup)
        out.append(vec)
    return out


def support_of(p, tol: float = 0.0) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(a for a, v in enumerate(vec) if v > tol) for vec in p)


def _flat_float(p) -> np.ndarray:
    return np.concatenate([np.asarray(vec, dtype=float) for vec in p])


def _offsets(g: InducedGame) -> np.ndarray:
    return kernels.offsets_of(g.dims)


# ---------------------------------------------------------------- values


def _exact_action_values(g: InducedGame, p) -> list[list[Fraction]]:
    shape = tuple(int(d) for d in g.dims)
    supports = support_of(p)
    out = []
    for i in range(g.n_players):
        vals = [Fraction(0)] * shape[i]
        ranges = [supports[j] if j != i else range(shape[i]) for j in range(g.n_players)]
        for combo in product(*ranges):
            w = Fraction(1)
            for j, a in enumerate(combo):
                if j != i:
                    w *= p[j][a]
            flat = np.ravel_multi_index(combo, shape)
            vals[combo[i]] += w * g.payoff_exact[i, flat]
        out.append(vals)
    return out


def action_values(g: InducedGame, p) -> list:
    """Per player, the expected payoff of each pure choice against the others' mixture."""
    if check_profile(g, p):
        return _exact_action_values(g, p)
    off = _offsets(g)
    vals = kernels.action_values(g.payoff_float, g.dims, off, _flat_float(p))
    return [vals[off[i]:off[i + 1]] for i in range(g.n_players)]


def _eu_from_values(p, vals, exact):
    if exact:
        return tuple(sum((x * v for x, v in zip(p[i], vals[i])), Fraction(0)) for i in range(len(p)))
    return tuple(float(np.dot(np.asarray(p[i], dtype=float), vals[i])) for i in range(len(p)))


def expected_utility(g: InducedGame, p) -> tuple:
    """Expected payoff of every player under the product distribution ``p``."""
    exact = check_profile(g, p)
    return _eu_from_values(p, action_values(g, p), exact)


def best_response(g: InducedGame, i: int, p) -> tuple[int, object]:
    """Lowest-index best pure choice of player ``i`` (1-based) against ``p`` and its value."""
    if not 1 <= i <= g.n_players:
        raise UnknownPlayer(f"no player {i}")
    vals = action_values(g, p)[i - 1]
    best = max(vals)
    a = next(j for j, v in enumerate(vals) if v == best)
    return a, best


def best_response_value(g: InducedGame, i: int, p):
    """Best payoff player ``i`` can get by deviating against the others' part of ``p``."""
    return best_response(g, i, p)[1]


def regrets(g: InducedGame, p) -> tuple:
    exact = check_profile(g, p)
    vals = action_values(g, p)
    eu = _eu_from_values(p, vals, exact)
    out = []
    for i in range(g.n_players):
        r = max(vals[i]) - eu[i]
        out.append(r if exact else max(float(r), 0.0))
    return tuple(out)


def verify_equilibrium(g: InducedGame, p, eps: float = VERIFY_EPS) -> tuple[bool, tuple]:
    r = regrets(g, p)
    return all(x <= eps for x in r), r


# ---------------------------------------------------------------- pushforward


def _distribution(g: InducedGame, p) -> dict:
    if check_profile(g, p):
        acc: dict[int, Fraction] = {}
        shape = tuple(int(d) for d in g.dims)
        for combo in product(*support_of(p)):
            w = Fraction(1)
            for j, a in enumerate(combo):
                w *= p[j][a]
            s = int(g.structure_index[np.ravel_multi_index(combo, shape)])
            acc[s] = acc.get(s, Fraction(0)) + w
        probs = {s: acc[s] for s in sorted(acc)}
    else:
        raw = kernels.pushforward(g.dims, _offsets(g), _flat_float(p), g.structure_index, len(g.structures))
        probs = {s: float(v) for s, v in enumerate(raw) if v > 0}
    return {g.structures[s]: v for s, v in probs.items()}


def structure_distribution(game, m=None, p=None) -> dict[CoalitionStructure, object]:
    """Probability of each final coalition structure when choices are drawn from ``p``.

    ``game`` is a :class:`Game` (composed with ``m``, default its own mechanism)
    or an already induced game.
    """
    if isinstance(game, Game):
        if m is None or m is game.mechanism:
            induced = game.induced
        else:
            from .game import induced_normal_form

            induced = induced_normal_form(game, m)
    else:
        induced = game
    return _distribution(induced, p)


# ---------------------------------------------------------------- results


def make_result(g: InducedGame, p, method: str, **flags) -> EquilibriumResult:
    exact = check_profile(g, p)
    vals = action_values(g, p)
    eu = _eu_from_values(p, vals, exact)
    reg = tuple((max(vals[i]) - eu[i]) if exact else max(float(max(vals[i]) - eu[i]), 0.0)
                for i in range(g.n_players))
    return EquilibriumResult(
        profile=[list(v) if exact else np.asarray(v, dtype=float) for v in p],
        payoffs=eu,
        regret=reg,
        structure_distribution=_distribution(g, p),
        method=method,
        support=support_of(p, 0 if exact else 1e-12),
        exact=exact,
        **flags,
    )


def solve_pure(g: InducedGame) -> list[tuple[int, ...]]:
    """Every pure profile (as choice indices) where no player gains by deviating."""
    span = float(np.ptp(g.payoff_float)) if g.payoff_float.size else 0.0
    mask = kernels.pure_mask(g.payoff_float, g.dims, 1e-9 * max(span, 1.0))
    shape = tuple(int(d) for d in g.dims)
    out = []
    for flat in np.flatnonzero(mask):
        idx = tuple(int(a) for a in np.unravel_index(flat, shape))
        if all(r == 0 for r in regrets(g, pure_profile(g, idx))):
            out.append(idx)
    return out


def _is_constant(g: InducedGame) -> bool:
    return all(len(set(g.payoff_exact[i])) == 1 for i in range(g.n_players))


def equilibrium_components(g: InducedGame, pure: Sequence[tuple[int, ...]]) -> list[tuple[tuple[int, ...], ...]]:
    """Product blocks of pure equilibria sharing one payoff vector.

    Inside such a block every mixture is an equilibrium: no opponent mixture
    over the block lets a deviation beat the common payoff.
    """
    groups: dict[tuple, set] = {}
    for idx in pure:
        groups.setdefault(g.utility(idx), set()).add(idx)
    blocks = []
    for members in groups.values():
        axes = tuple(tuple(sorted({m[i] for m in members})) for i in range(g.n_players))
        if math.prod(len(a) for a in axes) > 1 and all(c in members for c in product(*axes)):
            blocks.append(axes)
    return sorted(blocks)


def _rref_solve(rows: list[list[Fraction]], rhs: list[Fraction], nvars: int):
    """Exact solution of ``rows @ z = rhs`` with free variables set to zero; None if inconsistent."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    if any(row[-1] != 0 and all(v == 0 for v in row[:-1]) for row in m[r:]):
        return None
    z = [Fraction(0)] * nvars
    for k, c in enumerate(pivots):
        z[c] = m[k][-1]
    return z


def _indifferent_mix(M, rows_sup, cols_sup):
    """Mixture over ``cols_sup`` making every row in ``rows_sup`` earn the same value
    ``v`` under ``M``, with no other row earning more. Returns (mixture, v) or None."""
    k = len(cols_sup)
    eqs = [[M[r][c] for c in cols_sup] + [Fraction(-1)] for r in rows_sup]
    eqs.append([Fraction(1)] * k + [Fraction(0)])
    z = _rref_solve(eqs, [Fraction(0)] * len(rows_sup) + [Fraction(1)], k + 1)
    if z is None:
        return None
    y, v = z[:k], z[k]
    if any(w < 0 for w in y):
        return None
    for r in range(len(M)):
        if r not in rows_sup and sum(M[r][c] * w for c, w in zip(cols_sup, y)) > v:
            return None
    return y, v


def _subsets(n: int, max_size: int):
    for size in range(1, min(n, max_size) + 1):
        yield from combinations(range(n), size)


def _two_player_exact(g: InducedGame, max_support: int) -> list:
    A = g.matrix(1).tolist()
    B = g.matrix(2).tolist()
    Bt = [list(col) for col in zip(*B)]
    m, n = len(A), len(A[0])
    found = {}
    for I in _subsets(m, max_support):
        for J in _subsets(n, max_support):
            col = _indifferent_mix(A, I, J)
            if col is None:
                continue
            row = _indifferent_mix(Bt, J, I)
            if row is None:
                continue
            x = [Fraction(0)] * m
            y = [Fraction(0)] * n
            for a, w in zip(I, row[0]):
                x[a] = w
            for b, w in zip(J, col[0]):
                y[b] = w
            key = (tuple(x), tuple(y))
            found.setdefault(key, [x, y])
    return list(found.values())


def _numeric_support_search(g: InducedGame, supports, seeds: int = 4, eps: float = VERIFY_EPS):
    """Solve the indifference equations on fixed supports. Returns (profile or None, failure reason or None)."""
    off = _offsets(g)
    n = g.n_players
    U = g.payoff_float
    sizes = [len(s) for s in supports]
    cuts = np.cumsum([0] + sizes)

    def expand(z):
        x = np.zeros(off[-1])
        for i, sup in enumerate(supports):
            x[off[i] + np.asarray(sup)] = z[cuts[i]:cuts[i + 1]]
        return x

    def residual(z):
        vals = kernels.action_values(U, g.dims, off, expand(z))
        res = []
        for i, sup in enumerate(supports):
            v = vals[off[i] + np.asarray(sup)]
            res.extend(v[1:] - v[0])
            res.append(z[cuts[i]:cuts[i + 1]].sum() - 1.0)
        return np.asarray(res)

    rng = np.random.default_rng(hash(tuple(supports)) & 0xFFFFFFFF)
    starts = [np.concatenate([np.full(s, 1.0 / s) for s in sizes])]
    for _ in range(seeds - 1):
        starts.append(np.concatenate([rng.dirichlet(np.ones(s)) for s in sizes]))
    converged_any = False
    for z0 in starts:
        sol = optimize.root(residual, z0, method="hybr")
        if not sol.success or np.abs(residual(sol.x)).max() > 1e-10:
            continue
        converged_any = True
        z = sol.x
        if z.min() < -1e-9:
            continue
        x = expand(np.clip(z, 0.0, None))
        prof = [x[off[i]:off[i + 1]] / x[off[i]:off[i + 1]].sum() for i in range(n)]
        ok, _ = verify_equilibrium(g, prof, eps)
        if ok:
            return prof, None
    return None, (None if converged_any else "root finder did not converge")


def solve_support_enumeration(g: InducedGame, max_support: int | None = None, eps: float = VERIFY_EPS,
                              stop_after: int | None = None, force: bool = False) -> EquilibriumSet:
    """Equilibria by support enumeration.

    Two players: exact rational arithmetic, regret exactly zero. Three or more:
    the indifference equations on each support combination are solved
    numerically and every hit is regret-checked against ``eps``. Pure
    equilibria and blocks of tied pure equilibria are always included, the
    latter as one uniform representative flagged ``component``.
    """
    if _is_constant(g):
        prof = uniform_profile(g)
        return EquilibriumSet([make_result(g, prof, "degenerate", degenerate=True)])

    max_support = max_support or int(g.dims.max())
    n_systems = math.prod(sum(math.comb(int(d), s) for s in range(1, min(int(d), max_support) + 1))
                          for d in g.dims)
    if n_systems > MAX_SUPPORT_SYSTEMS and not force:
        raise ScaleExceeded(f"{n_systems} support combinations exceed the {MAX_SUPPORT_SYSTEMS} guardrail")

    pure = solve_pure(g)
    results = {}
    failures = []

    def add(res):
        key = tuple(tuple(np.round(np.asarray(v, dtype=float), 12)) for v in res.profile)
        results.setdefault(key, res)

    for idx in pure:
        add(make_result(g, pure_profile(g, idx), "pure"))
    for block in equilibrium_components(g, pure):
        add(make_result(g, uniform_profile(g, supports=block), "component", component=True))

    if g.n_players == 2:
        for prof in _two_player_exact(g, max_support):
            res = make_result(g, prof, "support-enumeration")
            if all(r == 0 for r in res.regret):
                add(res)
    elif g.n_players >= 3:
        per_player = [list(_subsets(int(d), max_support)) for d in g.dims]
        combos = sorted(product(*per_player), key=lambda c: (sum(map(len, c)), c))
        found_mixed = 0
        for supports in combos:
            if all(len(s) == 1 for s in supports):
                continue
            prof, why = _numeric_support_search(g, supports, eps=eps)
            if prof is not None:
                add(make_result(g, prof, "support-enumeration"))
                found_mixed += 1
                if stop_after and found_mixed >= stop_after:
                    break
            elif why:
                failures.append((supports, why))
        if failures:
            log.debug("%d support combinations did not converge", len(failures))
    else:
        # one player: pure maxima cover everything
        pass

    ordered = sorted(results.values(), key=lambda r: (r.support, r.method))
    return EquilibriumSet(ordered, failures)


# ---------------------------------------------------------------- replicator


def _refine(g: InducedGame, x: np.ndarray, supports, eps: float):
    """Bounded least-squares solve of the indifference equations on ``supports``, started at ``x``.

    Copes with tied choices, where the square system is singular.
    """
    off = _offsets(g)
    idx = np.concatenate([off[i] + np.asarray(s, dtype=np.int64) for i, s in enumerate(supports)])
    cuts = np.cumsum([0] + [len(s) for s in supports])
    U = g.payoff_float

    def expand(z):
        full = np.zeros(off[-1])
        full[idx] = z
        return full

    def residual(z):
        vals = kernels.action_values(U, g.dims, off, expand(z))[idx]
        res = []
        for i in range(g.n_players):
            v = vals[cuts[i]:cuts[i + 1]]
            res.extend(v[1:] - v[0])
            res.append(z[cuts[i]:cuts[i + 1]].sum() - 1.0)
        return np.asarray(res)

    z0 = np.clip(x[idx], 1e-9, 1.0)
    for i in range(g.n_players):
        z0[cuts[i]:cuts[i + 1]] /= z0[cuts[i]:cuts[i + 1]].sum()
    sol = optimize.least_squares(residual, z0, bounds=(0.0, 1.0), method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15)
    full = expand(sol.x)
    prof = [full[off[i]:off[i + 1]] / full[off[i]:off[i + 1]].sum() for i in range(g.n_players)]
    return prof if verify_equilibrium(g, prof, eps)[0] else None


def _polish(g: InducedGame, x: np.ndarray, eps: float, tol: float = 1e-3):
    off = _offsets(g)
    supports = tuple(tuple(int(a) for a in np.flatnonzero(x[off[i]:off[i + 1]] > tol))
                     for i in range(g.n_players))
    if any(not s for s in supports):
        return None
    if g.n_players == 2:
        A, B = g.matrix(1, exact=False), g.matrix(2, exact=False)
        I, J = supports
        prof = _float_indifferent_pair(A, B, I, J)
        if prof is not None and verify_equilibrium(g, prof, eps)[0]:
            return prof
    return _refine(g, x, supports, eps)


def _float_indifferent_pair(A, B, I, J):
    def solve(M, rows, cols):
        k = len(cols)
        sys = np.zeros((len(rows) + 1, k + 1))
        sys[:len(rows), :k] = M[np.ix_(rows, cols)]
        sys[:len(rows), k] = -1.0
        sys[-1, :k] = 1.0
        rhs = np.zeros(len(rows) + 1)
        rhs[-1] = 1.0
        z = np.linalg.lstsq(sys, rhs, rcond=None)[0]
        return z[:k]

    y = solve(A, I, J)
    x = solve(B.T, J, I)
    if y.min() < -1e-12 or x.min() < -1e-12:
        return None
    px = np.zeros(A.shape[0])
    py = np.zeros(A.shape[1])
    px[list(I)] = np.clip(x, 0, None)
    py[list(J)] = np.clip(y, 0, None)
    if px.sum() <= 0 or py.sum() <= 0:
        return None
    return [px / px.sum(), py / py.sum()]


def replicator_dynamics(g: InducedGame, init=None, steps: int = 100_000, step_size: float = 0.5,
                        eps: float = REPLICATOR_EPS, polish: bool = True,
                        check_every: int = 1000) -> EquilibriumResult:
    """Discrete-time replicator dynamics from an interior profile.

    Payoffs are rescaled to [0, 1] so every multiplicative step stays positive.
    With ``polish`` on, every ``check_every`` steps the supports of the
    current iterate and of the running average are handed to an
    indifference solve; a polished point is accepted only when its regret
    is within ``eps``. The returned result is always regret-checked and
    tagged converged or not.
    """
    if init is None:
        init = uniform_profile(g, exact=False)
    check_profile(g, init)
    x = _flat_float(init)
    if x.min() <= 0:
        raise InvalidInit("replicator dynamics needs an interior starting profile")
    off = _offsets(g)
    U = g.payoff_float
    lo, hi = float(U.min()), float(U.max())
    scale = hi - lo
    if scale == 0:
        return make_result(g, init, "replicator", steps=0, degenerate=True)
    Un = (U - lo) / scale
    done = 0
    while done < steps:
        chunk = min(check_every, steps - done)
        x, total, used, regret = kernels.replicator(Un, g.dims, off, x, chunk, step_size, eps, scale)
        done += used
        prof = [x[off[i]:off[i + 1]].copy() for i in range(g.n_players)]
        if regret <= eps:
            return make_result(g, prof, "replicator", steps=done)
        if polish and used:
            for cand in (x, total / used):
                hit = _polish(g, cand, eps)
                if hit is not None:
                    return make_result(g, hit, "replicator+polish", steps=done)
    res = make_result(g, prof, "replicator", steps=done)
    res.converged = res.max_regret <= eps
    return res


# ---------------------------------------------------------------- logit path


def _logit_map(Un, g, off, x, lam):
    v = kernels.action_values(Un, g.dims, off, x)
    out = np.empty_like(x)
    for i in range(g.n_players):
        z = lam * v[off[i]:off[i + 1]]
        e = np.exp(z - z.max())
        out[off[i]:off[i + 1]] = e / e.sum()
    return out


def logit_path(g: InducedGame, eps: float = VERIFY_EPS, lam_max: float = 1e5, growth: float = 1.1,
               polish_every: int = 5) -> EquilibriumResult:
    """Follow logit quantal response equilibria from the centroid as precision grows.

    The fixed point ``x = softmax(lam * v(x))`` is tracked by warm-started root
    finding; its limit is a Nash equilibrium, which is recovered by polishing
    the current support. Payoffs are rescaled to [0, 1], so ``lam`` is in
    units of the payoff range.
    """
    off = _offsets(g)
    U = g.payoff_float
    lo, hi = float(U.min()), float(U.max())
    if hi == lo:
        prof = uniform_profile(g, exact=False)
        return make_result(g, prof, "logit", steps=0, degenerate=True)
    Un = (U - lo) / (hi - lo)
    x = _flat_float(uniform_profile(g, exact=False))
    lam, ratio, k = 0.1, growth, 0
    while lam < lam_max:
        target = lam * ratio
        sol = optimize.root(lambda z: z - _logit_map(Un, g, off, z, target), x, method="hybr")
        if not sol.success or np.abs(sol.x - _logit_map(Un, g, off, sol.x, target)).max() > 1e-8:
            ratio = math.sqrt(ratio)
            if ratio < 1.0001:
                log.debug("logit path stalled at lambda %.4g", lam)
                break
            continue
        x = np.clip(sol.x, 0.0, None)
        lam, ratio, k = target, growth, k + 1
        if lam >= 5 and k % polish_every == 0:
            hit = _polish(g, x, eps)
            if hit is not None:
                return make_result(g, hit, "logit+polish", steps=k)
    prof = [x[off[i]:off[i + 1]] / x[off[i]:off[i + 1]].sum() for i in range(g.n_players)]
    res = make_result(g, prof, "logit", steps=k)
    res.converged = res.max_regret <= eps
    return res


# ---------------------------------------------------------------- suite


def solve(g: InducedGame, method: str = "auto", eps: float | None = None, **kwargs) -> EquilibriumSet:
    """Run one solver, or for ``auto`` the support search with a replicator fallback.

    Raises NonConvergence when nothing verified comes back.
    """
    if method == "pure":
        out = EquilibriumSet([make_result(g, pure_profile(g, idx), "pure") for idx in solve_pure(g)])
        return out
    if method == "replicator":
        res = replicator_dynamics(g, eps=eps or REPLICATOR_EPS, **kwargs)
        if not res.converged:
            raise NonConvergence(f"replicator dynamics stopped at regret {res.max_regret:.3g} after {res.steps} steps")
        return EquilibriumSet([res])
    if method not in ("support", "auto"):
        raise ValueError(f"unknown method {method!r}")
    eps = eps or VERIFY_EPS
    if method == "auto" and g.n_players >= 3:
        # pure profiles and tied blocks first; mixed supports only if those are absent
        out = solve_support_enumeration(g, max_support=1, eps=eps)
        if not out:
            res = logit_path(g, eps=eps)
            if res.converged:
                return EquilibriumSet([res])
            kwargs.setdefault("max_support", 2)
            kwargs.setdefault("stop_after", 1)
            kwargs.setdefault("force", True)
            out = solve_support_enumeration(g, eps=eps, **kwargs)
    else:
        out = solve_support_enumeration(g, eps=eps, **kwargs)
    if not out and method == "auto":
        res = replicator_dynamics(g, eps=max(eps, REPLICATOR_EPS))
        if res.converged:
            out = EquilibriumSet([res], out.failures)
    if not out:
        raise NonConvergence("no verified equilibrium found", out.failures)
    return out
