"""Float kernels over flattened payoff tensors.

Layout shared by every kernel:

* ``U`` has shape ``(n, P)``; column ``p`` is the payoff vector at the
  C-order flat index ``p`` of a profile over ``dims``.
* A mixed profile is one concatenated vector ``x``; player ``i`` owns
  ``x[offsets[i]:offsets[i + 1]]``.

Each kernel exists twice: an explicit loop compiled with numba, and a
vectorized numpy version. ``COALFORM_NO_NUMBA=1`` selects the numpy one.
"""
import numpy as np

from ._accel import HAVE_NUMBA, njit


def offsets_of(dims):
    off = np.zeros(len(dims) + 1, dtype=np.int64)
    off[1:] = np.cumsum(dims)
    return off


# ---------------------------------------------------------------- loop kernels


@njit(cache=True)
def action_values_loop(U, dims, offsets, x):
    n = dims.shape[0]
    P = U.shape[1]
    vals = np.zeros(offsets[n])
    digit = np.empty(n, dtype=np.int64)
    pre = np.empty(n + 1)
    suf = np.empty(n + 1)
    for p in range(P):
        rem = p
        for i in range(n - 1, -1, -1):
            digit[i] = rem % dims[i]
            rem //= dims[i]
        pre[0] = 1.0
        for i in range(n):
            pre[i + 1] = pre[i] * x[offsets[i] + digit[i]]
        suf[n] = 1.0
        for i in range(n - 1, -1, -1):
            suf[i] = suf[i + 1] * x[offsets[i] + digit[i]]
        for i in range(n):
            w = pre[i] * suf[i + 1]
            if w != 0.0:
                vals[offsets[i] + digit[i]] += w * U[i, p]
    return vals


@njit(cache=True)
def pure_mask_loop(U, dims, tol):
    n = dims.shape[0]
    P = U.shape[1]
    stride = np.ones(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        stride[i] = stride[i + 1] * dims[i + 1]
    mask = np.ones(P, dtype=np.bool_)
    for p in range(P):
        for i in range(n):
            d = (p // stride[i]) % dims[i]
            base = p - d * stride[i]
            best = U[i, base]
            for a in range(1, dims[i]):
                v = U[i, base + a * stride[i]]
                if v > best:
                    best = v
            if U[i, p] < best - tol:
                mask[p] = False
                break
    return mask


@njit(cache=True)
def pushforward_loop(dims, offsets, x, outcome, n_out):
    n = dims.shape[0]
    P = outcome.shape[0]
    out = np.zeros(n_out)
    for p in range(P):
        rem = p
        w = 1.0
        for i in range(n - 1, -1, -1):
            w *= x[offsets[i] + rem % dims[i]]
            rem //= dims[i]
        if w != 0.0:
            out[outcome[p]] += w
    return out


@njit(cache=True)
def replicator_loop(U, dims, offsets, x, steps, step_size, eps, scale):
    """Discrete replicator steps on payoffs ``U`` already mapped into [0, 1].

    Stops as soon as the regret of the current iterate, in original units
    (``scale`` times normalized), is at most ``eps``. Returns the last
    iterate, the sum of visited iterates, steps taken and that regret.
    """
    n = dims.shape[0]
    x = x.copy()
    total = np.zeros_like(x)
    regret = np.inf
    for t in range(steps):
        vals = action_values_loop(U, dims, offsets, x)
        regret = 0.0
        for i in range(n):
            avg = 0.0
            best = -np.inf
            for a in range(offsets[i], offsets[i + 1]):
                avg += x[a] * vals[a]
                if vals[a] > best:
                    best = vals[a]
            r = (best - avg) * scale
            if r > regret:
                regret = r
        if regret <= eps:
            return x, total, t, regret
        total += x
        for i in range(n):
            avg = 0.0
            for a in range(offsets[i], offsets[i + 1]):
                avg += x[a] * vals[a]
            s = 0.0
            for a in range(offsets[i], offsets[i + 1]):
                x[a] = x[a] * (1.0 + step_size * (vals[a] - avg))
                s += x[a]
            for a in range(offsets[i], offsets[i + 1]):
                x[a] /= s
    return x, total, steps, regret


# ---------------------------------------------------------------- numpy kernels


def action_values_np(U, dims, offsets, x):
    n = len(dims)
    shape = tuple(int(d) for d in dims)
    parts = [x[offsets[i]:offsets[i + 1]] for i in range(n)]
    out = []
    for i in range(n):
        T = U[i].reshape(shape)
        for j in range(n - 1, -1, -1):
            if j != i:
                T = np.tensordot(T, parts[j], axes=([j], [0]))
        out.append(np.asarray(T, dtype=float).reshape(-1))
    return np.concatenate(out)


def pure_mask_np(U, dims, tol):
    shape = tuple(int(d) for d in dims)
    mask = np.ones(shape, dtype=bool)
    for i in range(len(shape)):
        Ui = U[i].reshape(shape)
        mask &= Ui >= Ui.max(axis=i, keepdims=True) - tol
    return mask.reshape(-1)


def pushforward_np(dims, offsets, x, outcome, n_out):
    joint = np.ones(1)
    for i in range(len(dims)):
        joint = np.multiply.outer(joint, x[offsets[i]:offsets[i + 1]]).reshape(-1)
    return np.bincount(outcome, weights=joint, minlength=n_out)


def replicator_np(U, dims, offsets, x, steps, step_size, eps, scale):
    n = len(dims)
    x = x.copy()
    total = np.zeros_like(x)
    regret = np.inf
    for t in range(steps):
        vals = action_values_np(U, dims, offsets, x)
        avgs = [x[offsets[i]:offsets[i + 1]] @ vals[offsets[i]:offsets[i + 1]] for i in range(n)]
        regret = max((vals[offsets[i]:offsets[i + 1]].max() - avgs[i]) * scale for i in range(n))
        if regret <= eps:
            return x, total, t, regret
        total += x
        for i in range(n):
            sl = slice(offsets[i], offsets[i + 1])
            xi = x[sl] * (1.0 + step_size * (vals[sl] - avgs[i]))
            x[sl] = xi / xi.sum()
    return x, total, steps, regret


if HAVE_NUMBA:
    action_values = action_values_loop
    pure_mask = pure_mask_loop
    pushforward = pushforward_loop
    replicator = replicator_loop
    BACKEND = "numba"
else:
    action_values = action_values_np
    pure_mask = pure_mask_np
    pushforward = pushforward_np
    replicator = replicator_np
    BACKEND = "numpy"
