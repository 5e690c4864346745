"""Time the numba loop kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row is a kernel on one game size; times are the best of ``--repeat``
runs after one warm-up call (which also triggers numba compilation).
"""
import argparse
import time

import numpy as np

from coalform import kernels


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def case(dims, seed=0):
    rng = np.random.default_rng(seed)
    dims = np.array(dims, dtype=np.int64)
    U = rng.uniform(0, 1, size=(len(dims), int(np.prod(dims))))
    off = kernels.offsets_of(dims)
    x = np.concatenate([rng.dirichlet(np.ones(int(d))) for d in dims])
    outcome = rng.integers(0, 8, size=int(np.prod(dims)))
    return U, dims, off, x, outcome


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        print("numba unavailable (or COALFORM_NO_NUMBA set): only the numpy kernels can run")
        return

    rows = []
    for dims in [(4, 4), (10, 10, 10), (8, 8, 8, 8)]:
        U, d, off, x, outcome = case(dims)
        pairs = {
            "action_values": (lambda: kernels.action_values_loop(U, d, off, x),
                              lambda: kernels.action_values_np(U, d, off, x)),
            "pure_mask": (lambda: kernels.pure_mask_loop(U, d, 1e-9),
                          lambda: kernels.pure_mask_np(U, d, 1e-9)),
            "pushforward": (lambda: kernels.pushforward_loop(d, off, x, outcome, 8),
                            lambda: kernels.pushforward_np(d, off, x, outcome, 8)),
            "replicator x200": (lambda: kernels.replicator_loop(U, d, off, x, 200, 0.5, 0.0, 1.0),
                                lambda: kernels.replicator_np(U, d, off, x, 200, 0.5, 0.0, 1.0)),
        }
        for name, (loop, vec) in pairs.items():
            a, b = best_of(loop, args.repeat), best_of(vec, args.repeat)
            rows.append((name, "x".join(map(str, dims)), a, b))

    print(f"{'kernel':<17}{'dims':<10}{'numba ms':>11}{'numpy ms':>11}{'speedup':>9}")
    for name, dims, a, b in rows:
        print(f"{name:<17}{dims:<10}{a * 1e3:>11.3f}{b * 1e3:>11.3f}{b / a:>9.1f}")


if __name__ == "__main__":
    main()
