"""Timings of the numba kernels against the numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Also times one end-to-end reduction certificate under each ARRALG_KERNELS
setting.  The numba kernels are compiled (or loaded from cache) before timing.
"""

import argparse
import os
import time

import numpy as np

from arralg import kernels

P = 1_000_003
Q = 33_554_393


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(rng):
    A = rng.integers(0, P, size=(300, 400), dtype=np.int64)
    B = rng.integers(0, Q, size=(200, 200), dtype=np.int64)
    monos = rng.integers(0, 8, size=(20000, 4), dtype=np.int64)
    gens = rng.integers(0, 5, size=(60, 4), dtype=np.int64)
    return [
        ("echelon 300x400", lambda: kernels._echelon_mod_p_nb(A.copy(), np.int64(P)),
         lambda: kernels.echelon_mod_p_np(A.copy(), P)),
        ("rref 300x400", lambda: kernels._rref_mod_p_nb(A.copy(), np.int64(P)),
         lambda: kernels.rref_mod_p_np(A.copy(), P)),
        ("matmul 200x200", lambda: kernels._matmul_mod_p_nb(B, B, np.int64(Q)),
         lambda: kernels.matmul_mod_p_np(B, B, Q)),
        ("divisible 20000x60", lambda: kernels._divisible_mask_nb(monos, gens),
         lambda: kernels.divisible_mask_np(monos, gens)),
    ]


def end_to_end(repeat):
    from arralg.arrangement import random_generic
    from arralg.fiberred import arrangement_reduction_number
    from arralg.polycore import QQ, PolynomialRing

    R = PolynomialRing(QQ, 4, ["x", "y", "z", "w"])
    out = {}
    for name in ("numba", "numpy"):
        os.environ["ARRALG_KERNELS"] = name
        out[name] = best(lambda: arrangement_reduction_number(random_generic(R, 5, seed=0), double_check=False),
                         repeat)
    os.environ.pop("ARRALG_KERNELS")
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.nb is None:
        raise SystemExit("numba is not importable; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for name, fast, slow in cases(rng):
        fast()
        tn, tp = best(fast, args.repeat), best(slow, args.repeat)
        print(f"{name:<22}{tn:>12.4f}{tp:>12.4f}{tp / tn:>10.1f}")
    e = end_to_end(max(1, args.repeat // 2))
    print(f"{'certificate (4,5)':<22}{e['numba']:>12.4f}{e['numpy']:>12.4f}{e['numpy'] / e['numba']:>10.1f}")


if __name__ == "__main__":
    main()
