#!/usr/bin/env python3
"""Compare the numba and numpy kernel backends on the same problems.

Both backends produce bitwise-identical factors (asserted below); this
script reports what that costs. Run directly:

    python benchmarks/compare_backends.py [--m 800] [--n 24]
"""

import argparse
import time

import numpy as np

from aqr import backend, factorize, laplacian_spd, make_rng
from aqr.testbed import build_spd

METHODS = ("mgs-naive-col", "mgs-ha-col", "mgs-hp-col", "cholqr")


def time_method(Z, op, method):
    factorize(Z, op, method)  # warm-up (and JIT on the numba path)
    t0 = time.perf_counter()
    result = factorize(Z, op, method)
    return time.perf_counter() - t0, result


def problem(kind, m, n, seed):
    rng = make_rng(seed)
    if kind == "dense":
        _, op = build_spd(m, 100.0, rng)
    else:
        side = max(2, int(round(np.sqrt(m))))
        op = laplacian_spd(side, side)
    Z = np.asfortranarray(rng.standard_normal((op.dim, n)))
    return Z, op


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=800)
    parser.add_argument("--n", type=int, default=24)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    if not backend.HAVE_NUMBA:
        parser.error("numba backend unavailable; nothing to compare")

    for kind in ("dense", "laplacian"):
        print(f"\n{kind}: m~{args.m}, n={args.n}")
        print(f"{'method':16s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}  identical")
        for method in METHODS:
            rows = {}
            factors = {}
            for name in ("numba", "numpy"):
                with backend.use_backend(name):
                    Z, op = problem(kind, args.m, args.n, args.seed)
                    rows[name], factors[name] = time_method(Z, op, method)
            same = np.array_equal(factors["numba"].Q, factors["numpy"].Q) and np.array_equal(
                factors["numba"].R, factors["numpy"].R
            )
            print(
                f"{method:16s} {rows['numba'] * 1e3:8.1f} ms {rows['numpy'] * 1e3:8.1f} ms "
                f"{rows['numpy'] / rows['numba']:7.1f}x  {same}"
            )


if __name__ == "__main__":
    main()
