"""Wall-clock benchmark of the factorization variants.

Dense problems use a synthetic SPD matrix of moderate conditioning; sparse
problems use the 5-point grid Laplacian. Each (n, method) pair runs once
after one warm-up run (the warm-up also absorbs JIT compilation on the
numba backend). Timings use ``time.perf_counter``; treat single-shot
numbers accordingly.
"""

import time
from dataclasses import dataclass

import numpy as np

from .gram_schmidt import MethodId, factorize
from .testbed import build_spd, laplacian_spd, make_rng

#: Methods benchmarked by default: the naive / n-MV Gram-Schmidt trio plus
#: Cholesky QR.
BENCH_METHODS = (
    MethodId("mgs", "naive", "col"),
    MethodId("mgs", "ha", "col"),
    MethodId("mgs", "hp", "col"),
    MethodId("cholqr"),
)

BENCH_DENSE_KAPPA = 100.0


@dataclass
class BenchRecord:
    kind: str
    m: int
    n: int
    method: str
    seconds: float
    mv_count: int


def _make_problem(kind, m, seed):
    rng = make_rng(seed)
    if kind == "dense":
        _, op = build_spd(m, BENCH_DENSE_KAPPA, rng)
    elif kind == "laplacian":
        side = max(2, int(round(np.sqrt(m))))
        op = laplacian_spd(side, side)
    else:
        raise ValueError(f"unknown problem kind {kind!r}")
    return op, rng


def run_bench(kind, m, n_list, seed, methods=None, timer=time.perf_counter):
    """Time each method at each n; returns a list of BenchRecord."""
    methods = list(BENCH_METHODS) if methods is None else [
        mth if isinstance(mth, MethodId) else MethodId.parse(mth) for mth in methods
    ]
    op, rng = _make_problem(kind, m, seed)
    records = []
    for n in n_list:
        Z = np.asfortranarray(rng.standard_normal((op.dim, int(n))))
        for mth in methods:
            factorize(Z, op, mth)  # warm-up
            mv_before = op.mv_count
            t0 = timer()
            result = factorize(Z, op, mth)
            elapsed = timer() - t0
            records.append(
                BenchRecord(kind, op.dim, int(n), str(mth), elapsed, op.mv_count - mv_before)
            )
            del result
    return records
