"""Pure-numpy backend.

Each kernel reproduces the exact IEEE operation sequence of its loop twin in
``_kernels_impl`` (ufunc ``accumulate``/``cumsum`` is sequential by
definition, unlike ``np.sum``/``np.dot`` which may reassociate), so results
are bitwise identical to the numba backend. Kernels with no profitable
vectorized form fall back to the shared loop implementation.
"""

import numpy as np

from . import _kernels_impl as _impl


def seq_dot(x, y):
    if x.shape[0] == 0:
        return 0.0
    return float(np.cumsum(x * y)[-1])


def matvec(A, x, y):
    y[:] = np.cumsum(A * x, axis=1)[:, -1]


def apply_block_dense(A, X, Y):
    for c in range(X.shape[1]):
        Y[:, c] = np.cumsum(A * X[:, c], axis=1)[:, -1]


# Per-row segment sums have no vectorized form that preserves the in-row
# accumulation order; keep the plain loops.
csr_matvec = _impl.csr_matvec


def gemm_nn(A, B, C):
    for j in range(B.shape[1]):
        C[:, j] = np.cumsum(A * B[:, j], axis=1)[:, -1]


def gemm_tn(A, B, C):
    for j in range(B.shape[1]):
        C[:, j] = np.cumsum(A * B[:, j][:, None], axis=0)[-1, :]


def sub_scaled(z, a, q):
    z -= a * q


def div_scalar(x, r, out):
    np.divide(x, r, out=out)


def rot_cols(B, p, q, c, s):
    bp = B[:, p].copy()
    bq = B[:, q].copy()
    B[:, p] = c * bp - s * bq
    B[:, q] = s * bp + c * bq


def rot_rows(S, p, q, c, s):
    sp = S[p, :].copy()
    sq = S[q, :].copy()
    S[p, :] = c * sp - s * sq
    S[q, :] = s * sp + c * sq


def fro_sumsq(A):
    if A.size == 0:
        return 0.0
    return float(np.cumsum((A * A).ravel(order="F"))[-1])


def offdiag_abs_max(S):
    # abs/max involve no rounding, so any evaluation order gives the same value.
    if S.shape[0] < 2:
        return 0.0
    v = np.abs(S).copy()
    np.fill_diagonal(v, 0.0)
    return float(v.max())


def cholesky_upper_kernel(G, R):
    n = G.shape[0]
    for k in range(n):
        if k:
            s = float(np.cumsum(R[:k, k] * R[:k, k])[-1])
        else:
            s = 0.0
        t = G[k, k] - s
        if not (t > 0.0) or not np.isfinite(t):
            return k
        rkk = np.sqrt(t)
        R[k, k] = rkk
        if k + 1 < n:
            if k:
                sums = np.cumsum(R[:k, k, None] * R[:k, k + 1:], axis=0)[-1, :]
            else:
                sums = 0.0
            R[k, k + 1:] = (G[k, k + 1:] - sums) / rkk
    return -1


def tri_solve_right_kernel(Z, R, X):
    n = Z.shape[1]
    for k in range(n):
        if k:
            s = np.cumsum(X[:, :k] * R[:k, k], axis=1)[:, -1]
        else:
            s = 0.0
        X[:, k] = (Z[:, k] - s) / R[k, k]
