"""Loop-level kernels shared by both execution backends.

Every reduction here accumulates strictly sequentially in ascending index
order. That ordering is a contract, not an implementation detail: it is what
makes repeated runs, the two backends, and the column-/row-oriented
factorization drivers agree bitwise. Do not reassociate, block, or
parallelize these loops.

The functions are written so that ``numba.njit`` can compile them unchanged
(see ``_kernels_numba``); ``_kernels_numpy`` replaces most of them with
vectorized forms that perform the identical sequence of IEEE operations.
"""

import numpy as np


def seq_dot(x, y):
    s = 0.0
    for k in range(x.shape[0]):
        s += x[k] * y[k]
    return s


def matvec(A, x, y):
    # y = A @ x, each y[i] accumulated over ascending j.
    m, n = A.shape
    for i in range(m):
        y[i] = 0.0
    for j in range(n):
        xj = x[j]
        for i in range(m):
            y[i] += A[i, j] * xj


def apply_block_dense(A, X, Y):
    # Column c of Y accumulates exactly like matvec(A, X[:, c]); the loop
    # order only improves reuse of A's columns.
    m, n = A.shape
    k = X.shape[1]
    for c in range(k):
        for i in range(m):
            Y[i, c] = 0.0
    for j in range(n):
        for c in range(k):
            xj = X[j, c]
            for i in range(m):
                Y[i, c] += A[i, j] * xj


def csr_matvec(indptr, indices, data, x, y):
    m = indptr.shape[0] - 1
    for i in range(m):
        s = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            s += data[k] * x[indices[k]]
        y[i] = s


def gemm_nn(A, B, C):
    # C = A @ B, entry (i, j) accumulated over ascending l.
    m, kk = A.shape
    n = B.shape[1]
    for j in range(n):
        for i in range(m):
            C[i, j] = 0.0
        for l in range(kk):
            blj = B[l, j]
            for i in range(m):
                C[i, j] += A[i, l] * blj


def gemm_tn(A, B, C):
    # C = A.T @ B, entry (i, j) accumulated over ascending rows.
    m = A.shape[0]
    p = A.shape[1]
    n = B.shape[1]
    for j in range(n):
        for i in range(p):
            s = 0.0
            for r in range(m):
                s += A[r, i] * B[r, j]
            C[i, j] = s


def sub_scaled(z, a, q):
    # z -= a * q
    for i in range(z.shape[0]):
        z[i] -= a * q[i]


def div_scalar(x, r, out):
    for i in range(x.shape[0]):
        out[i] = x[i] / r


def rot_cols(B, p, q, c, s):
    # [bp, bq] <- [c*bp - s*bq, s*bp + c*bq]
    for i in range(B.shape[0]):
        bp = B[i, p]
        bq = B[i, q]
        B[i, p] = c * bp - s * bq
        B[i, q] = s * bp + c * bq


def rot_rows(S, p, q, c, s):
    for j in range(S.shape[1]):
        sp = S[p, j]
        sq = S[q, j]
        S[p, j] = c * sp - s * sq
        S[q, j] = s * sp + c * sq


def fro_sumsq(A):
    # Frobenius norm squared, column-major traversal.
    s = 0.0
    for j in range(A.shape[1]):
        for i in range(A.shape[0]):
            s += A[i, j] * A[i, j]
    return s


def offdiag_abs_max(S):
    best = 0.0
    n = S.shape[0]
    for j in range(n):
        for i in range(n):
            if i != j:
                v = abs(S[i, j])
                if v > best:
                    best = v
    return best


def cholesky_upper_kernel(G, R):
    """Left-looking upper Cholesky; returns the failing pivot index, -1 on success."""
    n = G.shape[0]
    for k in range(n):
        s = 0.0
        for i in range(k):
            s += R[i, k] * R[i, k]
        t = G[k, k] - s
        if not (t > 0.0) or not np.isfinite(t):
            return k
        rkk = np.sqrt(t)
        R[k, k] = rkk
        for j in range(k + 1, n):
            s = 0.0
            for i in range(k):
                s += R[i, k] * R[i, j]
            R[k, j] = (G[k, j] - s) / rkk
    return -1


def tri_solve_right_kernel(Z, R, X):
    # Solve X @ R = Z by forward substitution over columns; the diagonal of R
    # is assumed nonzero and finite (checked by the caller).
    m, n = Z.shape
    for k in range(n):
        rkk = R[k, k]
        for r in range(m):
            s = 0.0
            for i in range(k):
                s += X[r, i] * R[i, k]
            X[r, k] = (Z[r, k] - s) / rkk
