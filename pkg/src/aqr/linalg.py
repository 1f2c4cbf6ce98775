"""Dense numerical kernels: deterministic reductions, random orthogonal
matrices, Jacobi eigen/SVD solvers, Cholesky and triangular solves.

The Jacobi solvers are deliberate choices over LAPACK at these sizes: the
two-sided cyclic sweep gives a robust symmetric spectrum, and the one-sided
column sweep keeps small singular values accurate at condition numbers far
beyond where forming a Gram matrix would destroy them. Condition-number
measurements in the sweep harness rely on that relative accuracy.
"""

import numpy as np

from .backend import kernels
from .exceptions import (
    DimensionError,
    NoConvergenceError,
    NotPositiveDefiniteError,
    SingularMatrixError,
)
from .operators import as_matrix

MAX_JACOBI_SWEEPS = 100
JACOBI_TOL = 1e-15


def dot(x, y):
    """Inner product with strictly sequential left-to-right accumulation."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.shape[0] != y.shape[0]:
        raise DimensionError(f"dot of shapes {np.shape(x)} and {np.shape(y)}")
    return kernels().seq_dot(x, y)


def matmul(A, B):
    """C = A @ B with per-entry sequential accumulation."""
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"matmul of shapes {A.shape} and {B.shape}")
    C = np.empty((A.shape[0], B.shape[1]), order="F")
    kernels().gemm_nn(A, B, C)
    return C


def matmul_tn(A, B):
    """C = A.T @ B with per-entry sequential accumulation."""
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[0] != B.shape[0]:
        raise DimensionError(f"matmul_tn of shapes {A.shape} and {B.shape}")
    C = np.empty((A.shape[1], B.shape[1]), order="F")
    kernels().gemm_tn(A, B, C)
    return C


def frobenius_norm(A):
    return float(np.sqrt(kernels().fro_sumsq(as_matrix(A))))


def haar_orthogonal(rng, k):
    """Random orthogonal k-by-k matrix, Haar-distributed.

    QR of a standard Gaussian matrix with column signs fixed so the R diagonal
    is positive; redraws in the (measure-zero) event of an exactly singular
    sample.
    """
    if k < 1:
        raise DimensionError("k must be >= 1")
    while True:
        G = rng.standard_normal((k, k))
        Q, R = np.linalg.qr(G)
        d = np.diag(R)
        if np.all(d != 0.0):
            break
    Q = Q * np.where(d < 0.0, -1.0, 1.0)
    return np.asfortranarray(Q)


def _jacobi_rotation(app, aqq, apq):
    # Rotation angle that diagonalizes [[app, apq], [apq, aqq]].
    tau = (aqq - app) / (2.0 * apq)
    if tau == 0.0:
        t = 1.0
    else:
        t = (1.0 if tau > 0.0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    return c, t * c, t


def sym_eig(S):
    """Eigendecomposition of a symmetric matrix by cyclic two-sided Jacobi.

    Returns ``(w, V)`` with eigenvalues ascending and eigenvectors in the
    matching columns of V. The input is symmetrized as (S + S.T)/2 first,
    which is the identity for exactly symmetric input.
    """
    S = as_matrix(S)
    n = S.shape[0]
    if S.shape[1] != n:
        raise DimensionError(f"sym_eig needs a square matrix, got {S.shape}")
    K = kernels()
    A = np.asfortranarray(0.5 * (S + S.T))
    V = np.asfortranarray(np.eye(n))
    norm = frobenius_norm(S)
    if norm == 0.0 or n == 1:
        w = np.diag(A).copy()
        return w, V
    tol = JACOBI_TOL * norm
    converged = False
    for _ in range(MAX_JACOBI_SWEEPS):
        if K.offdiag_abs_max(A) <= tol:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= tol:
                    continue
                app = A[p, p]
                aqq = A[q, q]
                c, s, t = _jacobi_rotation(app, aqq, apq)
                K.rot_cols(A, p, q, c, s)
                K.rot_rows(A, p, q, c, s)
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                K.rot_cols(V, p, q, c, s)
    else:
        converged = K.offdiag_abs_max(A) <= tol
    if not converged:
        raise NoConvergenceError(
            f"Jacobi eigensolver did not reach tolerance in {MAX_JACOBI_SWEEPS} sweeps"
        )
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], np.asfortranarray(V[:, order])


def jacobi_svd_values(B):
    """Singular values (descending) by one-sided Jacobi on the columns of B.

    No Gram matrix is ever formed; the pair threshold is relative
    (|bp.bq| <= 1e-15 * ||bp|| ||bq||), which preserves the relative accuracy
    of small singular values up to extreme condition numbers. Zero columns
    are tolerated and reported as zero singular values.
    """
    B = as_matrix(B)
    m, n = B.shape
    if m < n:
        raise DimensionError(f"jacobi_svd_values needs m >= n, got {B.shape}")
    K = kernels()
    W = B.copy(order="F")
    if n > 1:
        converged = False
        for _ in range(MAX_JACOBI_SWEEPS):
            rotated = False
            for p in range(n - 1):
                for q in range(p + 1, n):
                    app = K.seq_dot(W[:, p], W[:, p])
                    aqq = K.seq_dot(W[:, q], W[:, q])
                    if app == 0.0 or aqq == 0.0:
                        continue
                    apq = K.seq_dot(W[:, p], W[:, q])
                    if abs(apq) <= JACOBI_TOL * np.sqrt(app * aqq):
                        continue
                    c, s, _ = _jacobi_rotation(app, aqq, apq)
                    K.rot_cols(W, p, q, c, s)
                    rotated = True
            if not rotated:
                converged = True
                break
        if not converged:
            raise NoConvergenceError(
                f"one-sided Jacobi did not converge in {MAX_JACOBI_SWEEPS} sweeps"
            )
    sv = np.empty(n)
    for j in range(n):
        sv[j] = np.sqrt(K.seq_dot(W[:, j], W[:, j]))
    return np.sort(sv, kind="stable")[::-1].copy()


def two_norm(M):
    """Spectral norm of an arbitrary matrix (largest singular value)."""
    M = as_matrix(M)
    if M.shape[0] < M.shape[1]:
        M = np.asfortranarray(M.T)
    sv = jacobi_svd_values(M)
    return float(sv[0])


def cholesky_upper(G):
    """Upper Cholesky factor of (G + G.T)/2; R.T @ R reproduces G.

    Raises NotPositiveDefiniteError on the first non-positive or non-finite
    pivot. That exception is the failure signal weighted Cholesky QR relies
    on for ill-conditioned inputs.
    """
    G = as_matrix(G)
    n = G.shape[0]
    if G.shape[1] != n:
        raise DimensionError(f"cholesky_upper needs a square matrix, got {G.shape}")
    Gs = np.asfortranarray(0.5 * (G + G.T))
    R = np.zeros((n, n), order="F")
    bad = kernels().cholesky_upper_kernel(Gs, R)
    if bad >= 0:
        raise NotPositiveDefiniteError(bad)
    return R


def tri_solve_right(Z, R):
    """Solve X @ R = Z for X by column-block back-substitution."""
    Z = as_matrix(Z)
    R = as_matrix(R)
    n = Z.shape[1]
    if R.shape != (n, n):
        raise DimensionError(f"R must be {n}x{n}, got {R.shape}")
    diag = np.diag(R)
    if np.any(diag == 0.0) or not np.all(np.isfinite(diag)):
        raise SingularMatrixError("triangular factor has a zero or non-finite diagonal entry")
    X = np.empty_like(Z)
    kernels().tri_solve_right_kernel(Z, R, X)
    return X
