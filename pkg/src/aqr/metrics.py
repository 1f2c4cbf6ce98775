"""Accuracy metrics: loss of weighted orthogonality, representation error,
weighted condition numbers, and the two bound surrogates built from them.

delta1 = u * kappa(A) * kappa(A^{1/2} Z) is the classical orthogonality-loss
scale for the modified Gram-Schmidt family; delta2 = u * (kappa(A) +
kappa(A^{1/2} Z)) is the sharper scale that the high-accuracy variant tracks
empirically. Both are evaluated, never asserted, here; the test suite and
the ``check`` command compare them against measured losses.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, RankDeficientError
from .gram_schmidt import UNIT_ROUNDOFF
from .linalg import jacobi_svd_values, matmul, matmul_tn, sym_eig, two_norm
from .operators import as_matrix


@dataclass
class AccuracyReport:
    """Everything the sweep records about one successful factorization."""

    loss_A_orth: float
    rep_error: float
    rep_error_rel: float
    kappa_A: float | None = None
    kappa_AhalfZ: float | None = None
    delta1: float | None = None
    delta2: float | None = None
    unit_roundoff: float = UNIT_ROUNDOFF


def loss_of_A_orthogonality(Q, op):
    """Spectral norm of Q.T A Q - I (symmetrized before the eigensolve)."""
    Q = as_matrix(Q)
    if Q.shape[0] != op.dim:
        raise DimensionError(f"Q has {Q.shape[0]} rows, operator dimension is {op.dim}")
    S = matmul_tn(Q, op.apply_block(Q))
    M = 0.5 * (S + S.T) - np.eye(S.shape[0])
    w, _ = sym_eig(M)
    return float(np.max(np.abs(w)))


def representation_error(Z, Q, R):
    """Returns (||Z - Q R||_2, same normalized by ||Z|| + ||Q|| ||R||)."""
    Z, Q, R = as_matrix(Z), as_matrix(Q), as_matrix(R)
    if Q.shape != Z.shape or R.shape != (Z.shape[1], Z.shape[1]):
        raise DimensionError("shapes of Z, Q, R do not conform")
    absolute = two_norm(Z - matmul(Q, R))
    scale = two_norm(Z) + two_norm(Q) * two_norm(R)
    return absolute, absolute / scale


def kappa_weighted(factors, Z):
    """Condition number of A^{1/2} Z using exact eigenfactors of A.

    With A = V diag(d) V.T, the matrix V diag(sqrt(d)) V.T Z has the same
    singular values as diag(sqrt(d)) (V.T Z); the latter is formed (one less
    product, and the row scaling keeps tiny singular values cleaner).
    """
    Z = as_matrix(Z)
    if factors.V.shape[0] != Z.shape[0]:
        raise DimensionError("eigenvector matrix does not match Z")
    B = np.asfortranarray(np.sqrt(factors.d)[:, None] * matmul_tn(factors.V, Z))
    sv = jacobi_svd_values(B)
    if sv[-1] == 0.0:
        raise RankDeficientError("A^{1/2} Z is numerically rank deficient")
    return float(sv[0] / sv[-1])


def delta_bounds(kappa_A, kappa_AhalfZ):
    """(delta1, delta2) = (u kA kAZ, u (kA + kAZ)) for u = 2^-53."""
    if kappa_A < 1.0 or kappa_AhalfZ < 1.0:
        raise ValueError("condition numbers are >= 1 by definition")
    return (
        UNIT_ROUNDOFF * kappa_A * kappa_AhalfZ,
        UNIT_ROUNDOFF * (kappa_A + kappa_AhalfZ),
    )


def evaluate(Z, op, result, kappa_A=None, kappa_AhalfZ=None):
    """Bundle the standard metrics for a finished factorization."""
    loss = loss_of_A_orthogonality(result.Q, op)
    rep, rep_rel = representation_error(Z, result.Q, result.R)
    d1 = d2 = None
    if kappa_A is not None and kappa_AhalfZ is not None:
        d1, d2 = delta_bounds(kappa_A, kappa_AhalfZ)
    return AccuracyReport(loss, rep, rep_rel, kappa_A, kappa_AhalfZ, d1, d2)
