"""Thin QR factorization in an SPD-weighted inner product.

Given Z (m-by-n, m >= n) and an SPD operator A, every routine here returns
Q, R with Z = Q R and Q.T A Q = I. The variants differ in how they obtain
the auxiliary vectors p_j = A q_j that realize the weighted inner products:

* naive    - two operator applications per column (x_j = A z_j for the norm,
             p_j = A q_j for later projections); 2n MV total.
* ha       - one application per column; p_j is recovered as x_j / r_jj,
             which is exact in real arithmetic. n MV, applied sequentially.
* hp       - a single up-front block application X = A Z; x_j is then
             maintained through the same projection recurrence as z_j.
             n MV in one blockable call, at the price of an extra m n^2
             flops for the x updates.
* cholesky - R from the Cholesky factor of Z.T A Z, Q by triangular solve.

Classical (cgs) projections take their coefficients from the original
columns, modified (mgs) from the updated ones; the diagonal entry always
comes from the updated column's weighted norm. Column- and row-oriented
loops perform the same elementary operations in a different order, so for a
fixed variant the two orientations return bitwise-identical factors.
"""

from dataclasses import dataclass, field

import numpy as np

from .backend import kernels
from .exceptions import BreakdownError, DimensionError
from .linalg import cholesky_upper, matmul_tn, tri_solve_right
from .operators import CostReport, as_matrix

UNIT_ROUNDOFF = 2.0 ** -53

FAMILIES = ("mgs", "cgs", "cholqr")
VARIANTS = ("naive", "ha", "hp")
ORIENTATIONS = ("col", "row")


@dataclass(frozen=True)
class MethodId:
    """Identifier of a factorization method.

    Gram-Schmidt methods carry a family ("mgs"/"cgs"), variant and
    orientation; Cholesky QR has neither variant nor orientation.
    """

    family: str
    variant: str | None = None
    orientation: str | None = None

    def __post_init__(self):
        if self.family == "cholqr":
            if self.variant is not None or self.orientation is not None:
                raise ValueError("cholqr takes no variant or orientation")
        elif self.family in ("mgs", "cgs"):
            if self.variant not in VARIANTS or self.orientation not in ORIENTATIONS:
                raise ValueError(f"bad method spec {self}")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def parse(cls, text):
        """Parse ids like ``mgs-ha-col``, ``cgs-naive-row`` or ``cholqr``."""
        text = text.strip().lower()
        if text == "cholqr":
            return cls("cholqr")
        parts = text.split("-")
        if len(parts) != 3:
            raise ValueError(f"bad method id {text!r} (expected family-variant-orientation)")
        return cls(parts[0], parts[1], parts[2])

    def __str__(self):
        if self.family == "cholqr":
            return "cholqr"
        return f"{self.family}-{self.variant}-{self.orientation}"


CHOLQR = MethodId("cholqr")
ALL_GS_METHODS = tuple(
    MethodId(f, v, o) for f in ("mgs", "cgs") for v in VARIANTS for o in ORIENTATIONS
)
#: The method set swept in the accuracy studies: one orientation per
#: Gram-Schmidt variant plus Cholesky QR.
SWEEP_METHODS = tuple(
    [MethodId("mgs", v, "col") for v in VARIANTS]
    + [MethodId("cgs", v, "col") for v in VARIANTS]
    + [CHOLQR]
)


@dataclass
class QrResult:
    """Factors plus cost instrumentation.

    ``flagged_columns`` lists columns whose squared weighted norm was
    positive but below 100 u ||z|| ||x|| - the factorization proceeds, the
    flag just marks the result as numerically fragile there.
    """

    Q: np.ndarray
    R: np.ndarray
    cost: CostReport
    flagged_columns: list = field(default_factory=list)


def _model_flops(family, variant, m, n):
    if family == "cholqr":
        # Gram formation + triangular solve + Cholesky itself.
        return 2 * m * n * n + m * n * n + n * n * n // 3
    if variant == "hp":
        return 3 * m * n * n
    return 2 * m * n * n


def _check_inputs(Z, op):
    Z = as_matrix(Z)
    m, n = Z.shape
    if n < 1 or m < n:
        raise DimensionError(f"need m >= n >= 1, got {Z.shape}")
    if op.dim != m:
        raise DimensionError(f"operator dimension {op.dim} does not match Z with {m} rows")
    return Z, m, n


def _gs_factor(Z, op, family, variant, orientation):
    Z, m, n = _check_inputs(Z, op)
    K = kernels()
    mv_before = op.mv_count

    Zw = Z.copy(order="F")
    Z0 = Z.copy(order="F") if family == "cgs" else None
    Q = np.zeros((m, n), order="F")
    R = np.zeros((n, n), order="F")
    P = np.zeros((m, n), order="F")
    X = op.apply_block(Zw) if variant == "hp" else None
    flagged = []

    def project(i, j):
        src = Z0[:, j] if family == "cgs" else Zw[:, j]
        r = K.seq_dot(P[:, i], src)
        R[i, j] = r
        K.sub_scaled(Zw[:, j], r, Q[:, i])
        if variant == "hp":
            K.sub_scaled(X[:, j], r, P[:, i])

    def normalize(j):
        if variant == "hp":
            x = X[:, j]
        else:
            x = op.apply(Zw[:, j].copy())
        t = K.seq_dot(Zw[:, j], x)
        if not (t > 0.0) or not np.isfinite(t):
            raise BreakdownError(j, t)
        nz = np.sqrt(K.seq_dot(Zw[:, j], Zw[:, j]))
        nx = np.sqrt(K.seq_dot(x, x))
        if t < 100.0 * UNIT_ROUNDOFF * nz * nx:
            flagged.append(j)
        rjj = np.sqrt(t)
        R[j, j] = rjj
        K.div_scalar(Zw[:, j], rjj, Q[:, j])
        if variant == "naive":
            P[:, j] = op.apply(Q[:, j].copy())
        else:
            K.div_scalar(x, rjj, P[:, j])

    if orientation == "col":
        for j in range(n):
            for i in range(j):
                project(i, j)
            normalize(j)
    else:
        for i in range(n):
            normalize(i)
            for j in range(i + 1, n):
                project(i, j)

    cost = CostReport(op.mv_count - mv_before, _model_flops(family, variant, m, n))
    return QrResult(Q, R, cost, flagged)


def mgs_naive(Z, op, orientation="col"):
    """Modified Gram-Schmidt, two operator applications per column (2n MV)."""
    return _gs_factor(Z, op, "mgs", "naive", _check_orientation(orientation))


def mgs_ha(Z, op, orientation="col"):
    """Modified Gram-Schmidt, high-accuracy n-MV variant (sequential applies)."""
    return _gs_factor(Z, op, "mgs", "ha", _check_orientation(orientation))


def mgs_hp(Z, op, orientation="col"):
    """Modified Gram-Schmidt, high-performance n-MV variant (one block apply)."""
    return _gs_factor(Z, op, "mgs", "hp", _check_orientation(orientation))


def cgs(Z, op, variant="naive", orientation="col"):
    """Classical Gram-Schmidt in the weighted inner product.

    Projection coefficients come from the original columns; the diagonal
    entry from the updated column's weighted norm, as in the unmodified
    classical scheme. Variants mirror the MGS ones.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    return _gs_factor(Z, op, "cgs", variant, _check_orientation(orientation))


def cholesky_qr(Z, op):
    """Weighted Cholesky QR: R from chol(Z.T A Z), Q = Z R^{-1} (n MV)."""
    Z, m, n = _check_inputs(Z, op)
    mv_before = op.mv_count
    X = op.apply_block(Z)
    G = matmul_tn(Z, X)
    R = cholesky_upper(G)
    Q = tri_solve_right(Z, R)
    cost = CostReport(op.mv_count - mv_before, _model_flops("cholqr", None, m, n))
    return QrResult(Q, R, cost)


def _check_orientation(orientation):
    if orientation not in ORIENTATIONS:
        raise ValueError(f"unknown orientation {orientation!r}")
    return orientation


def factorize(Z, op, method):
    """Run the factorization named by ``method`` (a MethodId or id string)."""
    if not isinstance(method, MethodId):
        method = MethodId.parse(method)
    if method.family == "cholqr":
        return cholesky_qr(Z, op)
    return _gs_factor(Z, op, method.family, method.variant, method.orientation)
