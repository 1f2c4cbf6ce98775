"""Reproducible problem generators and the condition-number sweep engine.

The synthetic weight matrix is A = V diag(d) V.T with Haar-random V and a
log-evenly spaced eigenvalue ladder d_i = 10^(alpha (i-1)), alpha chosen so
d_m / d_1 hits the requested condition number. Test matrices Z couple the
ladder's top (case 1) or bottom (case 2) eigenvectors with a geometric
column scaling E and a random rotation W: Z = U E W.T. Because
A^{1/2} Z = U diag(sqrt(lambda)) E W.T, its singular values are known in
closed form, which lets the generator solve for the E exponent that hits a
requested kappa(A^{1/2} Z) exactly.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    BreakdownError,
    DimensionError,
    InfeasibleTargetError,
    NotPositiveDefiniteError,
)
from .gram_schmidt import MethodId, SWEEP_METHODS, factorize
from .linalg import haar_orthogonal, matmul
from .metrics import delta_bounds, kappa_weighted, loss_of_A_orthogonality, representation_error
from .operators import CsrSpdOperator, DenseSpdOperator


def make_rng(seed):
    """The library's deterministic generator (PCG64 behind numpy Generator)."""
    return np.random.default_rng(np.random.SeedSequence(seed))


@dataclass
class SpdFactors:
    """Exact eigenpairs of a synthetic weight matrix: A = V diag(d) V.T."""

    V: np.ndarray
    d: np.ndarray
    kappa_target: float

    @property
    def kappa(self):
        """Condition number read off the ladder (exact by construction)."""
        return float(self.d[-1] / self.d[0])


@dataclass
class CaseSpec:
    """One grid cell of the accuracy study."""

    case: int
    m: int
    n: int
    kappa_a_target: float
    kappa_az_target: float
    seed: int


@dataclass
class SweepRecord:
    """One (cell, method) outcome. Metric fields are None unless status is ok."""

    case: int
    kappa_a_target: float
    kappa_az_target: float
    kappa_a_measured: float | None
    kappa_az_measured: float | None
    method: str
    status: str
    loss_a_orth: float | None = None
    rep_error_rel: float | None = None
    delta1: float | None = None
    delta2: float | None = None


def build_spd(m, kappa, rng):
    """Synthesize (factors, operator) with eigenvalues 10^(alpha*(i-1))."""
    if m < 2:
        raise DimensionError("m must be >= 2")
    if kappa < 1.0:
        raise ValueError("kappa must be >= 1")
    V = haar_orthogonal(rng, m)
    alpha = np.log10(kappa) / (m - 1)
    d = 10.0 ** (alpha * np.arange(m))
    A = matmul(np.asfortranarray(V * d), np.asfortranarray(V.T))
    A = np.asfortranarray(0.5 * (A + A.T))
    return SpdFactors(V, d, float(kappa)), DenseSpdOperator(A)


def _solve_beta(lam, target, n):
    # Achievable targets are sqrt(lam_n/lam_1) * 10^(beta (n-1)) with beta >= 0.
    floor = float(np.sqrt(lam[-1] / lam[0]))
    if n == 1:
        if not np.isclose(target, 1.0, rtol=1e-9):
            raise InfeasibleTargetError(f"single column forces kappa = 1, target was {target:g}")
        return 0.0
    beta = (np.log10(target) - np.log10(floor)) / (n - 1)
    if beta < -1e-12:
        raise InfeasibleTargetError(
            f"target {target:g} is below the eigenvalue-induced floor {floor:g}"
        )
    return max(beta, 0.0)


def build_Z(spec, factors, rng):
    """Construct Z = U E W.T for a grid cell; raises InfeasibleTargetError
    when no nonnegative E exponent reaches the requested kappa(A^{1/2} Z)."""
    m, n = spec.m, spec.n
    if n > m:
        raise DimensionError("n must not exceed m")
    if factors.V.shape[0] != m:
        raise DimensionError("factors do not match the requested m")
    if spec.case == 1:
        U = factors.V[:, m - n:]
        lam = factors.d[m - n:]
    elif spec.case == 2:
        U = factors.V[:, :n]
        lam = factors.d[:n]
    else:
        raise ValueError(f"case must be 1 or 2, got {spec.case}")
    beta = _solve_beta(lam, spec.kappa_az_target, n)
    e = 10.0 ** (beta * np.arange(n))
    W = haar_orthogonal(rng, n)
    return matmul(np.asfortranarray(U * e), np.asfortranarray(W.T))


def laplacian_spd(nx, ny):
    """5-point Laplacian on an nx-by-ny grid with Dirichlet boundary, as CSR."""
    if nx < 2 or ny < 2:
        raise DimensionError("grid must be at least 2x2")
    m = nx * ny
    indptr = np.zeros(m + 1, dtype=np.int64)
    indices = []
    data = []
    for iy in range(ny):
        for ix in range(nx):
            row = iy * nx + ix
            cols = []
            if iy > 0:
                cols.append((row - nx, -1.0))
            if ix > 0:
                cols.append((row - 1, -1.0))
            cols.append((row, 4.0))
            if ix < nx - 1:
                cols.append((row + 1, -1.0))
            if iy < ny - 1:
                cols.append((row + nx, -1.0))
            for c, v in cols:
                indices.append(c)
                data.append(v)
            indptr[row + 1] = indptr[row] + len(cols)
    return CsrSpdOperator(indptr, np.array(indices, dtype=np.int64), np.array(data))


def _canonical_methods(methods):
    if methods is None:
        return list(SWEEP_METHODS)
    out = []
    for mth in methods:
        out.append(mth if isinstance(mth, MethodId) else MethodId.parse(mth))
    return out


def run_sweep(case, m, n, exponents, seed, methods=None):
    """Run the condition-number grid study for one case.

    ``exponents`` are the log10 kappa targets, used for both axes, and must
    ascend. Every (kappa_A, kappa_AZ) cell regenerates V and W from a
    subseed derived from (seed, case, cell indices), builds A and Z, runs
    every requested method and appends one record per method: failures and
    infeasible cells are recorded, never raised. Record order follows the
    grid (kappa_A outer, kappa_AZ inner) then the method list.
    """
    exponents = [float(e) for e in exponents]
    if any(b <= a for a, b in zip(exponents, exponents[1:])):
        raise ValueError("grid exponents must be strictly ascending")
    methods = _canonical_methods(methods)
    records = []
    for ia, ea in enumerate(exponents):
        for iz, ez in enumerate(exponents):
            kappa_a_t = 10.0 ** ea
            kappa_az_t = 10.0 ** ez
            rng = np.random.default_rng(np.random.SeedSequence((seed, case, ia, iz)))
            factors, op = build_spd(m, kappa_a_t, rng)
            spec = CaseSpec(case, m, n, kappa_a_t, kappa_az_t, seed)
            try:
                Z = build_Z(spec, factors, rng)
            except InfeasibleTargetError:
                for mth in methods:
                    records.append(
                        SweepRecord(case, kappa_a_t, kappa_az_t, None, None, str(mth), "infeasible")
                    )
                continue
            kappa_a = factors.kappa
            kappa_az = kappa_weighted(factors, Z)
            d1, d2 = delta_bounds(kappa_a, kappa_az)
            for mth in methods:
                base = SweepRecord(
                    case, kappa_a_t, kappa_az_t, kappa_a, kappa_az, str(mth), "ok",
                    delta1=d1, delta2=d2,
                )
                try:
                    result = factorize(Z, op, mth)
                except BreakdownError:
                    base.status = "breakdown"
                except NotPositiveDefiniteError:
                    base.status = "notposdef"
                else:
                    base.loss_a_orth = loss_of_A_orthogonality(result.Q, op)
                    base.rep_error_rel = representation_error(Z, result.Q, result.R)[1]
                records.append(base)
    return records
