"""aqr: thin QR factorization in an SPD-weighted inner product.

The weight matrix enters only through matrix-vector products, which are
counted; the Gram-Schmidt variants trade those products (2n for the naive
scheme, n for the ha/hp schemes and Cholesky QR) against accuracy and
blocking opportunities. A testbed reconstructs condition-number sweeps and
a benchmark compares wall-clock behavior; the ``aqr`` console command fronts
all of it.

Hot kernels run through numba when available; set ``AQR_BACKEND=numpy`` to
force the pure-numpy fallback (bitwise-identical results, slower).
"""

from .backend import HAVE_NUMBA, current_backend, set_backend, use_backend
from .bench import BenchRecord, run_bench
from .exceptions import (
    AqrError,
    BreakdownError,
    DimensionError,
    InfeasibleTargetError,
    NoConvergenceError,
    NotPositiveDefiniteError,
    ParseError,
    RankDeficientError,
    SingularMatrixError,
    UnsupportedFormatError,
)
from .gram_schmidt import (
    ALL_GS_METHODS,
    CHOLQR,
    SWEEP_METHODS,
    UNIT_ROUNDOFF,
    MethodId,
    QrResult,
    cgs,
    cholesky_qr,
    factorize,
    mgs_ha,
    mgs_hp,
    mgs_naive,
)
from .linalg import (
    cholesky_upper,
    dot,
    haar_orthogonal,
    jacobi_svd_values,
    sym_eig,
    tri_solve_right,
    two_norm,
)
from .metrics import (
    AccuracyReport,
    delta_bounds,
    evaluate,
    kappa_weighted,
    loss_of_A_orthogonality,
    representation_error,
)
from .mmio import read_matrix_market, write_matrix_market
from .operators import (
    CostReport,
    CsrSpdOperator,
    DenseSpdOperator,
    SpdOperator,
    as_matrix,
    as_operator,
    csr_from_coo,
    diagonal_operator,
    identity_operator,
)
from .testbed import (
    CaseSpec,
    SpdFactors,
    SweepRecord,
    build_spd,
    build_Z,
    laplacian_spd,
    make_rng,
    run_sweep,
)

__version__ = "0.1.0"
