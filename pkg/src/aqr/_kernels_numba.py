"""Numba-compiled backend: the shared loop kernels, jitted as-is.

``fastmath`` stays off everywhere; allowing reassociation or FMA contraction
would break the sequential-accumulation contract and the bitwise agreement
with the numpy backend.
"""

from numba import njit

from . import _kernels_impl as _impl

_jit = njit(cache=True, fastmath=False)

seq_dot = _jit(_impl.seq_dot)
matvec = _jit(_impl.matvec)
apply_block_dense = _jit(_impl.apply_block_dense)
csr_matvec = _jit(_impl.csr_matvec)
gemm_nn = _jit(_impl.gemm_nn)
gemm_tn = _jit(_impl.gemm_tn)
sub_scaled = _jit(_impl.sub_scaled)
div_scalar = _jit(_impl.div_scalar)
rot_cols = _jit(_impl.rot_cols)
rot_rows = _jit(_impl.rot_rows)
fro_sumsq = _jit(_impl.fro_sumsq)
offdiag_abs_max = _jit(_impl.offdiag_abs_max)
cholesky_upper_kernel = _jit(_impl.cholesky_upper_kernel)
tri_solve_right_kernel = _jit(_impl.tri_solve_right_kernel)
