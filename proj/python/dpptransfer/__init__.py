"""Transference of determinantal point processes onto partitions.

The heavy lifting lives in the C++ extension; this package re-exports the
kernel presets, the transfer operation, exact count laws, and the sampler.
"""

try:
    from . import _core
except ImportError:
    # development tree: the extension sits in a cmake build dir on
    # PYTHONPATH instead of inside the installed package
    import _core

__all__ = [
    "CountLaw",
    "SpectralKernel",
    "ToleranceError",
    "TransferredKernel",
    "ValidationError",
    "__version__",
    "block_law",
    "chi_square",
    "constant_rank1",
    "diag_kernel",
    "discretized_sine",
    "fourier_projection",
    "joint_law",
    "joint_law_matrix",
    "legendre_kernel",
    "matrix_kernel",
    "random_contraction",
    "sample",
    "sample_counts",
    "transfer",
    "tv_distance",
    "verify_transference",
]

for _name in __all__:
    globals()[_name] = getattr(_core, _name)
del _name
