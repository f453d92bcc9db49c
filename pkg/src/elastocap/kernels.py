"""Backend selection for the vectorised potential kernel.

The compiled extension is used when it imports; otherwise the numpy
implementation.  Both are importable directly for benchmarking.
"""
from . import _kernels_py

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

kpi_derivatives_python = _kernels_py.kpi_derivatives
kpi_derivatives_cython = _ckernels.kpi_derivatives if _ckernels is not None else None

if kpi_derivatives_cython is not None:
    BACKEND = "cython"
    kpi_derivatives = kpi_derivatives_cython
else:
    BACKEND = "python"
    kpi_derivatives = kpi_derivatives_python

__all__ = ["BACKEND", "kpi_derivatives", "kpi_derivatives_python", "kpi_derivatives_cython"]
