"""Backend selector for the numeric hot kernels.

The compiled extension is preferred; the numpy/scipy fallback produces
bit-identical results (same arithmetic, same evaluation order), so the
backends are interchangeable.  ``BACKEND`` records which one is active.
"""

try:
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built; pure-Python lane
    from . import _kernels_py as _impl

    BACKEND = "python"

from . import _kernels_py as python_impl

permanent_kernel = _impl.permanent_kernel
pulse_chain = _impl.pulse_chain

cython_impl = _impl if BACKEND == "cython" else None
