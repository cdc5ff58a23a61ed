"""Hot raster kernels with a compiled backend and a pure-Python fallback.

The Cython extension is used when it was built and ``ROADSIGHT_PURE_PYTHON``
is not set; ``BACKEND`` names the active implementation.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("ROADSIGHT_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

label_components = _active.label_components
trace_boundary = _active.trace_boundary
hysteresis = _active.hysteresis

__all__ = ["BACKEND", "label_components", "trace_boundary", "hysteresis",
           "python_backend", "compiled_backend"]
