"""Hot inner loops: segment rasterization, connected components and
graph-based segment merging.

The compiled extension is used when it imports; otherwise the pure-Python
module is. Set ``DRAWGAMES_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("DRAWGAMES_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

backend = compiled_backend or python_backend
BACKEND_NAME = "compiled" if compiled_backend is not None else "python"

paint_segment = backend.paint_segment
paint_polyline = backend.paint_polyline
label_components = backend.label_components
felzenszwalb_merge = backend.felzenszwalb_merge


def available_backends():
    out = {"python": python_backend}
    if compiled_backend is not None:
        out["compiled"] = compiled_backend
    return out
