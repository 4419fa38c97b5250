"""Drawing games: agents that make marks on a raster canvas, optimized by
policy gradients, genetic search, MCTS and MAP-Elites against communication,
reconstruction and computational-aesthetic rewards."""

__version__ = "0.1.0"

from .canvas import Canvas, Disc, Segment, Bezier, new_canvas, draw  # noqa: E402,F401
from .kernels import BACKEND_NAME  # noqa: E402,F401

__all__ = ["Canvas", "Disc", "Segment", "Bezier", "new_canvas", "draw", "BACKEND_NAME", "__version__"]
