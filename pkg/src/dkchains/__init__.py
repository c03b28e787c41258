"""Exact truncated simplicial abelian groups, Dold-Kan, and the
Alexander-Whitney / Eilenberg-MacLane shuffle structure checks."""

from .intmat import IntMatrix
from .kernels import HAVE_SPEEDUPS

__version__ = "0.1.0"

__all__ = ["IntMatrix", "HAVE_SPEEDUPS", "__version__"]
