"""Exact arithmetic and search tools for relation numbers of parabolic pairs."""

from .numeric import INF, QuadNum, parse_lambda

__version__ = "0.1.0"

__all__ = ["INF", "QuadNum", "parse_lambda", "__version__"]
