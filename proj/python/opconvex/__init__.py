"""Unital completely positive maps on M_n(C): operational partitions of
unity, operational convex combinations, and extreme point certification."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
