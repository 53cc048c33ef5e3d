"""Numerical laboratory for Finsler spectral geometry."""

from finslerlab._core import *  # noqa: F401,F403
from finslerlab import _core

__version__ = _core.__version__
