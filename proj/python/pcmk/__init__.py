"""Weighted Minkowski problems for C-pseudo-cones."""

from ._pcmk import *  # noqa: F401,F403
from ._pcmk import PcmkError, run

__version__ = "0.1.0"
