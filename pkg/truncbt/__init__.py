"""
truncbt computes invariants of truncated Barsotti-Tate groups:
* exact arithmetic in truncated Witt rings and sigma-linear algebra
* Kraft normal forms, Newton polygons and Traverso's formulas
* orbits and stabilizers of the action that classifies level-m truncations
"""
import truncbt.log  # noqa

from . import api  # noqa
from .config import LOCAL_CONFIG
from .version import __version__

__all__ = ["api", "__version__", "LOCAL_CONFIG"]
