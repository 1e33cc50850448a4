"""Random polyhedra from spinors: samplers, exact moments, Weingarten and
Itzykson-Zuber integrals, intertwiner counting and 2d polygons."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
