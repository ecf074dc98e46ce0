"""Configuration spaces of the closed unit ball: sections of the forgetful map,
homotopies between sections, planar winding obstructions and a Brouwer-style
fixed-configuration search. Thin wrapper around the C++ extension."""

from ._ballconfig import *  # noqa: F401,F403
from ._ballconfig import __version__  # noqa: F401
