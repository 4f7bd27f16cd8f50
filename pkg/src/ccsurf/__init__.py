"""Constant-curvature surfaces in S2xR and H2xR.

Closed-form rotational examples, their first and second fundamental forms,
the auxiliary Codazzi pair (A, II), the quadratic differential Q, height
reconstruction from a 1-jet, and a command-line front end.
"""

__version__ = "0.1.0"

from .ambient import H2R, S2R, AmbientSpace, space_from_name
from .revolution import Family, classify, immersion_from_profile, profile

__all__ = [
    "__version__",
    "AmbientSpace",
    "H2R",
    "S2R",
    "space_from_name",
    "Family",
    "profile",
    "immersion_from_profile",
    "classify",
]
