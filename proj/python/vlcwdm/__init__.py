"""Indoor multi-user WDM visible-light links.

Channel model (Lambertian LOS + receiver noise budget), exact
(luminaire, wavelength) pair allocation, and a Monte-Carlo trend driver,
all backed by the C++ core in `_vlcwdm`.
"""

from ._vlcwdm import *  # noqa: F401,F403

__version__ = "0.1.0"
