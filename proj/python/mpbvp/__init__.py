"""Half-eigenvalues, Fucik curves, solvability certificates and nodal
solutions for -u'' = lambda*(a*u+ - b*u-) with multi-point boundary
conditions u(+-1) = sum alpha_i * u(eta_i)."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
