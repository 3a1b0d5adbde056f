"""Hecke eigenvalues of Delta, Dirichlet characters, twisted L-values and moment sums."""

from ._hecke import *  # noqa: F401,F403
from ._hecke import __doc__  # noqa: F401

__version__ = "0.1.0"
