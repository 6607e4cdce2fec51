"""
Exact local factors for pairs of supercuspidal representations, the
Iwahori-Hecke algebra of GL2, unramified principal-series local
coefficients, and a finite GL2 Bessel/Gauss-sum engine for level zero.
"""

from .exactalg import LaurentPoly, QuadExt, RatFunc
from .factors import PairTypeData, derive, verify_suite
from .hecke import HeckeElt, bernstein_theta
from .weyl import AffWeylElt

__all__ = [
    "AffWeylElt",
    "HeckeElt",
    "LaurentPoly",
    "PairTypeData",
    "QuadExt",
    "RatFunc",
    "bernstein_theta",
    "derive",
    "verify_suite",
]

__version__ = "0.1.0"
