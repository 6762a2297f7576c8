"""Exact commutative-algebra kernel and a decision procedure for
algorithmic generic log smoothness of one-parameter families."""

from .familyfile import InputError, load_family, parse_family_text
from .ideals import Ideal
from .modules import FPModule, QuotRing, Subquotient, kaehler
from .parse import ParseError, parse_polynomial
from .pipeline import Family, Report, StageFailure, analyze
from .poly import Polynomial, PolyRing

__version__ = "0.1.0"

__all__ = [
    "Family", "FPModule", "Ideal", "InputError", "ParseError",
    "PolyRing", "Polynomial", "QuotRing", "Report", "StageFailure",
    "Subquotient", "analyze", "kaehler", "load_family",
    "parse_family_text", "parse_polynomial", "__version__",
]
