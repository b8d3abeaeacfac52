"""Exact influence analysis of polynomial threshold functions on the hypercube."""

from ptflab.dyadic import Dyadic
from ptflab.core import BooleanFunction, TernaryFunction

__all__ = ["Dyadic", "BooleanFunction", "TernaryFunction"]
__version__ = "0.1.0"
