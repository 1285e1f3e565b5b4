"""Finite-field hypergeometric functions, traces of Frobenius and traces of
Hecke operators on level-one cusp forms, with exact cross-checks."""

from .errors import FrobTraceError
from .ffield import FpContext, MultCharacter, make_context

__version__ = "0.1.0"
__all__ = ["FrobTraceError", "FpContext", "MultCharacter", "make_context", "__version__"]
