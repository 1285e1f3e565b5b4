"""Exception hierarchy shared by all modules."""


class FrobTraceError(ValueError):
    """Base class; the CLI maps every subclass to exit status 2."""


class NonPrime(FrobTraceError):
    pass


class TooLarge(FrobTraceError):
    pass


class BadResidue(FrobTraceError):
    pass


class BadArgument(FrobTraceError):
    pass


class BadParameter(FrobTraceError):
    pass


class Singular(FrobTraceError):
    pass


class BadDiscriminant(FrobTraceError):
    pass


class OutOfRange(FrobTraceError):
    pass


class BadWeight(FrobTraceError):
    pass


class MissingPrior(FrobTraceError):
    pass


class UnsupportedWeight(FrobTraceError):
    pass


class ContextMismatch(FrobTraceError):
    pass


class InternalError(AssertionError):
    """An invariant that should be impossible to violate was violated."""
