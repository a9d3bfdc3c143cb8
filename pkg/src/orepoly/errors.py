"""Exception types raised by orepoly."""


class OrePolyError(Exception):
    """Base class for errors raised by this package."""


class ContextMismatch(OrePolyError, ValueError):
    """Operands belong to different skew contexts."""


class ParseError(OrePolyError, ValueError):
    """A field spec or polynomial string could not be parsed."""


class NotCentral(OrePolyError, ValueError):
    """A skew polynomial expected to be central is not."""


class NotEtale(OrePolyError, ValueError):
    """An operation defined only for polynomials coprime to X got a multiple of X."""


class NotIrreducible(OrePolyError, ValueError):
    """A centre polynomial expected to be irreducible is not."""


class RetryBudgetExceeded(OrePolyError, RuntimeError):
    """A randomized routine failed to succeed within its retry budget."""


class GuardExceeded(OrePolyError, RuntimeError):
    """A brute-force routine was asked to enumerate too large a search space."""
