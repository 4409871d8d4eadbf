"""Exception hierarchy. Class names are part of the CLI contract: the CLI
prints ``type(exc).__name__`` on stderr for every domain error."""


class CantorCapError(Exception):
    """Base class for all domain errors raised by this package."""


class UsageError(CantorCapError, ValueError):
    """Malformed textual input (rational, clopen set, measure, code)."""


class LengthMismatch(CantorCapError, ValueError):
    pass


class BudgetExceeded(CantorCapError):
    pass


class EmptyClopen(CantorCapError, ValueError):
    pass


class InvalidMeasure(CantorCapError, ValueError):
    pass


class UndecodablePrefix(CantorCapError, ValueError):
    pass


class LevelsNotIncreasing(CantorCapError, ValueError):
    pass


class NotASubset(CantorCapError, ValueError):
    pass


class NotACapacity(CantorCapError, ValueError):
    pass


class NegativeMass(CantorCapError, ValueError):
    pass


class OracleIncomplete(CantorCapError, KeyError):
    pass


class OutOfRange(CantorCapError, ValueError):
    pass


class ExactBudgetExceeded(CantorCapError):
    pass


class WrongRegime(CantorCapError, ValueError):
    pass


class PrecisionExhausted(CantorCapError, ArithmeticError):
    pass


class LevelCapExceeded(CantorCapError):
    pass
