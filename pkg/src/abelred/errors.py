"""Exception classes shared across the toolkit."""


class AbelredError(Exception):
    """Base class for every error raised by abelred."""


class DimensionError(AbelredError, ValueError):
    pass


class NoSolution(AbelredError):
    """The right-hand side is not in the column space."""


class DependentInput(AbelredError, ValueError):
    pass


class JacobiFailure(AbelredError):
    """Structure constants violate antisymmetry or the Jacobi identity.

    ``triple`` holds the offending basis indices (i, j, k); for an antisymmetry
    failure the last entry is None.
    """

    def __init__(self, triple, message=None):
        self.triple = triple
        super().__init__(message or f"Jacobi identity fails on basis triple {triple}")


class GradingFailure(AbelredError):
    pass


class NoGradingDeclared(AbelredError):
    pass


class NotAnIdeal(AbelredError):
    pass


class MaximalAbelianIdealNotSupported(AbelredError):
    pass


class NotAComplement(AbelredError):
    pass


class CenterNotInsideA(AbelredError):
    pass


class NotAbelianIdeal(AbelredError):
    pass


class RestrictionMismatch(AbelredError):
    pass


class NoShift(AbelredError):
    pass


class DegeneratePairing(AbelredError):
    pass


class PreconditionFailure(AbelredError):
    pass


class ConstructionFailure(AbelredError):
    pass


class CertificateError(AbelredError):
    """A certificate fails verification; ``index`` is the offending pair (or None)."""

    def __init__(self, index, reason):
        self.index = index
        self.reason = reason
        where = "certificate" if index is None else f"witness pair {index}"
        super().__init__(f"{where}: {reason}")


class ParseError(AbelredError):
    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class DimensionCapExceeded(AbelredError):
    pass


class HomomorphismFailure(AbelredError):
    pass
