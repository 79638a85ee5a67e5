"""Exception hierarchy for srplab."""


class SrpLabError(Exception):
    """Base class for every error raised by this package."""


# semigroups
class EmptyInput(SrpLabError, ValueError):
    pass


class GcdNotOne(SrpLabError, ValueError):
    pass


class ApexNotInSemigroup(SrpLabError, ValueError):
    pass


# graded cone
class LimitTooSmall(SrpLabError, ValueError):
    pass


# ideals
class ExponentNotInSemigroup(SrpLabError, ValueError):
    pass


class SemigroupMismatch(SrpLabError, ValueError):
    pass


class ZeroDivisorIdeal(SrpLabError, ValueError):
    pass


class NotMPrimary(SrpLabError, ValueError):
    pass


class ModelUnsupported(SrpLabError):
    pass


class CapExceeded(SrpLabError):
    """Iteration cap hit before stabilization; ``partial`` holds the result so far."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


# analyzer
class BoxTooLarge(SrpLabError):
    pass


class PropagationFailed(SrpLabError):
    pass


class NonMonotoneVerdicts(SrpLabError):
    pass


class ContradictionWithPaper(SrpLabError):
    """A FAILS verdict coexists with a certificate that forbids it."""


class PreconditionViolated(SrpLabError, ValueError):
    pass


# resolution lattice
class NotNegativeDefinite(SrpLabError, ValueError):
    pass


class Disconnected(SrpLabError, ValueError):
    pass


class NotAntiNef(SrpLabError, ValueError):
    pass


class NotRational(SrpLabError):
    pass


class NotMinimalResolution(SrpLabError):
    pass


class BoundTooLarge(SrpLabError):
    pass
