"""Exception hierarchy shared by all fwcodec modules."""


class FwcodecError(ValueError):
    """Base class for all input-validation and precondition failures."""


class EmptyInput(FwcodecError):
    pass


class NonPositiveProbability(FwcodecError):
    pass


class ProbabilitySumMismatch(FwcodecError):
    pass


class DuplicateLabel(FwcodecError):
    pass


class LengthExceedsWidth(FwcodecError):
    pass


class KraftViolation(FwcodecError):
    pass


class IndexOutOfRange(FwcodecError):
    pass


class DimensionMismatch(FwcodecError):
    pass


class NoPrefixMatch(FwcodecError):
    """The word starts with no codeword of the first-field code."""


class UnknownResidual(FwcodecError):
    """The bits left after the first field match no second-field codeword."""


class WidthTooLarge(FwcodecError):
    pass


class WidthTooSmall(FwcodecError):
    pass


class ExplosionGuard(FwcodecError):
    """Raised when an exhaustive enumeration would exceed its configured cap."""
