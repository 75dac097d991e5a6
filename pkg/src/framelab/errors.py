"""Exception hierarchy shared by all framelab modules."""


class FrameLabError(Exception):
    """Base class for every error raised by framelab."""


class InvalidInput(FrameLabError, ValueError):
    """Caller supplied parameters that violate a documented precondition."""


class NotSquare(InvalidInput):
    pass


class NotHermitian(InvalidInput):
    pass


class NonFinite(InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


class InvalidSize(InvalidInput):
    pass


class InvalidSpec(InvalidInput):
    pass


class InvalidPattern(InvalidInput):
    pass


class IndexOutOfRange(InvalidInput):
    pass


class InvalidSubset(InvalidInput):
    pass


class InvalidModel(InvalidInput):
    pass


class NotApplicable(InvalidInput):
    """The requested check has no meaning for these parameters."""


class TooLarge(FrameLabError):
    """Combinatorial guard tripped; the request would not finish at desk scale."""


class NoConvergence(FrameLabError, ArithmeticError):
    pass


class Singular(FrameLabError, ArithmeticError):
    pass


class ConsistencyError(FrameLabError, AssertionError):
    """A construction produced a result its own invariants rule out."""
