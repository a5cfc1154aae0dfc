"""Exception hierarchy shared by the rrg modules."""


class RRGError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(RRGError):
    """A marking or cluster decomposition is internally inconsistent."""


class MoveUnderflowError(RRGError):
    """A backward move would push a part below 1."""


class MoveValidityError(RRGError):
    """A move would break the frequency bound f_l + f_{l+1} <= k - 1."""


class InvalidLedgerError(RRGError):
    pass


class PathGeometryError(RRGError):
    """A step sequence is not a legal path, or a move cannot be applied."""


class OrderMismatchError(RRGError):
    pass


class ParityConstraintError(RRGError):
    """(k, a) violate the parity prerequisite of the requested identity."""


class UnknownSeriesError(RRGError):
    pass
