"""Exception hierarchy shared by all walkdp modules."""


class WalkdpError(Exception):
    """Base class for every error raised by this package."""


# --- graph bundle loading -------------------------------------------------

class MissingFile(WalkdpError):
    pass


class CountMismatch(WalkdpError):
    pass


class NonNumericFeature(WalkdpError):
    pass


class LabelOutOfRange(WalkdpError):
    pass


class OverlappingMasks(WalkdpError):
    pass


class MalformedInput(WalkdpError):
    pass


class UnknownFormat(WalkdpError):
    pass


# --- samplers ---------------------------------------------------------------

class InvalidWalkLength(WalkdpError):
    pass


class InvalidRestartCount(WalkdpError):
    pass


class BatchTooLarge(WalkdpError):
    pass


class RateExceedsOne(WalkdpError):
    pass


# --- model ------------------------------------------------------------------

class ShapeMismatch(WalkdpError):
    pass


class MissingLabel(WalkdpError):
    pass


class EmptyMask(WalkdpError):
    pass


# --- privacy ----------------------------------------------------------------

class NonFiniteInput(WalkdpError):
    pass


class LengthMismatch(WalkdpError):
    pass


class ZeroSigma(WalkdpError):
    pass


class InvalidRate(WalkdpError):
    pass


class InvalidDelta(WalkdpError):
    pass


class InvalidOrder(WalkdpError):
    pass


# --- trainer / cli ----------------------------------------------------------

class ConfigInvalid(WalkdpError):
    pass


class GraphTooLargeForOracle(WalkdpError):
    pass
