"""Exception hierarchy shared by all gausscap modules."""


class CaptureError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(CaptureError, ValueError):
    """An argument violates a documented precondition (non-finite, wrong shape, ...)."""


class InvalidModelError(CaptureError, ValueError):
    """An actor model (skeleton, mesh, weights, mask) violates its invariants."""


class BehindCameraError(CaptureError, ValueError):
    """A point required to project lies at non-positive camera-space depth."""


class MissingFileError(CaptureError, FileNotFoundError):
    """A referenced input file does not exist."""


class UnsupportedFormatError(CaptureError, ValueError):
    """A file exists but is not in a supported format."""


class CorruptDataError(CaptureError, ValueError):
    """A file is in a supported format but its payload is malformed or truncated."""


class InvalidStartError(CaptureError, ValueError):
    """An optimizer was started from a state with non-finite energy."""
