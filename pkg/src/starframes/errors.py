"""Exception hierarchy.

Every error raised by the library derives from :class:`FrameError`, which is
itself a ``ValueError`` so callers that only care about bad input can catch
the builtin.
"""


class FrameError(ValueError):
    pass


class DimensionMismatch(FrameError):
    pass


class NotHermitian(FrameError):
    pass


class SingularElement(FrameError):
    pass


class ContextMismatch(FrameError):
    pass


class LengthMismatch(FrameError):
    pass


class IndexOutOfRange(FrameError, IndexError):
    pass


class EmptyFrame(FrameError):
    pass


class BadRank(FrameError):
    pass


class InvalidBounds(FrameError):
    pass


class NotAFrame(FrameError):
    pass


class NotARightInverse(FrameError):
    pass


class NotADualPair(FrameError):
    pass


class ParseError(FrameError):
    pass
