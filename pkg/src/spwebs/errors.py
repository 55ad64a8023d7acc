"""Shared exception types.

Everything derives from SpwebsError so callers can catch broadly; the CLI
maps SpwebsError to exit code 2 and IdentityViolated to exit code 1.
"""


class SpwebsError(Exception):
    pass


class DimensionMismatch(SpwebsError):
    pass


class NotSymplectic(SpwebsError):
    pass


class NotUnitary(SpwebsError):
    pass


class NotOnCircle(SpwebsError):
    pass


class NonCommuting(SpwebsError):
    pass


class NotSkew(SpwebsError):
    pass


class TooLarge(SpwebsError):
    pass


class BadK(SpwebsError):
    pass


class UnknownVariable(SpwebsError):
    pass


class NonGenericPosition(SpwebsError):
    pass


class DegenerateGeometry(SpwebsError):
    pass


class NonPlanarEmbedding(SpwebsError):
    pass


class NotSimpleLoop(SpwebsError):
    pass


class HorizontalStep(SpwebsError):
    pass


class WrongRank(SpwebsError):
    pass


class MalformedWeb(SpwebsError):
    pass


class NotBipartite(SpwebsError):
    pass


class InvalidCut(SpwebsError):
    pass


class OddMarking(SpwebsError):
    pass


class IdentityViolated(SpwebsError):
    pass


class OutOfRange(SpwebsError, Warning):
    """Doubles as a warning category: reported, caller decides."""


class BadFaceLength(SpwebsError, Warning):
    pass


class DivByZero(SpwebsError):
    pass


class IllConditioned(SpwebsError):
    pass
