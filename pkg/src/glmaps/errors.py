"""Exception hierarchy shared by every module."""


class GLMapsError(Exception):
    pass


class UnsupportedField(GLMapsError):
    pass


class NotPrime(GLMapsError):
    pass


class FieldMismatch(GLMapsError):
    pass


class DimensionMismatch(GLMapsError):
    pass


class TooLarge(GLMapsError):
    """An enumeration guard was exceeded."""


class ZeroVector(GLMapsError):
    pass


class Singular(GLMapsError):
    pass


class EqualPoints(GLMapsError):
    pass


class NotInjective(GLMapsError):
    pass


class YInImage(GLMapsError):
    pass


class ParseError(GLMapsError):
    """Malformed JSON or spec string; ``context`` names the offending field."""

    def __init__(self, message: str, context: str | None = None):
        self.context = context
        super().__init__(f"{context}: {message}" if context else message)


class UnknownSuite(GLMapsError):
    pass
