"""Exception taxonomy shared by the library and the command line."""


class HullError(Exception):
    code = "INVARIANT"


class ParseError(HullError):
    code = "PARSE"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class DomainError(HullError):
    code = "DOMAIN"


class DimensionError(DomainError):
    pass


class NotInHullError(HullError):
    code = "NOT_IN_HULL"


class NotHomError(HullError):
    code = "NOT_HOM"


class InvariantError(HullError):
    """A mathematically guaranteed check failed; always a bug."""

    code = "INVARIANT"
