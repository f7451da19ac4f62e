"""Exception hierarchy shared by every module."""


class TropicalMLEError(Exception):
    """Base class for all errors raised by tropmle."""

    category = "error"


class InvalidData(TropicalMLEError, ValueError):
    """Input violates a documented invariant (bad model matrix, bad data vector)."""

    category = "invalid-data"


class ParseError(TropicalMLEError, ValueError):
    """A problem file could not be parsed."""

    category = "parse"


class SingularMatrix(InvalidData):
    pass


class RankDeficient(InvalidData):
    pass


class NotABasis(InvalidData):
    pass


class HasColoop(InvalidData):
    pass


class NoAllOnes(InvalidData):
    pass


class NotACurve(InvalidData):
    pass


class NotUniform(InvalidData):
    pass


class NotAFace(InvalidData):
    pass


class NoCertificate(TropicalMLEError):
    """No tried triangulation certified completeness of the critical points.

    ``diagnostic`` holds the per-triangulation record of failing simplices.
    """

    category = "incomplete"

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic
