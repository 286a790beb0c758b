"""Exception hierarchy shared by every module of the package."""


class HeightError(Exception):
    """Base class for all errors raised by weilheights."""


class InfiniteValuation(HeightError):
    """Valuation or log-absolute-value requested at zero."""


class InvalidPlace(HeightError):
    pass


class InvalidField(HeightError):
    pass


class NotSplit(HeightError):
    pass


class UnsupportedHensel(HeightError):
    pass


class MixedPlaceComparison(HeightError):
    """min/max/compare across values that live at different places."""


class ParseError(HeightError):
    pass


class NotHomogeneous(ParseError):
    def __init__(self, message, terms=()):
        super().__init__(message)
        self.terms = tuple(terms)


class InvalidPoint(HeightError):
    pass


class AmbientMismatch(HeightError):
    pass


class IndeterminacyPoint(HeightError):
    pass


class DegreeMismatch(HeightError):
    pass


class PresentationError(HeightError):
    pass


class PullbackNotDefined(PresentationError):
    pass


class OnSubscheme(HeightError):
    """Point lies on the presented subscheme; the requested value is +infinity."""

    def __init__(self, message, divisors=()):
        super().__init__(message)
        self.divisors = tuple(divisors)


class IdenticalPoints(HeightError):
    pass


class FieldMismatch(HeightError):
    pass


class UnknownSuite(HeightError):
    pass


class SamplingError(HeightError):
    pass


class WorkspaceError(HeightError):
    pass


class DuplicateName(WorkspaceError):
    pass
