"""Exception types raised by the dyadkde package."""


class DyadKdeError(Exception):
    """Base class for all dyadkde errors."""


class DyadDataError(DyadKdeError):
    """Base class for edge-list ingestion and data-validation errors.

    Instances may carry a ``pair`` attribute naming the offending dyad.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class MissingDyad(DyadDataError):
    pass


class ConflictingDuplicate(DyadDataError):
    pass


class SelfLoop(DyadDataError):
    pass


class NonFiniteWeight(DyadDataError):
    pass


class NonPositiveBandwidth(DyadKdeError):
    pass


class EmptyGrid(DyadKdeError):
    pass


class UnsortedGrid(DyadKdeError):
    pass


class NodeOutOfRange(DyadKdeError):
    pass


class TooFewNodes(DyadKdeError):
    pass


class InvalidAttribute(DyadKdeError):
    pass


class ZeroBiasCoefficient(DyadKdeError):
    pass


class EmptyInput(DyadKdeError):
    pass
