"""Exception hierarchy for linkgrp."""


class LinkGroupError(Exception):
    """Base class for every error raised by the package."""


class ParseError(LinkGroupError, ValueError):
    pass


class NonPlanar(LinkGroupError):
    pass


class DanglingEdge(LinkGroupError):
    pass


class Disconnected(LinkGroupError):
    pass


class ConventionMismatch(LinkGroupError):
    pass


class NotAPair(LinkGroupError):
    pass


class NotSmallCancellation(LinkGroupError):
    pass


class StaleOccurrence(LinkGroupError):
    pass


class BadParityShape(LinkGroupError):
    pass


class ProcessYFailed(LinkGroupError):
    pass


class NotGeodesic(LinkGroupError):
    pass


class ContainsX0(LinkGroupError):
    pass


class NotLoopLike(LinkGroupError):
    pass


class PreconditionsViolated(LinkGroupError):
    pass


class TilingConflict(LinkGroupError):
    """Two relator squares disagree on the label of a shared edge."""
