"""Exception hierarchy. Every error raised on bad input derives from ScatterError."""


class ScatterError(ValueError):
    pass


class UnknownNode(ScatterError):
    pass


class SameKindEdge(ScatterError):
    pass


class DuplicateNode(ScatterError):
    pass


class ParseError(ScatterError):
    """Malformed input text. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedRow(ParseError):
    pass


class BadKind(ParseError):
    pass


class DuplicateId(ParseError):
    pass


class SelfLink(ParseError):
    pass


class TooFewEdges(ScatterError):
    pass


class ZeroVariance(ScatterError):
    pass


class MetricUndefined(ScatterError):
    def __init__(self, message, sample_index=None):
        self.sample_index = sample_index
        super().__init__(message)


class BadParameters(ScatterError):
    pass


class SameNode(ScatterError):
    pass


class EmptySet(ScatterError):
    pass


class IncompletePartition(ScatterError):
    pass


class NoEdges(ScatterError):
    pass


class BadFractionGrid(ScatterError):
    pass


class NoSiteMetadata(ScatterError):
    pass


class EmptyMatchingSet(ScatterError):
    pass
