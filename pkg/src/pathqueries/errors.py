"""Exception hierarchy shared by every structure in the package."""


class PathQueryError(ValueError):
    pass


class CycleOrForwardParent(PathQueryError):
    """A parent id is not smaller than its child, or breaks preorder numbering."""


class LabelOutOfRange(PathQueryError):
    pass


class InvalidNode(PathQueryError, IndexError):
    pass


class ChildIndexOutOfRange(PathQueryError, IndexError):
    pass


class WeightOutOfRankSpace(PathQueryError):
    pass


class WeightOutOfSmallUniverse(PathQueryError):
    pass


class NoSuchView(PathQueryError):
    """The node has no ancestor-or-self carrying the requested label."""


class DummyNode(PathQueryError):
    pass


class MonotonicityViolation(PathQueryError):
    pass


class VectorDimensionMismatch(PathQueryError):
    pass


class ParseError(PathQueryError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")
