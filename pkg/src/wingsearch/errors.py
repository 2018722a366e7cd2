"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: format/IO problems are 2,
semantic problems (unknown vertex or edge, bad argument) are 3, and internal
consistency violations are 4.
"""


class WingSearchError(Exception):
    pass


class GraphFormatError(WingSearchError):
    """Unparseable or unreadable edge-list input."""


class IndexFormatError(WingSearchError):
    """Unparseable, truncated, corrupt, or wrong-version index file."""


class UnknownVertexError(WingSearchError):
    pass


class UnknownEdgeError(WingSearchError):
    pass


class InvalidArgumentError(WingSearchError):
    """An operation was called with arguments that contradict its contract,
    e.g. computing an insertion delta for an edge that already exists."""


class InternalConsistencyError(WingSearchError):
    """The library detected a broken invariant in its own data structures."""
