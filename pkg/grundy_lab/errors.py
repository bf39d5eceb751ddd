"""Exception hierarchy shared by the core modules and the commands."""
from typing import Optional


class GrundyLabError(Exception):
    """Base class for every error raised by grundy-lab."""


class GraphError(GrundyLabError, ValueError):
    """Invalid graph construction input."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class GraphFormatError(GraphError):
    """A graph6 record or edge-list file could not be parsed.

    ``offset`` is a byte offset for graph6 records and a 1-based line number
    for edge-list files.
    """

    def __init__(self, message: str, offset: Optional[int] = None):
        super().__init__(message, index=offset)
        self.offset = offset


class InputError(GrundyLabError):
    """An input path could not be opened or read."""


class ParameterError(GrundyLabError, ValueError):
    """A generator, witness or solver parameter is out of range."""


class EnumerationLimitError(ParameterError):
    """A brute-force oracle was asked to enumerate past its guard."""


class GeneratorExhaustedError(GrundyLabError):
    """Rejection sampling ran out of attempts."""


class InternalConsistencyError(GrundyLabError, AssertionError):
    """A proved inequality failed on a computed witness; the implementation is wrong somewhere."""
