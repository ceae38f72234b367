"""Exception types raised across the package."""


class ObliqueLSError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(ObliqueLSError, ValueError):
    pass


class IndexOutOfRange(ObliqueLSError, IndexError):
    pass


class ZeroColumn(ObliqueLSError, ValueError):
    """A column of the coefficient matrix has zero norm."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"column {index} has zero norm")


class SameIndex(ObliqueLSError, ValueError):
    pass


class MissingMetadata(ObliqueLSError, ValueError):
    """The stopping rule needs data (b_null or x_star) that was not given."""


class ZeroRhs(ObliqueLSError, ValueError):
    pass


class BadInterval(ObliqueLSError, ValueError):
    pass


class NullSpaceEmpty(ObliqueLSError, ValueError):
    pass


class UnknownFixture(ObliqueLSError, KeyError):
    pass


class ZeroMatrix(ObliqueLSError, ValueError):
    pass


class DegenerateRank(ObliqueLSError, ValueError):
    pass


class NotUnitized(ObliqueLSError, ValueError):
    pass


class ParallelColumns(ObliqueLSError, ValueError):
    pass


class ParseError(ObliqueLSError, ValueError):
    """Malformed input file; carries the offending line and column."""

    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = ""
        if path is not None:
            where = str(path)
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}" if where else message)
