"""Exception types raised by the toolkit."""


class MescError(Exception):
    """Base class for all toolkit errors."""


class FormatError(MescError, ValueError):
    """A line-oriented input file could not be parsed."""

    def __init__(self, message, path=None, line_number=None):
        self.path = path
        self.line_number = line_number
        where = ""
        if path is not None:
            where = f"{path}"
        if line_number is not None:
            where = f"{where}:{line_number}" if where else f"line {line_number}"
        super().__init__(f"{where}: {message}" if where else message)


class EmptyCorpusError(MescError, ValueError):
    pass


class IndexFileError(MescError):
    """Index file is unreadable, corrupted, or of the wrong version."""


class ChecksumError(IndexFileError):
    pass


class VersionMismatchError(IndexFileError):
    pass


class NoCooccurrenceMassError(MescError, ValueError):
    pass


class EmptyDictionaryError(MescError, ValueError):
    pass
