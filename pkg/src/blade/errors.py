"""Exception hierarchy for the blade engine.

Everything raised on purpose derives from BladeError so callers (CLI,
service) can map failures to exit codes / HTTP statuses in one place.
DataError covers malformed input; the rest are runtime conditions.
"""


class BladeError(Exception):
    """Base class for engine errors."""


class DataError(BladeError):
    """Malformed or inconsistent input data (CLI exit code 2)."""


# --- corpus ingestion ---------------------------------------------------


class MissingFile(DataError):
    def __init__(self, path):
        super().__init__(f"file not found: {path}")
        self.path = str(path)


class MalformedManifest(DataError):
    def __init__(self, field: str, reason: str):
        super().__init__(f"manifest field {field!r}: {reason}")
        self.field = field
        self.reason = reason


class DuplicateResourceId(DataError):
    def __init__(self, resource_id: str):
        super().__init__(f"duplicate resource id: {resource_id!r}")
        self.resource_id = resource_id


class MalformedCue(DataError):
    def __init__(self, line_no: int, reason: str = "malformed cue"):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


class NonMonotonicTimestamps(DataError):
    def __init__(self, line_no: int):
        super().__init__(f"line {line_no}: cue starts before the previous cue ends")
        self.line_no = line_no


class EmptyDocument(DataError):
    pass


class EmptyTranscript(DataError):
    pass


class ResourceIngestError(DataError):
    """Wraps a parser/segmenter error with the resource it came from."""

    def __init__(self, resource_id: str, cause: Exception):
        super().__init__(f"resource {resource_id!r}: {cause}")
        self.resource_id = resource_id
        self.cause = cause


# --- index / retrieval ---------------------------------------------------


class EmptyCorpus(DataError):
    pass


class DimensionMismatch(BladeError):
    pass


class UnknownUnitId(DataError):
    def __init__(self, unit_id: str):
        super().__init__(f"unknown unit id: {unit_id!r}")
        self.unit_id = unit_id


class NoTriples(DataError):
    pass


class IndexFormatError(DataError):
    pass


# --- dialogue -------------------------------------------------------------


class EmptyQuery(DataError):
    pass


class NoPassages(DataError):
    pass


class BackendUnavailable(BladeError):
    pass


class ValidationFailed(BladeError):
    def __init__(self, reasons):
        super().__init__("; ".join(reasons))
        self.reasons = list(reasons)


# --- service ---------------------------------------------------------------


class CorpusLoadError(DataError):
    pass


class UnknownSession(BladeError):
    def __init__(self, session_id: str):
        super().__init__(f"unknown session: {session_id!r}")
        self.session_id = session_id


# --- study -----------------------------------------------------------------


class UnknownGroup(DataError):
    pass


class UnknownQuiz(DataError):
    pass


class UnknownItem(DataError):
    pass


class NoAttempts(DataError):
    pass


class NoStudents(DataError):
    pass


class InvalidParameter(DataError):
    pass
