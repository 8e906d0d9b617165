"""Exception types shared across the engine, store, service, and CLI.

Every error carries a stable machine-readable ``code`` (used by the HTTP
envelope) and, where it makes sense, the path of the offending ``field``.
"""

from __future__ import annotations


class SoppiaError(Exception):
    """Base class for all errors raised by this package."""

    code = "internal"

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field

    @property
    def message(self) -> str:
        return str(self)


class ParseError(SoppiaError):
    """A document is malformed (bad JSON, wrong type, missing key)."""

    code = "parse"


class SchemaError(SoppiaError):
    """A criteria schema violates a structural invariant."""

    code = "schema"


class RangeError(SoppiaError):
    """A numeric value is outside its permitted range."""

    code = "range"


class UnknownCriterion(SoppiaError):
    """A criterion id does not exist in the governing schema."""

    code = "unknown_criterion"


class DuplicateAssessment(SoppiaError):
    """The same criterion is assessed more than once in a case."""

    code = "duplicate_assessment"


class IncompleteCaseError(SoppiaError):
    """An operation requiring a fully assessed case received a partial one."""

    code = "incomplete_case"


class ConsistencyError(SoppiaError):
    """Inputs that must derive from the same computation disagree."""

    code = "inconsistent_inputs"


class EmptyFactsError(SoppiaError):
    """A prompt was requested for a case with no facts."""

    code = "empty_facts"


class UnparseableError(SoppiaError):
    """A model response contains none of the expected section headings."""

    code = "unparseable_response"


class ValidationError(SoppiaError):
    """A payload failed validation on its way into the store."""

    code = "validation"


class NotFound(SoppiaError):
    """A requested record or revision does not exist."""

    code = "not_found"


class StorageError(SoppiaError):
    """The underlying filesystem failed during a store operation."""

    code = "storage"


class NetworkError(SoppiaError):
    """The completion endpoint could not be reached or answered abnormally."""

    code = "network"


class AuthError(SoppiaError):
    """Credentials for the completion endpoint are missing or rejected."""

    code = "auth"


class BindError(SoppiaError):
    """The service could not bind its port."""

    code = "bind"
