"""Error signals shared across the engine.

Every condition the library reports as an error is a subclass of
VulnTrackError so callers (CLI, HTTP service) can map the whole family
to exit codes / status codes in one place.
"""


class VulnTrackError(Exception):
    """Base class for all engine errors."""


class StoreError(VulnTrackError):
    """Store directory missing, unreadable, or incompatible format."""


class StoreLockedError(VulnTrackError):
    """A long-running operation refused because the store is held."""


class DocumentNotFoundError(VulnTrackError):
    """doc_id not present in the store."""


class DocumentNotIndexedError(VulnTrackError):
    """Operation requires the document to have been indexed."""


class InvalidDateRangeError(VulnTrackError):
    """from-date after to-date."""


class LoadFailureError(VulnTrackError):
    """A word list / correction map / vector stream could not be read."""


class UndefinedScoreError(VulnTrackError):
    """idf requested for a keyword occurring in no document."""


class NoEmbeddingError(VulnTrackError):
    """Keyword lacks an embedding vector (or has zero norm)."""


class TrainingDivergedError(VulnTrackError):
    """Non-finite loss during fine-tuning; table rolled back."""


class UnknownTopicError(VulnTrackError):
    """Topic name not present."""


class DuplicateTopicError(VulnTrackError):
    """Topic name already taken."""


class EmptyTopicError(VulnTrackError):
    """Operation requires a topic with at least one keyword."""


class InsufficientDataError(VulnTrackError):
    """Series too short for the requested spike window."""


class InvalidParameterError(VulnTrackError):
    """Parameter outside its documented range."""
