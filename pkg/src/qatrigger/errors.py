"""Exception types shared across the package."""


class QaTriggerError(Exception):
    """Base class for errors raised by this package."""


class IngestionError(QaTriggerError):
    """A corpus, parse, score, or resource file could not be ingested.

    Messages include the offending file and line number where known.
    """


class ConfigError(QaTriggerError):
    """A run configuration is invalid or a required resource is missing."""
