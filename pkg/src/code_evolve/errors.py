"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes, so new error types should subclass one
of the three roots below rather than raising bare exceptions.
"""


class CodeEvolveError(Exception):
    """Base class for all package errors."""


class ConfigError(CodeEvolveError):
    """Bad or missing configuration: unresolvable paths, malformed config
    files, unregistered grammars or toolchains."""


class DataError(CodeEvolveError):
    """Invalid data: malformed records, duplicate ids, broken references,
    schema-version mismatches, degenerate metric inputs."""


class ProviderError(CodeEvolveError):
    """A remote provider (LLM or embedding endpoint) failed."""

    def __init__(self, message: str, *, retryable: bool = False, attempts: int = 1):
        super().__init__(message)
        self.retryable = retryable
        self.attempts = attempts
