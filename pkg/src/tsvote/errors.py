"""Exception types shared across the package."""


class TsvoteError(Exception):
    """Base class for all package errors."""


class SupportError(TsvoteError):
    """A series does not cover a required index range (no implicit padding)."""


class ParamError(TsvoteError):
    """A parameter violates its documented constraint."""


class ProvenanceError(TsvoteError):
    """Per-example generation provenance was required but is missing."""


class EmptyPrefixError(TsvoteError):
    """Rate normalization is undefined because the first bucket is empty."""


class ConfigError(TsvoteError):
    """A configuration document or data file failed validation."""
