"""Exceptions raised by the pipeline.

Fatal conditions (bad headers, duplicate keys, inconsistent plant data,
broken configuration) raise; recoverable row-level problems are reported
as warnings by the functions that encounter them.
"""


class RcfError(Exception):
    """Base class for all pipeline errors."""


class SchemaError(RcfError):
    """Input file header is missing, empty, or does not match the canonical schema."""


class DuplicateKeyError(RcfError):
    """Non-additive dataset contains two rows for the same key."""


class ConsistencyError(RcfError):
    """Records contradict each other (e.g. one plant reported in two states)."""


class ConfigError(RcfError):
    """Configuration file is malformed or violates a config invariant."""


class InsufficientDataError(RcfError):
    """Fewer observations than the operation requires."""


class DegenerateDataError(RcfError):
    """Zero variance makes a correlation or regression undefined."""


class ChartError(RcfError):
    """Chart spec references an empty or inconsistent series."""
