"""Exception types shared across the package."""


class GmrkError(Exception):
    """Base class for all package errors."""


class InvalidLabelError(GmrkError):
    """A spin/irrep label is malformed (negative j, wrong arity, mixed n)."""


class ConfigError(GmrkError):
    """A construction parameter is out of range or inconsistent."""


class UnsupportedSpaceError(GmrkError):
    """An operation was requested on a space mode it is not defined for."""


class MissingComponentError(GmrkError):
    """A tensor component family is incomplete for the requested re-indexing."""
