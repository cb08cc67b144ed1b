"""Exception types shared across the workbench."""


class CsasError(Exception):
    """Base class for workbench errors. Carries a machine-parseable category."""

    category = "internal"


class GeometryError(CsasError, ValueError):
    """Scene/geometry combination is physically or numerically invalid."""

    category = "geometry"


class FormatError(CsasError, ValueError):
    """Container file is malformed, truncated, or of an unsupported version."""

    category = "format"


class ConfigError(CsasError, ValueError):
    """Run configuration is invalid or references missing files."""

    category = "config"
