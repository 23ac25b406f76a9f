"""Exception types shared across odakit."""

import os

DEFAULT_GUARD = 2**20


class OdakitError(Exception):
    pass


class InputError(OdakitError, ValueError):
    """Malformed or contract-violating input."""


class ResourceError(OdakitError, RuntimeError):
    """An enumeration would exceed its size guard."""


def guard_limit(default=DEFAULT_GUARD):
    """Enumeration guard, overridable through ``ODAKIT_GUARD``."""
    raw = os.environ.get("ODAKIT_GUARD")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"ODAKIT_GUARD must be an integer, got {raw!r}") from None
