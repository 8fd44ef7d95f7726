import os
import sys

DEFAULT_BRUTE_FORCE_LIMIT = 10_000_000


class VerificationError(RuntimeError):
    pass


def debug(message):
    """Prints a debug message to stderr if GAINCOUNT_DEBUG is set."""
    if os.environ.get("GAINCOUNT_DEBUG"):
        print(f"DEBUG: {message}", file=sys.stderr)


def brute_force_limit(limit: int | None = None) -> int:
    """Resolves the enumeration cutoff from the argument or GAINCOUNT_BRUTE_FORCE_LIMIT."""
    if limit is not None:
        return limit
    raw = os.environ.get("GAINCOUNT_BRUTE_FORCE_LIMIT")
    if raw is None:
        return DEFAULT_BRUTE_FORCE_LIMIT
    try:
        value = int(raw)
    except ValueError as e:
        raise ValueError(f"GAINCOUNT_BRUTE_FORCE_LIMIT must be an integer, got {raw!r}") from e
    debug(f"Brute-force limit from environment: {value}")
    return value
