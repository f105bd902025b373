"""Budgets read from the environment.

``SCALEXT_MAX_ARITY`` bounds Hochschild cochain arity and the A-infinity
lifting depth; ``SCALEXT_ENUM_BUDGET`` bounds exhaustive subrepresentation
enumeration.
"""
import os

DEFAULT_MAX_ARITY = 6
DEFAULT_ENUM_BUDGET = 10 ** 6


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be positive")
    return value


def max_arity() -> int:
    return _env_int("SCALEXT_MAX_ARITY", DEFAULT_MAX_ARITY)


def enumeration_budget() -> int:
    return _env_int("SCALEXT_ENUM_BUDGET", DEFAULT_ENUM_BUDGET)
