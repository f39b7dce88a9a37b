"""
Check registry - maps suite identifiers to check functions.

Checks register themselves with ``@register("<id>")``; the manifest order is
the order of CHECK_IDS, which also fixes each check's RNG stream.
"""

from typing import Callable, Dict, Iterable, List, Optional

from ..config import ConfigInvalid
from ..constants import CHECK_IDS

# id -> check function, filled by the decorators in checks.py
_REGISTRY: Dict[str, Callable] = {}


def register(check_id: str) -> Callable:
    """
    Register a check function under a suite identifier.

    Args:
        check_id: One of CHECK_IDS

    Returns:
        Decorator that records the function and returns it unchanged
    """
    if check_id not in CHECK_IDS:
        raise ValueError(f"'{check_id}' is not a suite identifier")

    def decorator(fn: Callable) -> Callable:
        _REGISTRY[check_id] = fn
        return fn

    return decorator


def get_check(check_id: str) -> Callable:
    """Look up a registered check, importing the built-in checks on first use."""
    _ensure_loaded()
    try:
        return _REGISTRY[check_id]
    except KeyError:
        raise ConfigInvalid(f"unknown check '{check_id}'")


def get_all_checks() -> List[str]:
    """Registered identifiers in manifest order."""
    _ensure_loaded()
    return [c for c in CHECK_IDS if c in _REGISTRY]


def manifest_index(check_id: str) -> int:
    return CHECK_IDS.index(check_id)


def resolve_selection(only: Optional[Iterable[str]]) -> List[str]:
    """
    Validate a selection of identifiers.

    Args:
        only: Identifiers to run, or None for every registered check

    Returns:
        Selected identifiers in manifest order

    Raises:
        ConfigInvalid: If an identifier is unknown
    """
    if only is None:
        return get_all_checks()
    selected = [c.strip() for c in only if c.strip()]
    unknown = sorted(set(selected) - set(CHECK_IDS))
    if unknown:
        raise ConfigInvalid(f"unknown check identifier(s): {', '.join(unknown)}")
    return [c for c in CHECK_IDS if c in selected]


def _ensure_loaded() -> None:
    if not _REGISTRY:
        from . import checks  # noqa: F401
