"""Verification suite: registered checks, the runner, constant envelopes and report files."""

from .emit import EMIT_FORMATS, emit
from .envelopes import CONSTANT_NAMES, ConstantsTable, estimate_constants
from .registry import get_all_checks, get_check, register, resolve_selection
from .runner import CheckContext, CheckResult, SuiteConfig, SuiteReport, canonical_dumps, run_suite

__all__ = [
    "CONSTANT_NAMES",
    "EMIT_FORMATS",
    "CheckContext",
    "CheckResult",
    "ConstantsTable",
    "SuiteConfig",
    "SuiteReport",
    "canonical_dumps",
    "emit",
    "estimate_constants",
    "get_all_checks",
    "get_check",
    "register",
    "resolve_selection",
    "run_suite",
]
