"""
Suite runner - executes registered checks and assembles a SuiteReport.

The report is a pure function of (config, version): checks draw from
SeedSequence([seed, manifest_index]) streams and results are assembled in
manifest order, whatever the worker count. Runtimes are kept apart.
"""

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ... import __version__
from ..config import ConfigInvalid, ConfigManager
from ..constants import COVER_SAMPLES, DEFAULT_MC_SAMPLES, DEFAULT_SEED, EXIT_CHECK_FAILED, EXIT_OK, Verdict
from ...utils.logging import LogContext, get_logger, log_operation
from .registry import get_check, manifest_index, resolve_selection


# =============================================================================
# CONFIG
# =============================================================================

@dataclass
class SuiteConfig:
    seed: int = DEFAULT_SEED
    only: Optional[List[str]] = None
    grids: Dict[str, Any] = field(default_factory=dict)
    tolerances: Dict[str, Any] = field(default_factory=dict)
    monte_carlo: Dict[str, Any] = field(default_factory=dict)
    counterexample: Dict[str, Any] = field(default_factory=dict)
    workers: int = 1
    output_dir: str = "qcarleson-report"

    def __post_init__(self):
        self.checks = resolve_selection(self.only)
        if self.workers < 1:
            raise ConfigInvalid("workers must be at least 1")

    @classmethod
    def from_manager(
        cls,
        manager: Optional[ConfigManager] = None,
        only: Optional[List[str]] = None,
        seed: Optional[int] = None,
        workers: Optional[int] = None,
        output_dir: Optional[str] = None,
    ) -> "SuiteConfig":
        """
        Build a suite config from the config file plus command-line overrides.

        Raises:
            ConfigInvalid: On unknown check identifiers or bad values
        """
        manager = manager or ConfigManager()
        suite = manager.get_suite_config()
        mc = manager.get_monte_carlo_config()
        return cls(
            seed=int(seed if seed is not None else mc.get("seed", DEFAULT_SEED)),
            only=only,
            grids=manager.get_grid_config(),
            tolerances=manager.get_tolerances(),
            monte_carlo=mc,
            counterexample=dict(suite.get("counterexample", {})),
            workers=int(workers if workers is not None else suite.get("workers", 1)),
            output_dir=output_dir or suite.get("output_dir", "qcarleson-report"),
        )

    def to_json(self) -> dict:
        # workers and output_dir do not change results
        return {
            "seed": self.seed,
            "checks": list(self.checks),
            "grids": self.grids,
            "tolerances": self.tolerances,
            "monte_carlo": self.monte_carlo,
            "counterexample": self.counterexample,
        }


# =============================================================================
# RESULTS
# =============================================================================

@dataclass
class CheckResult:
    check_id: str
    measured: Dict[str, Any] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)
    findings: List[Dict[str, Any]] = field(default_factory=list)
    error: Optional[str] = None

    def record(self, name: str, value: Any) -> None:
        self.measured[name] = value

    def expect(self, name: str, ok: bool, value: Any = None) -> bool:
        """Record ``value`` under ``name``; a false ``ok`` fails the check."""
        if value is not None:
            self.measured[name] = value
        if not ok:
            self.failures.append(name)
        return bool(ok)

    def finding(self, name: str, measured: Any, claim: str) -> None:
        """A printed claim the measurement does not reproduce."""
        self.findings.append({"name": name, "measured": measured, "claim": claim})

    @property
    def status(self) -> str:
        if self.error or self.failures:
            return Verdict.FAIL
        if self.findings:
            return Verdict.FINDING
        return Verdict.PASS

    def to_json(self) -> dict:
        return {
            "id": self.check_id,
            "status": self.status,
            "measured": self.measured,
            "failures": self.failures,
            "findings": self.findings,
            "error": self.error,
        }


@dataclass
class SuiteReport:
    seed: int
    version: str
    config: dict
    results: List[CheckResult]
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def failed(self) -> List[str]:
        return [r.check_id for r in self.results if r.status == Verdict.FAIL]

    @property
    def exit_code(self) -> int:
        return EXIT_CHECK_FAILED if self.failed else EXIT_OK

    def result(self, check_id: str) -> Optional[CheckResult]:
        return next((r for r in self.results if r.check_id == check_id), None)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "version": self.version,
            "config": self.config,
            "checks": [r.to_json() for r in self.results],
            "summary": {
                status: sum(1 for r in self.results if r.status == status)
                for status in (Verdict.PASS, Verdict.FAIL, Verdict.FINDING)
            },
        }

    def dumps(self) -> str:
        return canonical_dumps(self.to_json())


def _plain(value: Any) -> Any:
    """numpy scalars and arrays to JSON types; floats to 12 significant digits."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        x = float(value)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.12g}")
    return value


def canonical_dumps(data: Any) -> str:
    return json.dumps(_plain(data), sort_keys=True, indent=2) + "\n"


# =============================================================================
# EXECUTION
# =============================================================================

@dataclass
class CheckContext:
    """What a check may read: the config and its own RNG stream."""

    config: SuiteConfig
    check_id: str

    def __post_init__(self):
        self._seq = np.random.SeedSequence([self.config.seed, manifest_index(self.check_id)])

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self._seq.spawn(1)[0])

    def seeds(self, n: int) -> List[int]:
        """n integer seeds for routines that take one."""
        return [int(s) for s in self._seq.generate_state(n)]

    @property
    def samples(self) -> int:
        return int(self.config.monte_carlo.get("samples", DEFAULT_MC_SAMPLES))

    @property
    def cover_samples(self) -> int:
        return int(self.config.monte_carlo.get("cover_samples", COVER_SAMPLES))

    def grid(self, key: str, default: Any) -> Any:
        return self.config.grids.get(key, default)

    def tol(self, key: str, default: float) -> float:
        return float(self.config.tolerances.get(key, default))


def _run_one(check_id: str, config: SuiteConfig):
    logger = get_logger()
    result = CheckResult(check_id)
    start = time.perf_counter()
    with LogContext(logger, f"check {check_id}", seed=config.seed):
        try:
            get_check(check_id)(CheckContext(config, check_id), result)
        except ConfigInvalid:
            raise
        except Exception as e:
            result.error = f"{type(e).__name__}: {e}"
    elapsed = time.perf_counter() - start
    logger.check(check_id, result.status, f"{elapsed:.1f}s")
    return result, elapsed


@log_operation("Running verification suite")
def run_suite(config: SuiteConfig) -> SuiteReport:
    """Run the selected checks; an empty selection gives an empty report."""
    results: Dict[str, CheckResult] = {}
    timings: Dict[str, float] = {}
    if config.checks:
        with ThreadPoolExecutor(max_workers=min(config.workers, len(config.checks))) as pool:
            futures = {cid: pool.submit(_run_one, cid, config) for cid in config.checks}
            for cid, future in futures.items():
                results[cid], timings[cid] = future.result()
    return SuiteReport(
        seed=config.seed,
        version=__version__,
        config=config.to_json(),
        results=[results[cid] for cid in config.checks],
        timings=timings,
    )
