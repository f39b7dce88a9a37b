"""
Centralized constants for qcarleson.

Tolerances, default grids, suite identifiers and console styles shared by the
numerical core, the verification suite and the CLI.
"""

# =============================================================================
# NUMERICAL TOLERANCES
# =============================================================================

TAU_REAL = 1e-12                # |Im q| below this is treated as a real point
ORTHOGONALITY_TOL = 1e-12       # |I·J| allowed for a splitting pair
INTRINSIC_TOL = 1e-10           # max |f(q̄) - conj f(q)| for an intrinsic verdict
REDUCTION_TOL = 1e-12           # order dependence of floating max/sum reductions


# =============================================================================
# SLICE SERIES
# =============================================================================

DEFAULT_TRUNCATION = 512        # N_max for products and inverses
EVAL_MARGIN = 0.95              # eval requires |q| <= EVAL_MARGIN * radius


# =============================================================================
# NORM QUADRATURE
# =============================================================================

DEFAULT_RADII = (0.9, 0.99, 0.999)
MAX_RADIUS = 1.0 - 1e-6          # last radius tried before Divergent
STABILIZATION_TOL = 0.05         # |last - prev| relative bound for the r -> 1 limit
ANGULAR_TOL = 1e-10              # trapezoid doubling stops below this change
MAX_ANGULAR_NODES = 2 ** 18
DEFAULT_N_I = 200
DEFAULT_N_THETA = 1024
DEFAULT_N_R = 128
RADIAL_PANELS = 16               # geometric panels of the Bergman radial rule


# =============================================================================
# MONTE CARLO
# =============================================================================

DEFAULT_MC_SAMPLES = 1_000_000
MIN_MC_SAMPLES = 10_000
MC_CHUNK_SIZE = 250_000
COVER_SAMPLES = 100_000
DEFAULT_SEED = 20240611


# =============================================================================
# CARLESON GRIDS
# =============================================================================

BOX_THETA_COUNT = 64             # θ₀ values in [0, π]
BOX_DEPTH_COUNT = 10             # 1 - r in {2^-1, ..., 2^-10}
TUBE_MODULI = (0.0, 0.3, 0.6, 0.8, 0.9, 0.95, 0.98, 0.995)
TUBE_ANGLE_COUNT = 5             # slice angles in [0, π]
TUBE_AXIS_COUNT = 6
DEFAULT_TUBE_RADIUS = 0.5
DEFAULT_BALL_RADIUS = 0.5


# =============================================================================
# COUNTEREXAMPLE CONSTRUCTION
# =============================================================================

COUNTEREXAMPLE_START = 0.5       # y_1
COUNTEREXAMPLE_GRID_STEP = 1e-6
COUNTEREXAMPLE_CEILING = 1.0 - 1e-6


# =============================================================================
# VERIFICATION SUITE
# =============================================================================

CHECK_IDS = (
    "algebra",
    "representation",
    "kernels",
    "inequalities",
    "distance-sandwich",
    "area-sandwich",
    "volume-sandwich",
    "cover-pack",
    "disc-lattice",
    "hardy-boxes",
    "bergman-tubes",
    "ball-gap",
)

WORKERS_ENV = "QCARLESON_WORKERS"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2


class Verdict:
    """Outcome of a single suite check."""
    PASS = "pass"
    FAIL = "fail"
    FINDING = "finding"     # a printed claim the measurement does not reproduce


# =============================================================================
# LOGGING DEFAULTS
# =============================================================================

DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_MAX_LOG_FILES = 7


# =============================================================================
# RICH CONSOLE STYLES
# =============================================================================

class Styles:
    """Rich console style constants."""
    SUCCESS = "green"
    ERROR = "red"
    WARNING = "yellow"
    INFO = "cyan"
    DIM = "dim"
    BOLD = "bold"

    HEADER = "bold cyan"
    SECTION = "bold white"
    HIGHLIGHT = "bold yellow"


# =============================================================================
# STATUS ICONS (Rich formatted)
# =============================================================================

class StatusIcons:
    """Unicode status icons with Rich formatting."""
    SUCCESS = "[green]✓[/green]"
    ERROR = "[red]✗[/red]"
    WARNING = "[yellow]⚠[/yellow]"
    INFO = "[cyan]ℹ[/cyan]"
    SKIPPED = "[dim]○[/dim]"


VERDICT_ICONS = {
    Verdict.PASS: StatusIcons.SUCCESS,
    Verdict.FAIL: StatusIcons.ERROR,
    Verdict.FINDING: StatusIcons.WARNING,
}
