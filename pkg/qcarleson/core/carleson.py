"""
Carleson-type conditions evaluated on finite grids.

Suprema over infinite families are not decidable numerically, so every
report is a max over its grid together with the region attaining it
(first in grid order on ties) and, where a sequence is monitored, a fitted
growth exponent.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .constants import (
    BOX_DEPTH_COUNT,
    BOX_THETA_COUNT,
    DEFAULT_BALL_RADIUS,
    DEFAULT_TUBE_RADIUS,
    MC_CHUNK_SIZE,
    TUBE_ANGLE_COUNT,
    TUBE_AXIS_COUNT,
    TUBE_MODULI,
)
from .covering import pack_tube
from .geometry import Region, arc_length, boundary_scale, disc_area, disc_geometry
from .kernels import KernelSpec, kernel_norm_squared
from .measures import Measure, Rotational, TubeCounterexample
from .quadrature import disc_rule
from .quaternion import as_array, embed, from_complex, qmul, qnorm, sphere_sample, split_axis, uniform_sphere
from .series import SliceSeries
from .volumes import ExponentFit, fit_exponent

Function = Callable[[np.ndarray], np.ndarray]

CONDITIONS = ("hardy_box", "slice_box", "bergman_tube", "ball_beta")


# =============================================================================
# GRIDS AND REPORTS
# =============================================================================

@dataclass(frozen=True)
class CarlesonGrid:
    box_thetas: int = BOX_THETA_COUNT
    box_depths: int = BOX_DEPTH_COUNT
    tube_moduli: Tuple[float, ...] = TUBE_MODULI
    tube_angles: int = TUBE_ANGLE_COUNT
    tube_axes: int = TUBE_AXIS_COUNT
    tube_radius: float = DEFAULT_TUBE_RADIUS
    ball_radius: float = DEFAULT_BALL_RADIUS

    @classmethod
    def from_config(cls, grids: dict) -> "CarlesonGrid":
        return cls(
            box_thetas=int(grids.get("box_thetas", BOX_THETA_COUNT)),
            box_depths=int(grids.get("box_depths", BOX_DEPTH_COUNT)),
            tube_moduli=tuple(float(m) for m in grids.get("tube_moduli", TUBE_MODULI)),
            tube_angles=int(grids.get("tube_angles", TUBE_ANGLE_COUNT)),
            tube_axes=int(grids.get("tube_axes", TUBE_AXIS_COUNT)),
            tube_radius=float(grids.get("tube_radius", DEFAULT_TUBE_RADIUS)),
            ball_radius=float(grids.get("ball_radius", DEFAULT_BALL_RADIUS)),
        )

    def thetas(self) -> np.ndarray:
        return np.linspace(0.0, math.pi, self.box_thetas)

    def box_radii(self) -> np.ndarray:
        """r with 1 - r = 2^-1, ..., 2^-box_depths."""
        return 1.0 - 2.0 ** -np.arange(1, self.box_depths + 1, dtype=float)

    def axes(self, extra: Optional[np.ndarray] = None) -> np.ndarray:
        base = sphere_sample(self.tube_axes)
        if extra is None or not len(extra):
            return base
        return np.concatenate([np.atleast_2d(extra), base])

    def centers(self, extra_axes: Optional[np.ndarray] = None,
                extra_centers: Optional[np.ndarray] = None) -> np.ndarray:
        """alpha = m e^{J theta} over moduli x slice angles x axes, plus fixed extras."""
        angles = np.linspace(0.0, math.pi, self.tube_angles)
        out = []
        for axis in self.axes(extra_axes):
            for m in self.tube_moduli:
                for t in angles:
                    out.append(embed(m * math.cos(t), m * math.sin(t), axis))
        pts = np.array(out)
        if extra_centers is not None and len(extra_centers):
            pts = np.concatenate([np.atleast_2d(extra_centers), pts])
        # + 0.0 folds -0.0 into 0.0 before the row comparison
        _, idx = np.unique(np.round(pts, 12) + 0.0, axis=0, return_index=True)
        return pts[np.sort(idx)]

    def to_json(self) -> dict:
        return {
            "box_thetas": self.box_thetas,
            "box_depths": self.box_depths,
            "tube_moduli": list(self.tube_moduli),
            "tube_angles": self.tube_angles,
            "tube_axes": self.tube_axes,
            "tube_radius": self.tube_radius,
            "ball_radius": self.ball_radius,
        }


@dataclass
class CarlesonReport:
    condition: str
    sup_ratio: float
    witness: Region
    grid: dict
    ratios: np.ndarray = field(default=None, repr=False)
    threshold: Optional[float] = None
    beta: Optional[float] = None

    @property
    def bounded(self) -> Optional[bool]:
        if self.threshold is None:
            return None
        return bool(self.sup_ratio <= self.threshold)

    @property
    def verdict(self) -> str:
        if self.bounded is None:
            return "bounded over grid" if math.isfinite(self.sup_ratio) else "growth detected"
        return "bounded over grid" if self.bounded else "exceeds threshold"

    def to_json(self) -> dict:
        data = {
            "condition": self.condition,
            "sup_ratio": self.sup_ratio,
            "witness": self.witness.to_json(),
            "grid": self.grid,
            "samples": int(len(self.ratios)) if self.ratios is not None else 0,
            "verdict": self.verdict,
        }
        if self.threshold is not None:
            data["threshold"] = self.threshold
        if self.beta is not None:
            data["beta"] = self.beta
        return data


def _reduce(condition: str, regions: List[Region], ratios: Sequence[float], grid: dict,
            threshold: Optional[float] = None, beta: Optional[float] = None) -> CarlesonReport:
    ratios = np.asarray(ratios, dtype=float)
    k = int(np.argmax(ratios))
    return CarlesonReport(condition, float(ratios[k]), regions[k], grid, ratios, threshold, beta)


# =============================================================================
# CONDITIONS
# =============================================================================

def region_measure(measure: Measure, region: Region) -> float:
    return measure.region_mass(region)


def check_hardy_box(measure: Measure, grid: CarlesonGrid = CarlesonGrid(),
                    threshold: Optional[float] = None) -> CarlesonReport:
    """sup of mu(S(theta0, r)) / 2(1 - r) over the box grid."""
    regions, ratios = [], []
    for theta0 in grid.thetas():
        for r in grid.box_radii():
            region = Region.symmetric_box(float(theta0), float(r))
            regions.append(region)
            ratios.append(measure.region_mass(region) / arc_length(r))
    return _reduce("hardy_box", regions, ratios, grid.to_json(), threshold)


def check_slice_box(measure: Measure, grid: CarlesonGrid = CarlesonGrid(),
                    threshold: Optional[float] = None) -> CarlesonReport:
    """sup of mu_I(S_I(theta0, r)) / 2(1 - r) over the box grid and sampled I."""
    regions, ratios = [], []
    for axis in grid.axes(measure.preferred_axes()):
        for theta0 in grid.thetas():
            for r in grid.box_radii():
                regions.append(Region.carleson_box(float(theta0), float(r), axis))
                ratios.append(measure.slice_box_mass(float(theta0), float(r), axis) / arc_length(r))
    return _reduce("slice_box", regions, ratios, grid.to_json(), threshold)


def check_bergman_tube(measure: Measure, grid: CarlesonGrid = CarlesonGrid(),
                       threshold: Optional[float] = None) -> CarlesonReport:
    """sup of mu(Delta(alpha, r)) / |Delta_I(alpha, r)| over the tube grid."""
    r = grid.tube_radius
    regions, ratios = [], []
    for alpha in grid.centers(measure.preferred_axes(), measure.preferred_centers()):
        region = Region.tube(alpha, r)
        regions.append(region)
        ratios.append(measure.region_mass(region) / disc_area(alpha, r))
    return _reduce("bergman_tube", regions, ratios, grid.to_json(), threshold)


def check_ball(measure: Measure, beta: float, grid: CarlesonGrid = CarlesonGrid(),
               threshold: Optional[float] = None) -> CarlesonReport:
    """sup of mu(B(alpha, r)) / delta^beta over the tube grid."""
    r = grid.ball_radius
    regions, ratios = [], []
    for alpha in grid.centers(measure.preferred_axes(), measure.preferred_centers()):
        region = Region.ball(alpha, r)
        regions.append(region)
        ratios.append(measure.region_mass(region) / float(boundary_scale(alpha)) ** beta)
    return _reduce("ball_beta", regions, ratios, grid.to_json(), threshold, beta)


# =============================================================================
# FUNCTIONAL TEST
# =============================================================================

@dataclass
class FamilyMember:
    label: str
    function: Function
    norm_p: float           # ||f||^p in the chosen space


@dataclass
class FunctionalReport:
    p: float
    space: str
    max_ratio: float
    witness: str
    ratios: Dict[str, float]

    def to_json(self) -> dict:
        return {"p": self.p, "space": self.space, "max_ratio": self.max_ratio,
                "witness": self.witness, "ratios": self.ratios}


def kernel_family(kind: str, ws: Sequence, p: float, space: str = "hardy",
                  normalized: bool = False) -> List[FamilyMember]:
    """K^(2/p) or H^(2/p) at each w; ||K^(2/p)||_p^p = ||K||_2^2."""
    members = []
    for w in ws:
        spec = KernelSpec(kind, as_array(w), 2.0 / p)
        norm = kernel_norm_squared(spec.kind, spec.w, space, normalized)
        members.append(FamilyMember(f"{kind}(w={np.round(spec.w, 6).tolist()})", spec, norm))
    return members


def monomial_family(p: float, degrees: Sequence[int] = (0, 1, 2, 4, 8), space: str = "hardy",
                    normalized: bool = False) -> List[FamilyMember]:
    members = []
    for n in degrees:
        series = SliceSeries.monomial(n)
        if space == "hardy":
            norm = 1.0 if normalized else 2.0 * math.pi
        else:
            norm = 2.0 * math.pi / (n * p + 2.0)
        members.append(FamilyMember(f"q^{n}", series, norm))
    return members


def functional_carleson_test(measure: Measure, p: float, family: Sequence[FamilyMember],
                             space: str = "hardy") -> FunctionalReport:
    """max over the family of int |f|^p d mu / ||f||^p."""
    if p <= 0:
        raise ValueError("p must be positive")
    ratios = {m.label: measure.integrate(m.function, p) / m.norm_p for m in family}
    witness = max(ratios, key=ratios.get) if ratios else ""
    return FunctionalReport(p, space, max(ratios.values(), default=0.0), witness, ratios)


# =============================================================================
# POINTWISE INEQUALITIES
# =============================================================================

@dataclass
class InequalityReport:
    max_ratio: float
    violations: int
    samples: int

    @property
    def holds(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {"max_ratio": self.max_ratio, "violations": self.violations, "samples": self.samples}


def _rf_ratio(rng: np.random.Generator, n: int, p: float) -> np.ndarray:
    A = rng.standard_normal((n, 4))
    B = rng.standard_normal((n, 4))
    I = embed(0.0, 1.0, uniform_sphere(rng, n))
    J = embed(0.0, 1.0, uniform_sphere(rng, n))
    IJ = qmul(I, J)
    one = np.zeros((n, 4))
    one[:, 0] = 1.0
    value = 0.5 * qmul(one - IJ, A) + 0.5 * qmul(one + IJ, B)
    lhs = qnorm(value) ** p
    sum_p = qnorm(A) ** p + qnorm(B) ** p
    bound = 2.0 ** (p - 1.0) * sum_p if p >= 1.0 else sum_p
    return lhs / bound


def rf_inequality_check(p: float, n: int = 1_000_000, seed: int = 0,
                        chunk: int = MC_CHUNK_SIZE) -> InequalityReport:
    """
    |(1 - IJ) A / 2 + (1 + IJ) B / 2|^p against 2^(p-1)(|A|^p + |B|^p) for p >= 1
    and |A|^p + |B|^p for 0 < p < 1, on random quaternions A, B and units I, J.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    sizes = [chunk] * (n // chunk) + ([n % chunk] if n % chunk else [])
    worst, violations = 0.0, 0
    for child, size in zip(np.random.SeedSequence(seed).spawn(len(sizes)), sizes):
        ratio = _rf_ratio(np.random.default_rng(child), size, p)
        worst = max(worst, float(ratio.max()))
        violations += int(np.count_nonzero(ratio > 1.0 + 1e-12))
    return InequalityReport(worst, violations, n)


@dataclass
class SubmeanReport:
    ratio: float
    holds: bool
    outer_radius: float


def submean_check(f: Function, p: float, alpha, r: float, axis=None, n: int = 1000,
                  seed: int = 0) -> SubmeanReport:
    """
    max over z in Delta_J(alpha, r) of |f(z)|^p against
    4 (1 - R)^-4 / |Delta_J(alpha, R)| int_{Delta_J(alpha, R)} |f|^p, R = (1 + r) / 2.
    """
    alpha = as_array(alpha)
    if axis is None:
        axis = split_axis(alpha)[2]
    axis = np.asarray(axis, dtype=float)
    a = complex(alpha[0], float(alpha[1:] @ axis))
    R = 0.5 * (1.0 + r)

    inner = disc_geometry(alpha, r)
    outer = disc_geometry(alpha, R)
    c_in = complex(*_picture(inner.euclidean_center.to_array(), axis))
    c_out = complex(*_picture(outer.euclidean_center.to_array(), axis))

    rng = np.random.default_rng(seed)
    z = c_in + inner.euclidean_radius * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
    z = np.concatenate([z, [a]])
    lhs = qnorm(f(from_complex(z, axis))) ** p

    nodes, w = disc_rule(c_out, outer.euclidean_radius, 48, 192)
    integral = float(np.sum(w * qnorm(f(from_complex(nodes, axis))) ** p))
    rhs = 4.0 * (1.0 - R) ** -4 / outer.area * integral
    ratio = float(lhs.max() / rhs) if rhs > 0 else (0.0 if lhs.max() == 0 else math.inf)
    return SubmeanReport(ratio, ratio <= 1.0, R)


def _picture(q: np.ndarray, axis: np.ndarray) -> Tuple[float, float]:
    return float(q[0]), float(q[1:] @ axis)


@dataclass
class TransferReport:
    max_ratio: float
    ratios: Dict[str, float]
    holds: bool


def transfer_check(measure: Rotational, family: Sequence[FamilyMember], p: float,
                   n_axes: int = 64, tol: float = 1e-3) -> TransferReport:
    """int_B |f|^p d mu against sup_I int_{B_I} |f|^p d mu_I (nu(S) = 1)."""
    axes = sphere_sample(n_axes)
    ratios = {}
    for member in family:
        lhs = measure.integrate(member.function, p)
        rhs = max(measure.slice_integral(member.function, p, axis) for axis in axes)
        ratios[member.label] = lhs / rhs if rhs > 0 else 0.0
    worst = max(ratios.values(), default=0.0)
    return TransferReport(worst, ratios, worst <= 1.0 + tol)


# =============================================================================
# COUNTEREXAMPLE PROFILE
# =============================================================================

@dataclass
class CounterexampleProfile:
    """Per-tube quantities along the sequence alpha_k = I y_k."""

    scales: np.ndarray
    tube_ratios: np.ndarray         # mu(Delta_k) / |Delta_I(alpha_k, r)|
    box_ratios: np.ndarray          # mu(S_k) / 2(1 - r_k) for the box around tube k
    ball_masses: np.ndarray         # max mu(B(alpha_k^j, r)) over packed centres
    pack_counts: np.ndarray
    tube_fit: ExponentFit
    box_fit: ExponentFit
    ball_fit: ExponentFit

    @property
    def tube_increasing(self) -> bool:
        return bool(np.all(np.diff(self.tube_ratios) > 0))

    def to_json(self) -> dict:
        return {
            "scales": self.scales.tolist(),
            "tube_ratios": self.tube_ratios.tolist(),
            "box_ratios": self.box_ratios.tolist(),
            "ball_masses": self.ball_masses.tolist(),
            "pack_counts": self.pack_counts.tolist(),
            "tube_exponent": self.tube_fit.exponent,
            "box_exponent": self.box_fit.exponent,
            "ball_exponent": self.ball_fit.exponent,
        }


def _capturing_box(alpha: np.ndarray, r: float) -> Region:
    """Symmetric box at theta0 = pi/2 holding the whole tube of alpha."""
    g = disc_geometry(alpha, r)
    c = g.euclidean_center.norm()
    spread = math.asin(min(1.0, g.euclidean_radius / c))
    depth = min(c - g.euclidean_radius, 1.0 - spread)
    return Region.symmetric_box(0.5 * math.pi, depth)


def profile_counterexample(measure: TubeCounterexample, pack_candidates: int = 2000) -> CounterexampleProfile:
    r = measure.r
    tube_ratios, box_ratios, ball_masses, counts = [], [], [], []
    for k in range(measure.tubes):
        alpha = measure.alpha(k)
        tube_ratios.append(measure.tube_mass(k) / disc_area(alpha, r))
        box = _capturing_box(alpha, r)
        box_ratios.append(measure.region_mass(box) / arc_length(box.radius))
        centers = pack_tube(measure.centers[k], r, measure.axis, pack_candidates)
        counts.append(len(centers))
        ball_masses.append(max(measure.region_mass(Region.ball(c, r)) for c in centers))
    scales = measure.scales
    return CounterexampleProfile(
        scales=scales,
        tube_ratios=np.array(tube_ratios),
        box_ratios=np.array(box_ratios),
        ball_masses=np.array(ball_masses),
        pack_counts=np.array(counts),
        tube_fit=fit_exponent(scales, tube_ratios),
        box_fit=fit_exponent(scales, box_ratios),
        ball_fit=fit_exponent(scales, ball_masses),
    )
