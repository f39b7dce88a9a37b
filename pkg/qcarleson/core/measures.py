"""
Declarative finite positive measures on the quaternionic unit ball.

Every measure answers four questions: total mass, the integral of |f|^p,
the mass of a Region, and the mass its slice measure mu_I gives a Carleson
box S_I. Axially symmetric measures are written as a planar part mu+ on the
upper half plane times a law on the directions J:

    mu_I = mu_R + g(I) mu+ (upper half of C_I) + g(-I) mu+ (mirrored).
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple, Type

import numpy as np

from .constants import (
    COUNTEREXAMPLE_CEILING,
    COUNTEREXAMPLE_GRID_STEP,
    COUNTEREXAMPLE_START,
)
from .geometry import (
    Region,
    RegionKind,
    direction_fraction,
    disc_geometry,
    tube_slice_area,
)
from .quadrature import disc_rule, gauss_legendre, graded_radial_rule, unit_disc_rule
from .quaternion import (
    I_AXIS,
    as_array,
    embed,
    from_complex,
    qnorm,
    sphere_sample,
    split_axis,
    uniform_ball,
)
from .volumes import ETA_FACTOR, tube_rule, tube_slice_disc, tube_volume
from ..utils.logging import log_operation

Function = Callable[[np.ndarray], np.ndarray]


class GridExhausted(RuntimeError):
    """The requested tubes do not fit below the search ceiling."""


# =============================================================================
# DENSITY DESCRIPTORS
# =============================================================================

@dataclass(frozen=True)
class RadialDensity:
    """h(z) = sum c_k |z|^k; a constant is the one-term case."""

    coeffs: Tuple[float, ...] = (1.0,)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("density needs at least one coefficient")
        grid = np.linspace(0.0, 1.0, 257)
        if np.any(self(grid) < 0.0):
            raise ValueError("density must be non-negative on [0, 1]")

    @classmethod
    def from_json(cls, data: dict) -> "RadialDensity":
        kind = data.get("type", "constant")
        if kind == "constant":
            return cls((float(data.get("value", 1.0)),))
        if kind == "radial":
            return cls(tuple(data["coeffs"]))
        raise ValueError(f"unknown density type '{kind}'")

    def to_json(self) -> dict:
        if len(self.coeffs) == 1:
            return {"type": "constant", "value": self.coeffs[0]}
        return {"type": "radial", "coeffs": list(self.coeffs)}

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) == 1

    def __call__(self, rho) -> np.ndarray:
        return np.polynomial.polynomial.polyval(np.asarray(rho, dtype=float), self.coeffs)

    def radial_moment(self, a: float, b: float, extra: int = 1) -> float:
        """int_a^b h(rho) rho^extra d rho."""
        return sum(c * (b ** (k + extra + 1) - a ** (k + extra + 1)) / (k + extra + 1)
                   for k, c in enumerate(self.coeffs))


@dataclass(frozen=True)
class DirectionLaw:
    """g(J) = 1 + kappa J.pole relative to normalised area; kappa = 0 is uniform."""

    kappa: float = 0.0
    pole: Tuple[float, float, float] = (1.0, 0.0, 0.0)

    def __post_init__(self):
        if abs(self.kappa) > 1.0:
            raise ValueError("zonal law needs |kappa| <= 1")
        p = np.asarray(self.pole, dtype=float)
        object.__setattr__(self, "pole", tuple((p / np.linalg.norm(p)).tolist()))

    @classmethod
    def from_json(cls, data: Optional[dict]) -> "DirectionLaw":
        data = data or {"type": "uniform"}
        if data.get("type", "uniform") == "uniform":
            return cls()
        if data["type"] == "zonal":
            return cls(float(data["kappa"]), tuple(data.get("pole", (1.0, 0.0, 0.0))))
        raise ValueError(f"unknown direction law '{data['type']}'")

    def to_json(self) -> dict:
        if self.kappa == 0.0:
            return {"type": "uniform"}
        return {"type": "zonal", "kappa": self.kappa, "pole": list(self.pole)}

    def __call__(self, J) -> np.ndarray:
        return 1.0 + self.kappa * (np.asarray(J, dtype=float) @ np.asarray(self.pole))


# =============================================================================
# PLANAR HELPERS
# =============================================================================

def _box_intervals(theta0: float, r: float):
    """
    Split the window |theta - theta0| <= 1 - r of a slice box into angle
    intervals of the upper half (theta in [0, pi]) and of the mirrored lower half.
    """
    theta0 = (theta0 + math.pi) % (2.0 * math.pi) - math.pi
    flip = theta0 < 0
    theta0 = abs(theta0)
    a, b = theta0 - (1.0 - r), theta0 + (1.0 - r)
    upper = [(max(a, 0.0), min(b, math.pi))]
    lower = []
    if a < 0:
        lower.append((0.0, -a))
    if b > math.pi:
        lower.append((2.0 * math.pi - b, math.pi))
    upper = [iv for iv in upper if iv[1] > iv[0]]
    return (lower, upper) if flip else (upper, lower)


def _symmetric_interval(theta0: float, r: float) -> Tuple[float, float]:
    return max(0.0, theta0 - (1.0 - r)), min(math.pi, theta0 + (1.0 - r))


def _in_window(x, y, theta0: float, r: float) -> np.ndarray:
    n = np.hypot(x, y)
    theta = np.arctan2(y, x)
    gap = np.abs((theta - theta0 + math.pi) % (2.0 * math.pi) - math.pi)
    return (n >= r) & (n < 1.0) & (gap <= 1.0 - r + 1e-15)


def _in_symmetric_box(x, y, theta0: float, r: float) -> np.ndarray:
    lo, hi = _symmetric_interval(theta0, r)
    n = np.hypot(x, y)
    phi = np.arctan2(np.abs(y), x)
    return (n >= r) & (n < 1.0) & (phi >= lo - 1e-15) & (phi <= hi + 1e-15)


def _polar_rule(r0: float, r1: float, intervals, n_r: int = 24, n_phi: int = 32):
    """(x, y, area weights) on the union of polar sectors r0 <= rho <= r1, phi in intervals."""
    rho, wr = gauss_legendre(r0, r1, n_r)
    xs, ys, ws = [], [], []
    for lo, hi in intervals:
        if hi <= lo:
            continue
        phi, wp = gauss_legendre(lo, hi, n_phi)
        xs.append((rho[:, None] * np.cos(phi)[None, :]).ravel())
        ys.append((rho[:, None] * np.sin(phi)[None, :]).ravel())
        ws.append(((wr * rho)[:, None] * wp[None, :]).ravel())
    if not xs:
        return np.zeros(0), np.zeros(0), np.zeros(0)
    return np.concatenate(xs), np.concatenate(ys), np.concatenate(ws)


def _tube_picture(region: Region, x, y) -> np.ndarray:
    z = x + 1j * y
    a = region.slice_center()
    return np.abs(z - a) < region.radius * np.abs(1.0 - z * np.conj(a))


# =============================================================================
# MEASURES
# =============================================================================

class Measure(ABC):
    kind: str = ""

    @abstractmethod
    def total_mass(self) -> float:
        ...

    @abstractmethod
    def integrate(self, f: Function, p: float) -> float:
        """int |f|^p d mu."""

    @abstractmethod
    def region_mass(self, region: Region) -> float:
        ...

    @abstractmethod
    def slice_box_mass(self, theta0: float, r: float, axis) -> float:
        """mu_I(S_I(theta0, r)) for the slice measure mu_I."""

    @abstractmethod
    def to_json(self) -> dict:
        ...

    def preferred_axes(self) -> np.ndarray:
        """Axes a slice scan should always include."""
        return np.zeros((0, 3))

    def preferred_centers(self) -> np.ndarray:
        """Centres a tube or ball scan should always include."""
        return np.zeros((0, 4))


@dataclass
class Atomic(Measure):
    points: np.ndarray = field(default_factory=lambda: np.zeros((0, 4)))
    weights: np.ndarray = field(default_factory=lambda: np.zeros(0))
    kind = "atomic"

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 4)
        self.weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if len(self.points) != len(self.weights):
            raise ValueError("atomic measure needs one weight per point")
        if np.any(self.weights <= 0):
            raise ValueError("atom weights must be positive")
        if len(self.points) and np.any(qnorm(self.points) >= 1.0):
            raise ValueError("atoms must lie in the open ball")

    def total_mass(self) -> float:
        return float(self.weights.sum())

    def integrate(self, f: Function, p: float) -> float:
        if not len(self.points):
            return 0.0
        return float(np.sum(self.weights * qnorm(f(self.points)) ** p))

    def region_mass(self, region: Region) -> float:
        if not len(self.points):
            return 0.0
        return float(self.weights[region.contains(self.points)].sum())

    def slice_box_mass(self, theta0: float, r: float, axis) -> float:
        return self.region_mass(Region.carleson_box(theta0, r, axis))

    def preferred_axes(self) -> np.ndarray:
        if not len(self.points):
            return np.zeros((0, 3))
        _, _, axes, real = split_axis(self.points)
        return axes[~real]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "atoms": [{"point": p.tolist(), "weight": float(w)} for p, w in zip(self.points, self.weights)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Atomic":
        atoms = data.get("atoms", [])
        return cls([a["point"] for a in atoms], [a["weight"] for a in atoms])


@dataclass
class SliceLebesgue(Measure):
    """h(|z|) d lambda on the whole disc of one slice C_axis."""

    axis: np.ndarray = field(default_factory=lambda: I_AXIS.copy())
    density: RadialDensity = field(default_factory=RadialDensity)
    kind = "slice_lebesgue"

    def __post_init__(self):
        a = np.asarray(self.axis, dtype=float).reshape(3)
        self.axis = a / np.linalg.norm(a)

    def _on_slice(self, axis) -> int:
        """+1 / -1 when axis is +-self.axis, 0 otherwise."""
        c = float(np.asarray(axis, dtype=float) @ self.axis)
        return int(np.sign(c)) if abs(abs(c) - 1.0) < 1e-12 else 0

    def total_mass(self) -> float:
        return 2.0 * math.pi * self.density.radial_moment(0.0, 1.0)

    def _disc_nodes(self, n_r: int, n_theta: int):
        z, w = unit_disc_rule(n_r, n_theta)
        return z, w * self.density(np.abs(z))

    def integrate(self, f: Function, p: float, n_r: int = 128, n_theta: int = 2048) -> float:
        z, w = self._disc_nodes(n_r, n_theta)
        return float(np.sum(w * qnorm(f(from_complex(z, self.axis))) ** p))

    def _disc_mass(self, center: complex, radius: float) -> float:
        z, w = disc_rule(center, radius, 48, 192)
        return float(np.sum(w * self.density(np.abs(z))))

    def region_mass(self, region: Region) -> float:
        kind = region.kind
        if kind == RegionKind.CARLESON_BOX:
            return self.slice_box_mass(region.theta0, region.radius, region.axis_array)
        if kind == RegionKind.SYMMETRIC_BOX:
            length = 2.0 * (1.0 - region.radius)
            sep = min(2.0 * region.theta0, 2.0 * math.pi - 2.0 * region.theta0)
            arcs = min(2.0 * math.pi, 2.0 * length - max(0.0, length - sep))
            return arcs * self.density.radial_moment(region.radius, 1.0)
        if kind == RegionKind.SLICE_DISC:
            sign = self._on_slice(region.axis_array)
            if sign == 0:
                return 0.0
            a = region.alpha
            g = disc_geometry(embed(a[0], sign * float(a[1:] @ region.axis_array), self.axis), region.radius)
            return self._disc_mass(self._picture(g.euclidean_center.to_array()), g.euclidean_radius)
        if kind == RegionKind.TUBE:
            if self.density.is_constant:
                return self.density.coeffs[0] * tube_slice_area(region.alpha, region.radius)
            c, radius = tube_slice_disc(region.alpha, region.radius)
            z, w = disc_rule(c, radius, 48, 192, clip_upper=True)
            return 2.0 * float(np.sum(w * self.density(np.abs(z))))
        if kind == RegionKind.BALL:
            a = region.alpha
            sign = self._on_slice(split_axis(a)[2]) if np.linalg.norm(a[1:]) > 1e-12 else 1
            if sign != 0:
                g = disc_geometry(a, region.radius)
                return self._disc_mass(self._picture(g.euclidean_center.to_array()), g.euclidean_radius)
            return self._ball_off_slice(region)
        raise ValueError(f"unsupported region {kind}")

    def _picture(self, q: np.ndarray) -> complex:
        return complex(q[0], float(q[1:] @ self.axis))

    def _ball_off_slice(self, region: Region, n_r: int = 96, n_theta: int = 384) -> float:
        z, w = self._disc_nodes(n_r, n_theta)
        return float(np.sum(w * region.contains(from_complex(z, self.axis))))

    def slice_box_mass(self, theta0: float, r: float, axis) -> float:
        if self._on_slice(axis) == 0:
            return 0.0
        return 2.0 * (1.0 - r) * self.density.radial_moment(r, 1.0)

    def preferred_axes(self) -> np.ndarray:
        return self.axis[None, :]

    def to_json(self) -> dict:
        return {"kind": self.kind, "axis": self.axis.tolist(), "density": self.density.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "SliceLebesgue":
        return cls(np.asarray(data.get("axis", I_AXIS), dtype=float),
                   RadialDensity.from_json(data.get("density", {"type": "constant", "value": 1.0})))


@dataclass
class Rotational(Measure):
    """
    h(|z|) (8/pi) y^2 dx dy on the upper half plane times g(J) on directions,
    i.e. h g d eta. The uniform law with constant h is a multiple of eta.
    """

    density: RadialDensity = field(default_factory=RadialDensity)
    law: DirectionLaw = field(default_factory=DirectionLaw)
    n_directions: int = 64
    kind = "rotational"

    def planar(self, x, y) -> np.ndarray:
        return ETA_FACTOR * y * y * self.density(np.hypot(x, y))

    def density_eta(self, q) -> np.ndarray:
        """Density of mu with respect to eta at q."""
        x, y, axis, _ = split_axis(q)
        return self.density(np.hypot(x, y)) * self.law(axis)

    def total_mass(self) -> float:
        # int_0^1 int_0^pi (8/pi) rho^2 sin^2 h rho d phi d rho
        return 4.0 * self.density.radial_moment(0.0, 1.0, extra=3)

    def _half_disc(self, n_r: int = 64, n_phi: int = 48):
        rho, wr = graded_radial_rule(n_r)
        phi, wp = gauss_legendre(0.0, math.pi, n_phi)
        x = (rho[:, None] * np.cos(phi)[None, :]).ravel()
        y = (rho[:, None] * np.sin(phi)[None, :]).ravel()
        w = ((wr * rho)[:, None] * wp[None, :]).ravel()
        return x, y, w

    def integrate(self, f: Function, p: float) -> float:
        x, y, w = self._half_disc()
        dirs = sphere_sample(self.n_directions)
        g = self.law(dirs) / self.n_directions
        pts = embed(x[None, :], y[None, :], dirs[:, None, :])
        values = qnorm(f(pts)) ** p
        return float(np.sum(g[:, None] * (w * self.planar(x, y))[None, :] * values))

    def mc_integrate(self, f: Function, p: float, n: int = 1_000_000, seed: int = 0) -> Tuple[float, float]:
        """Direct 4-D Monte Carlo of int |f|^p h g d eta, with its standard error."""
        q = uniform_ball(np.random.default_rng(seed), n)
        values = qnorm(f(q)) ** p * self.density_eta(q)
        return float(values.mean()), float(values.std(ddof=1) / math.sqrt(n))

    def slice_integral(self, f: Function, p: float, axis) -> float:
        """int_{B_I} |f|^p d mu_I."""
        axis = np.asarray(axis, dtype=float)
        x, y, w = self._half_disc()
        wp = w * self.planar(x, y)
        up = qnorm(f(embed(x, y, axis))) ** p
        down = qnorm(f(embed(x, y, -axis))) ** p
        return float(self.law(axis) * np.sum(wp * up) + self.law(-axis) * np.sum(wp * down))

    def region_mass(self, region: Region) -> float:
        kind = region.kind
        if kind in (RegionKind.CARLESON_BOX, RegionKind.SLICE_DISC):
            return 0.0
        if kind == RegionKind.SYMMETRIC_BOX:
            x, y, w = _polar_rule(region.radius, 1.0, [_symmetric_interval(region.theta0, region.radius)])
            return float(np.sum(w * self.planar(x, y)))
        x, y, w = tube_rule(region.alpha, region.radius, 48, 192)
        w = w * self.density(np.hypot(x, y))
        if kind == RegionKind.TUBE:
            return float(w.sum())
        if kind == RegionKind.BALL:
            frac = direction_fraction(x, y, region.alpha, region.radius, self.law.kappa, self.law.pole)
            return float(np.sum(w * frac))
        raise ValueError(f"unsupported region {kind}")

    def slice_box_mass(self, theta0: float, r: float, axis) -> float:
        axis = np.asarray(axis, dtype=float)
        upper, lower = _box_intervals(theta0, r)
        total = 0.0
        for intervals, weight in ((upper, self.law(axis)), (lower, self.law(-axis))):
            x, y, w = _polar_rule(r, 1.0, intervals)
            total += float(weight) * float(np.sum(w * self.planar(x, y)))
        return total

    def to_json(self) -> dict:
        return {"kind": self.kind, "density": self.density.to_json(), "direction": self.law.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Rotational":
        return cls(RadialDensity.from_json(data.get("density", {"type": "constant", "value": 1.0})),
                   DirectionLaw.from_json(data.get("direction")))


@dataclass
class TubeCounterexample(Measure):
    """
    Constant multiples of eta on disjoint tubes Delta(I y_k, r), scaled so
    tube k carries mass delta_k^(4 - eps).
    """

    r: float
    eps: float
    centers: np.ndarray
    axis: np.ndarray = field(default_factory=lambda: I_AXIS.copy())
    grid_step: float = COUNTEREXAMPLE_GRID_STEP
    kind = "tube_counterexample"

    def __post_init__(self):
        self.centers = np.asarray(self.centers, dtype=float).reshape(-1)
        a = np.asarray(self.axis, dtype=float).reshape(3)
        self.axis = a / np.linalg.norm(a)
        self.scales = np.sqrt(1.0 - self.centers ** 2)
        self.masses = self.scales ** (4.0 - self.eps)
        self.volumes = np.array([tube_volume(self.alpha(k), self.r) for k in range(len(self.centers))])
        self.densities = self.masses / self.volumes
        self._rules = [tube_rule(self.alpha(k), self.r, 48, 192) for k in range(len(self.centers))]

    def alpha(self, k: int) -> np.ndarray:
        return embed(0.0, self.centers[k], self.axis)

    @property
    def tubes(self) -> int:
        return len(self.centers)

    def total_mass(self) -> float:
        return float(self.masses.sum())

    def density_eta(self, q) -> np.ndarray:
        q = as_array(q)
        out = np.zeros(q.shape[:-1])
        for k in range(self.tubes):
            out = np.where(Region.tube(self.alpha(k), self.r).contains(q), self.densities[k], out)
        return out

    def integrate(self, f: Function, p: float, n_directions: int = 32) -> float:
        dirs = sphere_sample(n_directions)
        total = 0.0
        for c, (x, y, w) in zip(self.densities, self._rules):
            pts = embed(x[None, :], y[None, :], dirs[:, None, :])
            total += c * float(np.sum(w[None, :] * qnorm(f(pts)) ** p)) / n_directions
        return total

    def _weighted(self, weight_fn) -> float:
        return float(sum(c * np.sum(w * weight_fn(x, y)) for c, (x, y, w) in zip(self.densities, self._rules)))

    def region_mass(self, region: Region) -> float:
        kind = region.kind
        if kind in (RegionKind.CARLESON_BOX, RegionKind.SLICE_DISC):
            return 0.0
        if kind == RegionKind.TUBE:
            return self._weighted(lambda x, y: _tube_picture(region, x, y))
        if kind == RegionKind.BALL:
            return self._weighted(lambda x, y: direction_fraction(x, y, region.alpha, region.radius))
        if kind == RegionKind.SYMMETRIC_BOX:
            return self._weighted(lambda x, y: _in_symmetric_box(x, y, region.theta0, region.radius))
        raise ValueError(f"unsupported region {kind}")

    def tube_mass(self, k: int) -> float:
        return float(self.masses[k])

    def slice_box_mass(self, theta0: float, r: float, axis) -> float:
        # planar part per tube: density * (8/pi) y^2 on the disc picture, uniform directions
        return self._weighted(
            lambda x, y: _in_window(x, y, theta0, r).astype(float) + _in_window(x, -y, theta0, r)
        )

    def preferred_axes(self) -> np.ndarray:
        return self.axis[None, :]

    def preferred_centers(self) -> np.ndarray:
        return np.stack([self.alpha(k) for k in range(self.tubes)])

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "r": self.r,
            "eps": self.eps,
            "tubes": self.tubes,
            "axis": self.axis.tolist(),
            "grid_step": self.grid_step,
            "centers": self.centers.tolist(),
            "masses": self.masses.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "TubeCounterexample":
        if "centers" in data:
            return cls(float(data["r"]), float(data["eps"]), data["centers"],
                       np.asarray(data.get("axis", I_AXIS), dtype=float),
                       float(data.get("grid_step", COUNTEREXAMPLE_GRID_STEP)))
        return build_counterexample(float(data["r"]), float(data["eps"]), int(data["tubes"]),
                                    data.get("axis", I_AXIS),
                                    grid_step=float(data.get("grid_step", COUNTEREXAMPLE_GRID_STEP)))


def separation(r: float) -> float:
    """Least centre distance 2r / (1 + r^2) keeping two slice discs of radius r apart."""
    return 2.0 * r / (1.0 + r * r)


@log_operation("Building counterexample measure")
def build_counterexample(
    r: float,
    eps: float,
    tubes: int,
    axis=I_AXIS,
    grid_step: float = COUNTEREXAMPLE_GRID_STEP,
    ceiling: float = COUNTEREXAMPLE_CEILING,
    start: float = COUNTEREXAMPLE_START,
) -> TubeCounterexample:
    """
    Centres I y_k with y_1 = start and each next y the smallest grid value
    whose distance to every earlier I y_j and -I y_j is at least 2r/(1+r^2),
    so the tubes Delta(I y_k, r) are pairwise disjoint.
    """
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    if not 0.0 < eps < 4.0:
        raise ValueError("eps must lie in (0, 4)")
    if tubes < 1:
        raise ValueError("at least one tube is needed")
    axis = np.asarray(axis, dtype=float).reshape(-1)[-3:]
    sep = separation(r)
    ys = [start]
    while len(ys) < tubes:
        last = ys[-1]
        target = (last + sep) / (1.0 + last * sep)
        y = math.ceil(target / grid_step - 1e-9) * grid_step
        while y <= ceiling and not _separated(y, ys, sep):
            y += grid_step
        if y > ceiling:
            raise GridExhausted(f"tube {len(ys) + 1} would need y = {y:.8f} > {ceiling}")
        ys.append(y)
    return TubeCounterexample(r, eps, np.array(ys), axis, grid_step)


def _separated(y: float, ys, sep: float) -> bool:
    """rho(I y, I y_j) and rho(I y, -I y_j) both at least sep for every earlier y_j."""
    return all(abs(y - yj) / (1.0 - y * yj) >= sep and (y + yj) / (1.0 + y * yj) >= sep for yj in ys)


# =============================================================================
# SERIALISATION
# =============================================================================

MEASURE_TYPES: Dict[str, Type[Measure]] = {
    Atomic.kind: Atomic,
    SliceLebesgue.kind: SliceLebesgue,
    Rotational.kind: Rotational,
    TubeCounterexample.kind: TubeCounterexample,
}


def measure_from_json(data: dict) -> Measure:
    kind = data.get("kind")
    if kind not in MEASURE_TYPES:
        raise ValueError(f"unknown measure kind '{kind}'")
    return MEASURE_TYPES[kind].from_json(data)


def measure_to_json(measure: Measure) -> dict:
    return measure.to_json()
