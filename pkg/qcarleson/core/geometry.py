"""
Pseudohyperbolic geometry of the quaternionic unit ball.

For q = x + J y the Moebius numerator P = star_mul(1 - q alpha, q - alpha)
splits as U + J V with U, V independent of J, so

    rho(q, alpha)^2 = (A - 2 J.m) / |S_alpha(q)|^2,   A = |U|^2 + |V|^2,
                                                        m = Im(V conj U).

A ball B(alpha, s) therefore cuts every sphere [x + I y] in a spherical cap
{J : J.m > t}, which gives exact direction fractions for volumes and masses.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .constants import TAU_REAL
from .quaternion import (
    I_AXIS,
    ONE,
    Quaternion,
    as_array,
    embed,
    qconj,
    qmul,
    qnorm,
    same_slice,
    split_axis,
)


class DifferentSlices(ValueError):
    """The two points do not share a slice."""


# =============================================================================
# DISTANCES
# =============================================================================

def boundary_distance(alpha) -> float:
    """d = 1 - |alpha|."""
    return 1.0 - float(qnorm(alpha))


def boundary_scale(alpha) -> np.ndarray:
    """delta = sqrt(1 - |alpha|^2), the scale in which the power laws are read."""
    n = qnorm(alpha)
    return np.sqrt(np.clip(1.0 - n * n, 0.0, None))


def rho_slice(z, alpha) -> float:
    """|z - alpha| / |1 - z conj(alpha)| for two points of one slice."""
    z = as_array(z)
    alpha = as_array(alpha)
    if not same_slice(z, alpha):
        raise DifferentSlices("rho_slice needs points of a common slice")
    # a common complex picture: use the axis of whichever point is non-real
    _, _, axis, real_mask = split_axis(alpha)
    if real_mask:
        _, _, axis, _ = split_axis(z)
    zc = complex(z[0], float(z[1:] @ axis))
    ac = complex(alpha[0], float(alpha[1:] @ axis))
    return abs(zc - ac) / abs(1.0 - zc * ac.conjugate())


def _moebius_coeffs(alpha: np.ndarray):
    c0 = -alpha
    c1 = ONE + qmul(alpha, alpha)
    return c0, c1, -alpha


def _s_abs2(x, y, alpha):
    """|S_alpha(x + I y)|^2, independent of I."""
    a = alpha[..., 0]
    n2 = np.sum(alpha * alpha, axis=-1)
    z = x + 1j * y
    return np.abs(1.0 - 2.0 * a * z + n2 * z * z) ** 2


def rho_terms(x, y, alpha):
    """A, m and |S|^2 at slice coordinates (x, y >= 0)."""
    alpha = as_array(alpha)
    c0, c1, c2 = _moebius_coeffs(alpha)
    x = np.asarray(x, dtype=float)[..., None]
    y = np.asarray(y, dtype=float)[..., None]
    U = c0 + x * c1 + (x * x - y * y) * c2
    V = y * c1 + 2.0 * x * y * c2
    A = np.sum(U * U, axis=-1) + np.sum(V * V, axis=-1)
    m = qmul(V, qconj(U))[..., 1:]
    return A, m, _s_abs2(x[..., 0], y[..., 0], alpha)


def rho(q, alpha) -> np.ndarray:
    """Pseudohyperbolic distance through the closed form |P(q)| / |S_alpha(q)|."""
    q = as_array(q)
    alpha = as_array(alpha)
    c0, c1, c2 = _moebius_coeffs(alpha)
    P = c0 + qmul(q, c1) + qmul(qmul(q, q), c2)
    x, y, _, _ = split_axis(q)
    return qnorm(P) / np.sqrt(_s_abs2(x, y, alpha))


def direction_fraction(x, y, alpha, s: float, kappa: float = 0.0, pole=None) -> np.ndarray:
    """
    Normalised area of {J : rho(x + J y, alpha) < s} on the sphere of directions.

    With ``kappa`` the area is weighted by g(J) = 1 + kappa J.pole, using the
    first moment of a cap, (1 - tau^2) / 4.
    """
    A, m, S2 = rho_terms(x, y, alpha)
    t = 0.5 * (A - s * s * S2)
    mn = np.linalg.norm(m, axis=-1)
    degenerate = mn < 1e-15
    tau = np.where(degenerate, 0.0, t / np.where(degenerate, 1.0, mn))
    tau_c = np.clip(tau, -1.0, 1.0)
    frac = np.where(degenerate, (t < 0).astype(float), 0.5 * (1.0 - tau_c))
    if kappa:
        pole = I_AXIS if pole is None else np.asarray(pole, dtype=float)
        mhat = m / np.where(degenerate, 1.0, mn)[..., None]
        moment = np.where(degenerate, 0.0, 0.25 * (1.0 - tau_c ** 2))
        frac = frac + kappa * (mhat @ pole) * moment
    return frac


def triangle_defect(q1, q2, q3) -> np.ndarray:
    """rho(q1, q3) - rho(q1, q2) - rho(q2, q3); positive entries violate the triangle inequality."""
    return rho(q1, q3) - rho(q1, q2) - rho(q2, q3)


# =============================================================================
# REGIONS
# =============================================================================

class RegionKind(str, Enum):
    SLICE_DISC = "slice_disc"
    TUBE = "tube"
    BALL = "ball"
    CARLESON_BOX = "carleson_box"
    SYMMETRIC_BOX = "symmetric_box"


def _in_slice(q: np.ndarray, axis: np.ndarray) -> np.ndarray:
    vec = q[..., 1:]
    off = vec - (vec @ axis)[..., None] * axis
    return np.linalg.norm(off, axis=-1) <= 1e-12 * np.maximum(1.0, qnorm(q))


def _wrap(angle):
    return np.abs((np.asarray(angle) + np.pi) % (2.0 * np.pi) - np.pi)


@dataclass(frozen=True)
class Region:
    kind: RegionKind
    radius: float
    center: Optional[Tuple[float, float, float, float]] = None
    theta0: float = 0.0
    axis: Optional[Tuple[float, float, float]] = None

    @classmethod
    def slice_disc(cls, alpha, r: float, axis=None) -> "Region":
        alpha = as_array(alpha)
        if axis is None:
            axis = split_axis(alpha)[2]
        return cls(RegionKind.SLICE_DISC, r, tuple(alpha.tolist()), axis=tuple(np.asarray(axis, float).tolist()))

    @classmethod
    def tube(cls, alpha, r: float) -> "Region":
        return cls(RegionKind.TUBE, r, tuple(as_array(alpha).tolist()))

    @classmethod
    def ball(cls, alpha, r: float) -> "Region":
        return cls(RegionKind.BALL, r, tuple(as_array(alpha).tolist()))

    @classmethod
    def carleson_box(cls, theta0: float, r: float, axis=I_AXIS) -> "Region":
        return cls(RegionKind.CARLESON_BOX, r, theta0=theta0, axis=tuple(np.asarray(axis, float).tolist()))

    @classmethod
    def symmetric_box(cls, theta0: float, r: float) -> "Region":
        return cls(RegionKind.SYMMETRIC_BOX, r, theta0=theta0)

    @property
    def alpha(self) -> np.ndarray:
        return np.asarray(self.center, dtype=float)

    @property
    def axis_array(self) -> np.ndarray:
        return np.asarray(self.axis if self.axis is not None else I_AXIS, dtype=float)

    def slice_center(self) -> complex:
        """Complex picture of the centre with non-negative imaginary part."""
        re, im, _, _ = split_axis(self.alpha)
        return complex(float(re), float(im))

    def contains(self, q) -> np.ndarray:
        q = as_array(q)
        kind = self.kind
        if kind in (RegionKind.TUBE, RegionKind.BALL, RegionKind.SLICE_DISC):
            inside_ball = qnorm(q) < 1.0
        if kind == RegionKind.BALL:
            return inside_ball & (rho(q, self.alpha) < self.radius)
        if kind == RegionKind.TUBE:
            x, y, _, _ = split_axis(q)
            z = x + 1j * y
            a = self.slice_center()
            return inside_ball & (np.abs(z - a) < self.radius * np.abs(1.0 - z * np.conj(a)))
        if kind == RegionKind.SLICE_DISC:
            axis = self.axis_array
            on = _in_slice(q, axis)
            z = q[..., 0] + 1j * (q[..., 1:] @ axis)
            a = complex(self.alpha[0], float(self.alpha[1:] @ axis))
            return inside_ball & on & (np.abs(z - a) < self.radius * np.abs(1.0 - z * np.conj(a)))

        n = qnorm(q)
        in_ring = (n >= self.radius) & (n < 1.0)
        if kind == RegionKind.CARLESON_BOX:
            axis = self.axis_array
            theta = np.arctan2(q[..., 1:] @ axis, q[..., 0])
            return in_ring & _in_slice(q, axis) & (_wrap(theta - self.theta0) <= 1.0 - self.radius + 1e-15)
        if kind == RegionKind.SYMMETRIC_BOX:
            phi = np.arccos(np.clip(q[..., 0] / np.where(n > 0, n, 1.0), -1.0, 1.0))
            gap = np.minimum.reduce([
                np.abs(phi - self.theta0),
                np.abs(phi + self.theta0 - 2.0 * np.pi),
                phi + self.theta0,
            ])
            return in_ring & (gap <= 1.0 - self.radius + 1e-15)
        raise ValueError(f"unknown region kind {kind}")

    def to_json(self) -> dict:
        data = {"kind": self.kind.value, "radius": self.radius}
        if self.center is not None:
            data["center"] = list(self.center)
        if self.kind in (RegionKind.CARLESON_BOX, RegionKind.SYMMETRIC_BOX):
            data["theta0"] = self.theta0
        if self.axis is not None:
            data["axis"] = list(self.axis)
        return data


def membership(region: Region, q) -> np.ndarray:
    return region.contains(q)


def arc_length(r: float) -> float:
    """|A_I(theta0, r)| = 2 (1 - r), the same for every theta0 and I."""
    return 2.0 * (1.0 - r)


# =============================================================================
# DISC GEOMETRY
# =============================================================================

@dataclass
class GeometrySummary:
    d: float
    scale: float
    euclidean_center: Quaternion
    euclidean_radius: float
    area: float
    eta_volume: Optional[float] = None
    eta_error: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "scale": self.scale,
            "euclidean_center": self.euclidean_center.to_json(),
            "euclidean_radius": self.euclidean_radius,
            "area": self.area,
            "eta_volume": self.eta_volume,
            "eta_error": self.eta_error,
        }


def disc_geometry(alpha, r: float) -> GeometrySummary:
    """Euclidean centre, radius and area of the slice disc of alpha."""
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    alpha = as_array(alpha)
    a2 = float(np.sum(alpha * alpha))
    if a2 >= 1.0:
        raise ValueError("alpha must lie in the open ball")
    denom = 1.0 - r * r * a2
    center = (1.0 - r * r) / denom * alpha
    radius = r * (1.0 - a2) / denom
    return GeometrySummary(
        d=1.0 - math.sqrt(a2),
        scale=math.sqrt(1.0 - a2),
        euclidean_center=Quaternion.from_array(center),
        euclidean_radius=radius,
        area=math.pi * radius * radius,
    )


def disc_area(alpha, r: float) -> float:
    return disc_geometry(alpha, r).area


def tube_slice_area(alpha, r: float) -> float:
    """
    Lebesgue area of the tube of alpha inside one slice through alpha.

    The tube meets C_I in the disc and its mirror image; the overlap is the
    lens of two equal circles at distance 2 Im q1.
    """
    g = disc_geometry(alpha, r)
    c = g.euclidean_center.to_array()
    h = float(np.linalg.norm(c[1:]))
    r1 = g.euclidean_radius
    dist = 2.0 * h
    if dist >= 2.0 * r1:
        lens = 0.0
    else:
        lens = 2.0 * r1 * r1 * math.acos(dist / (2.0 * r1)) - 0.5 * dist * math.sqrt(4.0 * r1 * r1 - dist * dist)
    return 2.0 * g.area - lens


def lebesgue_bound(alpha, r: float) -> float:
    """Euclidean radius bound r (1 - |alpha|^2) / (1 - r |alpha|) of the slice disc about alpha."""
    n = float(qnorm(alpha))
    return r * (1.0 - n * n) / (1.0 - r * n)


def disc_area_mc(alpha, r: float, n: int = 1_000_000, seed: int = 0) -> Tuple[float, float]:
    """Rejection estimate of the slice-disc area inside the square of half-side ``lebesgue_bound``."""
    alpha = as_array(alpha)
    re, im, _, _ = split_axis(alpha)
    half = lebesgue_bound(alpha, r)
    rng = np.random.default_rng(seed)
    pts = (re + 1j * im) + half * ((2.0 * rng.random(n) - 1.0) + 1j * (2.0 * rng.random(n) - 1.0))
    a = complex(float(re), float(im))
    hit = (np.abs(pts) < 1.0) & (np.abs(pts - a) < r * np.abs(1.0 - pts * np.conj(a)))
    frac = hit.mean()
    box = 4.0 * half * half
    return float(frac * box), float(box * math.sqrt(frac * (1.0 - frac) / n))


def real_axis_distance(alpha) -> float:
    """rho between alpha and its real part, deciding the single-ball cover case."""
    alpha = as_array(alpha)
    return float(rho(np.array([alpha[0], 0.0, 0.0, 0.0]), alpha))


def is_real(alpha) -> bool:
    return bool(np.linalg.norm(as_array(alpha)[1:]) < TAU_REAL)
