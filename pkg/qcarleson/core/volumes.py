"""
eta-volumes of tubes and pseudohyperbolic balls, with Monte Carlo oracles.

eta is Lebesgue measure on R^4 normalised so that eta(B) = 1. An axially
symmetric set whose upper-half slice picture is D+ has
eta = (8 / pi) int_{D+} y^2 dx dy; a ball additionally carries the cap
fraction of directions at each (x, y).
"""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy import stats

from .constants import DEFAULT_MC_SAMPLES, MC_CHUNK_SIZE, MIN_MC_SAMPLES
from .geometry import Region, direction_fraction, disc_geometry, rho
from .quadrature import disc_rule
from .quaternion import as_array, embed, qnorm, split_axis, uniform_ball, uniform_sphere, sphere_sample

ETA_FACTOR = 8.0 / math.pi


@dataclass
class VolumeEstimate:
    value: float
    sigma: float
    samples: int

    def to_json(self) -> dict:
        return {"value": self.value, "sigma": self.sigma, "samples": self.samples}


def tube_slice_disc(alpha, r: float) -> Tuple[complex, float]:
    """Centre (Im >= 0) and radius of the slice disc in the complex picture of alpha."""
    g = disc_geometry(alpha, r)
    re, im, _, _ = split_axis(g.euclidean_center.to_array())
    return complex(float(re), float(im)), g.euclidean_radius


def tube_rule(alpha, r: float, n_r: int = 48, n_theta: int = 192):
    """Quadrature nodes (x, y) and eta weights over the upper-half picture of the tube."""
    c, radius = tube_slice_disc(alpha, r)
    z, w = disc_rule(c, radius, n_r, n_theta, clip_upper=True)
    y = np.clip(z.imag, 0.0, None)
    return z.real, y, ETA_FACTOR * w * y * y


def tube_volume(alpha, r: float, n_r: int = 48, n_theta: int = 192) -> float:
    """eta(Delta(alpha, r)) by 2-D quadrature."""
    _, _, w = tube_rule(alpha, r, n_r, n_theta)
    return float(w.sum())


def ball_volume(alpha, r: float, n_r: int = 96, n_theta: int = 384) -> float:
    """eta(B(alpha, r)): tube quadrature weighted by the exact cap fraction."""
    x, y, w = tube_rule(alpha, r, n_r, n_theta)
    return float(np.sum(w * direction_fraction(x, y, as_array(alpha), r)))


def _chunks(n: int, chunk: int) -> List[int]:
    sizes = [chunk] * (n // chunk)
    if n % chunk:
        sizes.append(n % chunk)
    return sizes


def _streams(seed: int, n: int, chunk: int):
    sizes = _chunks(n, chunk)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    return [(np.random.default_rng(child), size) for child, size in zip(children, sizes)]


def sample_tube(alpha, r: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """n points uniform (for eta) in Delta(alpha, r)."""
    c, radius = tube_slice_disc(alpha, r)
    y_lo = max(0.0, c.imag - radius)
    y_hi = c.imag + radius
    out = []
    got = 0
    while got < n:
        m = max(2 * (n - got), 1024)
        x = c.real + radius * (2.0 * rng.random(m) - 1.0)
        y = y_lo + (y_hi - y_lo) * rng.random(m)
        keep = (np.abs(x + 1j * y - c) < radius) & (rng.random(m) * y_hi * y_hi < y * y)
        x, y = x[keep], y[keep]
        out.append(embed(x, y, uniform_sphere(rng, len(x))))
        got += len(x)
    return np.concatenate(out)[:n]


def ball_volume_mc(alpha, r: float, n: int = DEFAULT_MC_SAMPLES, seed: int = 0,
                   chunk: int = MC_CHUNK_SIZE) -> VolumeEstimate:
    """eta(B) as eta(Delta) times the hit fraction of tube samples."""
    if n < MIN_MC_SAMPLES:
        raise ValueError(f"ball_volume_mc needs at least {MIN_MC_SAMPLES} samples")
    alpha = as_array(alpha)
    hits = 0
    for rng, size in _streams(seed, n, chunk):
        hits += int(np.count_nonzero(rho(sample_tube(alpha, r, size, rng), alpha) < r))
    frac = hits / n
    vol = tube_volume(alpha, r)
    return VolumeEstimate(vol * frac, vol * math.sqrt(frac * (1.0 - frac) / n), n)


def tube_volume_mc(alpha, r: float, n: int = DEFAULT_MC_SAMPLES, seed: int = 0,
                   chunk: int = MC_CHUNK_SIZE) -> VolumeEstimate:
    """eta(Delta) by uniform sampling of the 4-ball of radius |q1| + r1 about 0."""
    alpha = as_array(alpha)
    g = disc_geometry(alpha, r)
    outer = min(1.0, g.euclidean_center.norm() + g.euclidean_radius)
    region = Region.tube(alpha, r)
    hits = 0
    for rng, size in _streams(seed, n, chunk):
        hits += int(np.count_nonzero(region.contains(uniform_ball(rng, size, outer))))
    frac = hits / n
    box = outer ** 4
    return VolumeEstimate(box * frac, box * math.sqrt(frac * (1.0 - frac) / n), n)


# =============================================================================
# SANDWICH AND ENVELOPE CHECKS
# =============================================================================

@dataclass
class SandwichReport:
    min_ratio: float
    max_ratio: float
    c1: float
    holds: bool


def distance_sandwich_check(alpha, r: float, n: int = 100_000, seed: int = 0) -> SandwichReport:
    """Extremes of (1 - |q|) / (1 - |alpha|) over sampled q in B(alpha, r)."""
    alpha = as_array(alpha)
    rng = np.random.default_rng(seed)
    q = sample_tube(alpha, r, n, rng)
    q = q[rho(q, alpha) < r]
    d = 1.0 - float(qnorm(alpha))
    ratio = (1.0 - qnorm(q)) / d
    lo, hi = float(ratio.min()), float(ratio.max())
    c1 = max(hi * (1.0 - r), (1.0 - r) / lo)
    return SandwichReport(lo, hi, c1, bool(lo > 0 and np.isfinite(c1)))


@dataclass
class EnvelopeCheck:
    measured: float
    bound: float

    @property
    def ratio(self) -> float:
        return self.measured / self.bound if self.bound else math.inf

    @property
    def holds(self) -> bool:
        return self.measured <= self.bound * (1.0 + 1e-9)

    def to_json(self) -> dict:
        return {"measured": self.measured, "bound": self.bound, "ratio": self.ratio, "holds": self.holds}


def sphere_section_check(alpha, r: float, n_dirs: int = 4096) -> EnvelopeCheck:
    """max |q - alpha|^2 over q in B(alpha, r) on the sphere [alpha] against delta^4 r / (1 - r)."""
    alpha = as_array(alpha)
    re, im, _, _ = split_axis(alpha)
    q = embed(np.full(n_dirs, re), np.full(n_dirs, im), sphere_sample(n_dirs))
    inside = rho(q, alpha) < r
    dist2 = np.sum((q[inside] - alpha) ** 2, axis=-1)
    a2 = float(np.sum(alpha * alpha))
    return EnvelopeCheck(float(dist2.max(initial=0.0)), (1.0 - a2) ** 2 * r / (1.0 - r))


def gamma_area_check(alpha, r: float) -> EnvelopeCheck:
    """Area of B(alpha, r) on the sphere through q1 against 2 pi delta^4 r (1+r) / (1-r^2)."""
    alpha = as_array(alpha)
    c, _ = tube_slice_disc(alpha, r)
    frac = float(direction_fraction(np.array(c.real), np.array(c.imag), alpha, r))
    a2 = float(np.sum(alpha * alpha))
    measured = 4.0 * math.pi * c.imag ** 2 * frac
    return EnvelopeCheck(measured, 2.0 * math.pi * (1.0 - a2) ** 2 * r * (1.0 + r) / (1.0 - r * r))


def ring_area_check(alpha, r: float) -> EnvelopeCheck:
    """
    Area of the sphere swept by the disc centre q1, against the closed form
    4 pi (1-r^2)^2 (1-delta^2) / (1 - r^2 (1-delta^2))^2 (measured/bound is an envelope).
    """
    alpha = as_array(alpha)
    c, _ = tube_slice_disc(alpha, r)
    a2 = float(np.sum(alpha * alpha))
    closed = 4.0 * math.pi * (1.0 - r * r) ** 2 * a2 / (1.0 - r * r * a2) ** 2
    return EnvelopeCheck(4.0 * math.pi * c.imag ** 2, closed)


@dataclass
class ExponentFit:
    exponent: float
    intercept: float
    r_value: float


def fit_exponent(scales: Sequence[float], values: Sequence[float]) -> ExponentFit:
    """Least-squares slope of log(values) against log(scales)."""
    fit = stats.linregress(np.log(np.asarray(scales, float)), np.log(np.asarray(values, float)))
    return ExponentFit(float(fit.slope), float(fit.intercept), float(fit.rvalue))
