"""Covers and packings by pseudohyperbolic balls and the slice-disc lattice."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import boundary_scale, real_axis_distance, rho
from .quaternion import I_AXIS, as_array, embed, from_complex, split_axis, sphere_sample

_PAIR_BUDGET = 4_000_000


def covered(points: np.ndarray, centers: np.ndarray, radius: float) -> np.ndarray:
    """Mask of points lying in at least one ball B(center, radius)."""
    points = np.atleast_2d(points)
    centers = np.atleast_2d(centers)
    if radius >= 1.0:
        return np.ones(len(points), dtype=bool)
    mask = np.zeros(len(points), dtype=bool)
    step = max(1, _PAIR_BUDGET // len(centers))
    for i in range(0, len(points), step):
        block = points[i:i + step]
        mask[i:i + step] = np.any(rho(block[:, None, :], centers[None, :, :]) < radius, axis=1)
    return mask


def cover_count(alpha, r: float) -> int:
    """Number of centres the spherical net on [alpha] uses: ceil(16 b^2 (1-r) / (r delta^4))."""
    _, b, _, _ = split_axis(as_array(alpha))
    delta = float(boundary_scale(alpha))
    return max(1, math.ceil(16.0 * float(b) ** 2 * (1.0 - r) / (r * delta ** 4)))


def cover_tube(alpha, r: float) -> np.ndarray:
    """
    Ball centres on the sphere [alpha] whose 4r-balls cover Delta(alpha, r).

    When alpha is within r of the real axis a single ball at alpha suffices;
    otherwise the centres follow a Fibonacci net of cap radius
    sqrt(r delta^4 / (1 - r)).
    """
    alpha = as_array(alpha)
    if real_axis_distance(alpha) < r:
        return alpha[None, :].copy()
    re, im, axis, _ = split_axis(alpha)
    n = cover_count(alpha, r)
    dirs = sphere_sample(n, pole=axis)
    return embed(np.full(n, re), np.full(n, im), dirs)


def pack_tube(y: float, r: float, axis=I_AXIS, candidates: int = 4000) -> np.ndarray:
    """
    Greedy farthest-point packing of centres J y on the sphere [I y] with
    pairwise rho >= 2r. Deterministic: candidates come from ``sphere_sample``.
    """
    axis = np.asarray(axis, dtype=float)
    dirs = sphere_sample(candidates, pole=axis)
    cands = embed(np.zeros(candidates), np.full(candidates, y), dirs)
    chosen = [0]
    gap = rho(cands, cands[0])
    while True:
        k = int(np.argmax(gap))
        if gap[k] < 2.0 * r:
            break
        chosen.append(k)
        gap = np.minimum(gap, rho(cands, cands[k]))
    return cands[chosen]


def min_pairwise_rho(centers: np.ndarray) -> float:
    if len(centers) < 2:
        return math.inf
    d = rho(centers[:, None, :], centers[None, :, :])
    d[np.diag_indices(len(centers))] = np.inf
    return float(d.min())


@dataclass
class DiscLattice:
    """Centres of slice discs covering {|z| <= r_max} in C_axis."""

    axis: np.ndarray
    r: float
    r_max: float
    points: np.ndarray        # complex picture of the centres

    @property
    def centers(self) -> np.ndarray:
        return from_complex(self.points, self.axis)

    def __len__(self) -> int:
        return len(self.points)

    def _counts(self, z: np.ndarray, radius: float) -> np.ndarray:
        counts = np.zeros(len(z), dtype=int)
        step = max(1, _PAIR_BUDGET // len(self.points))
        a = self.points[None, :]
        for i in range(0, len(z), step):
            block = z[i:i + step, None]
            inside = np.abs(block - a) < radius * np.abs(1.0 - block * np.conj(a))
            counts[i:i + step] = inside.sum(axis=1)
        return counts

    def coverage(self, n: int = 100_000, seed: int = 0) -> float:
        """Fraction of uniform points of {|z| <= r_max} lying in some disc of radius r."""
        z = _uniform_disc(np.random.default_rng(seed), n, self.r_max)
        return float(np.mean(self._counts(z, self.r) > 0))

    def overlap(self, n: int = 100_000, seed: int = 0, radius: Optional[float] = None) -> int:
        """Empirical n0: most discs of radius R = (1 + r) / 2 sharing one point."""
        radius = 0.5 * (1.0 + self.r) if radius is None else radius
        z = np.concatenate([_uniform_disc(np.random.default_rng(seed), n, 1.0), self.points])
        return int(self._counts(z, radius).max())


def _uniform_disc(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    return radius * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def disc_lattice(axis, r: float, r_max: float) -> DiscLattice:
    """
    Rings at pseudohyperbolic step r/2, each ring holding enough points that
    neighbours sit within r/2 of each other.
    """
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    axis = np.asarray(axis, dtype=float).reshape(-1)[-3:]
    s = 0.5 * r
    points = [0j]
    t = 0.0
    ring = 0
    while t <= r_max:
        t = (t + s) / (1.0 + t * s)
        ring += 1
        m = max(3, math.ceil(2.0 * math.pi * t / (s * (1.0 - t * t))))
        offset = 0.5 * (ring % 2) * 2.0 * math.pi / m
        points.extend(t * np.exp(1j * (offset + 2.0 * math.pi * np.arange(m) / m)))
    return DiscLattice(axis, r, r_max, np.asarray(points, dtype=complex))
