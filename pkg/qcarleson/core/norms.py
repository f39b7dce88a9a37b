"""
Hardy and Bergman norms by quadrature, with the sup over sampled slices.

Hardy: per slice, sup over the radius limit of the circle integral of |f|^p
(trapezoid rule with node doubling). Bergman: per slice, graded radial
Gauss-Legendre times the same angular means.
"""

from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .constants import (
    ANGULAR_TOL,
    DEFAULT_N_I,
    DEFAULT_N_R,
    DEFAULT_N_THETA,
    DEFAULT_RADII,
    MAX_ANGULAR_NODES,
    MAX_RADIUS,
    STABILIZATION_TOL,
)
from .quadrature import graded_radial_rule
from .quaternion import UnitImaginary, from_complex, qnorm, sphere_sample

Function = Callable[[np.ndarray], np.ndarray]

_BATCH_POINTS = 1 << 20


class Divergent(ArithmeticError):
    """The radius sequence did not stabilise, or the integrals are not finite."""


@dataclass(frozen=True)
class NormGrid:
    n_i: int = DEFAULT_N_I
    n_theta: int = DEFAULT_N_THETA
    n_r: int = DEFAULT_N_R
    radii: Tuple[float, ...] = DEFAULT_RADII
    normalized: bool = False

    @classmethod
    def parse(cls, text: str, normalized: bool = False) -> "NormGrid":
        """'nI,nTheta,nR' as given on the command line."""
        parts = [int(p) for p in text.split(",")]
        if len(parts) != 3 or min(parts) < 1:
            raise ValueError(f"grid must be 'nI,nTheta,nR' with positive entries, got '{text}'")
        return cls(parts[0], parts[1], parts[2], normalized=normalized)


@dataclass
class NormEstimate:
    value: float
    p: float
    space: str
    grid: NormGrid
    sup_witness: UnitImaginary
    error: float = 0.0
    radius: Optional[float] = None
    slice_values: np.ndarray = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "p": self.p,
            "space": self.space,
            "grid": {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self.grid).items()},
            "sup_witness": self.sup_witness.to_json(),
            "error": self.error,
            "radius": self.radius,
        }


def circle_means(f: Function, p: float, axes: np.ndarray, radii: np.ndarray,
                 n_theta: int = DEFAULT_N_THETA) -> np.ndarray:
    """
    Mean of |f(r e^{I theta})|^p over theta, shape (n_axes, n_radii).

    The node count doubles (new midpoints only) until the largest relative
    change drops below ANGULAR_TOL or MAX_ANGULAR_NODES is reached.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    axes = np.atleast_2d(axes)

    def sample(theta):
        e = np.exp(1j * theta)
        r_step = max(1, min(len(radii), _BATCH_POINTS // len(theta)))
        a_step = max(1, _BATCH_POINTS // (r_step * len(theta)))
        out = np.empty((len(axes), len(radii)))
        for a0 in range(0, len(axes), a_step):
            for r0 in range(0, len(radii), r_step):
                z = radii[r0:r0 + r_step, None] * e[None, :]
                pts = from_complex(z[None], axes[a0:a0 + a_step, None, None, :])
                out[a0:a0 + a_step, r0:r0 + r_step] = (qnorm(f(pts)) ** p).mean(axis=-1)
        return out

    n = n_theta
    mean = sample(2.0 * np.pi * np.arange(n) / n)
    while 2 * n <= MAX_ANGULAR_NODES:
        mid = sample(2.0 * np.pi * (np.arange(n) + 0.5) / n)
        refined = 0.5 * (mean + mid)
        change = np.max(np.abs(refined - mean) / np.maximum(np.abs(refined), 1e-300))
        mean, n = refined, 2 * n
        if change < ANGULAR_TOL:
            break
    if not np.all(np.isfinite(mean)):
        raise Divergent("non-finite circle integral")
    return mean


def hardy_norm(f: Function, p: float, grid: NormGrid = NormGrid()) -> NormEstimate:
    """sup_I lim_{r -> 1} (int |f(r e^{I theta})|^p d theta)^{1/p}."""
    if p <= 0:
        raise ValueError("p must be positive")
    axes = sphere_sample(grid.n_i)
    scale = 1.0 if grid.normalized else 2.0 * np.pi
    radii = list(grid.radii)
    history = []
    k = 0
    while True:
        per_axis = scale * circle_means(f, p, axes, [radii[k]], grid.n_theta)[:, 0]
        history.append(per_axis)
        if k >= 1:
            last, prev = history[-1].max(), history[-2].max()
            if abs(last - prev) <= STABILIZATION_TOL * max(last, 1e-300):
                break
        if k == len(radii) - 1:
            nxt = 1.0 - (1.0 - radii[-1]) / 10.0
            if nxt > MAX_RADIUS + 1e-15:
                raise Divergent(f"no stabilisation up to r = {radii[-1]}")
            radii.append(nxt)
        k += 1

    per_axis = np.maximum(history[-1], history[-2])
    j = int(np.argmax(per_axis))
    value = float(per_axis[j]) ** (1.0 / p)
    low = float(min(history[-1].max(), history[-2].max())) ** (1.0 / p)
    return NormEstimate(
        value=value, p=p, space="hardy", grid=grid,
        sup_witness=UnitImaginary.from_array(axes[j]),
        error=value - low, radius=radii[k], slice_values=per_axis ** (1.0 / p),
    )


def bergman_norm(f: Function, p: float, grid: NormGrid = NormGrid()) -> NormEstimate:
    """sup_I (int_{B_I} |f|^p d lambda)^{1/p}."""
    if p <= 0:
        raise ValueError("p must be positive")
    axes = sphere_sample(grid.n_i)
    rho, wr = graded_radial_rule(grid.n_r)
    means = circle_means(f, p, axes, rho, grid.n_theta)
    per_axis = 2.0 * np.pi * (means * (wr * rho)[None, :]).sum(axis=1)
    if not np.all(np.isfinite(per_axis)):
        raise Divergent("non-finite Bergman integral")
    j = int(np.argmax(per_axis))
    values = per_axis ** (1.0 / p)
    return NormEstimate(
        value=float(values[j]), p=p, space="bergman", grid=grid,
        sup_witness=UnitImaginary.from_array(axes[j]), slice_values=values,
    )


def slice_norm_spread(f: Function, p: float, grid: NormGrid = NormGrid(), space: str = "hardy") -> float:
    """max/min of the per-slice norms."""
    estimate = hardy_norm(f, p, grid) if space == "hardy" else bergman_norm(f, p, grid)
    values = estimate.slice_values
    return float(values.max() / max(values.min(), 1e-300))
