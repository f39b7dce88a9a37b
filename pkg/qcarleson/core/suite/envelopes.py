"""
Empirical constants of the geometry bounds.

Every constant is reported as a min/max envelope over a scan grid of centres;
nothing here asserts a particular value.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..constants import DEFAULT_SEED
from ..covering import cover_tube, disc_lattice
from ..geometry import boundary_scale, disc_area
from ..quaternion import I_AXIS, embed
from ..volumes import ball_volume, distance_sandwich_check
from ...utils.logging import log_operation

CONSTANT_NAMES = ("C1", "c2", "C2", "c3", "C3", "c5", "C5", "n0")
ENVELOPE_MODULI = (0.0, 0.3, 0.6, 0.8, 0.9, 0.95)
ENVELOPE_ANGLES = (0.0, 0.25 * math.pi, 0.5 * math.pi)


@dataclass
class ConstantRow:
    constant: str
    alpha: Tuple[float, float, float, float]
    r: float
    value: float

    def to_json(self) -> dict:
        return {"constant": self.constant, "alpha": list(self.alpha), "r": self.r, "value": self.value}


@dataclass
class ConstantsTable:
    r: float
    seed: int
    rows: List[ConstantRow] = field(default_factory=list)

    def add(self, constant: str, alpha, value: float) -> None:
        self.rows.append(ConstantRow(constant, tuple(float(a) for a in alpha), self.r, float(value)))

    def values(self, constant: str) -> np.ndarray:
        return np.array([row.value for row in self.rows if row.constant == constant])

    @property
    def envelopes(self) -> Dict[str, Tuple[float, float]]:
        """(min, max) of each constant over the grid."""
        out = {}
        for name in CONSTANT_NAMES:
            v = self.values(name)
            if len(v):
                out[name] = (float(v.min()), float(v.max()))
        return out

    def estimate(self, constant: str) -> float:
        """Lower constants take the grid minimum, upper ones the maximum."""
        lo, hi = self.envelopes[constant]
        return lo if constant.startswith("c") else hi

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "seed": self.seed,
            "envelopes": {k: {"min": lo, "max": hi} for k, (lo, hi) in self.envelopes.items()},
            "rows": [row.to_json() for row in self.rows],
        }


def envelope_centers(moduli: Sequence[float] = ENVELOPE_MODULI,
                     angles: Sequence[float] = ENVELOPE_ANGLES, axis=I_AXIS) -> np.ndarray:
    pts = [embed(m * math.cos(t), m * math.sin(t), np.asarray(axis, dtype=float)) for m in moduli for t in angles]
    _, idx = np.unique(np.round(pts, 12) + 0.0, axis=0, return_index=True)
    return np.asarray(pts)[np.sort(idx)]


@log_operation("Estimating constants")
def estimate_constants(
    r: float = 0.5,
    seed: int = DEFAULT_SEED,
    samples: int = 100_000,
    moduli: Sequence[float] = ENVELOPE_MODULI,
    angles: Sequence[float] = ENVELOPE_ANGLES,
) -> ConstantsTable:
    """
    Scan the centre grid and collect the geometry constants at radius r.

    Args:
        r: Pseudohyperbolic radius in (0, 1)
        seed: Seed of the distance-sandwich sampler
        samples: Points sampled per centre for C1
        moduli: |alpha| values of the grid
        angles: Slice angles of the grid

    Returns:
        ConstantsTable with one row per (constant, centre)

    Raises:
        ValueError: If r is outside (0, 1)
    """
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    table = ConstantsTable(r, seed)
    children = np.random.SeedSequence(seed).generate_state(len(moduli) * len(angles))
    for k, alpha in enumerate(envelope_centers(moduli, angles)):
        delta = float(boundary_scale(alpha))
        sandwich = distance_sandwich_check(alpha, r, samples, int(children[k]))
        table.add("C1", alpha, sandwich.c1)

        area = disc_area(alpha, r) / delta ** 4
        table.add("c2", alpha, area)
        table.add("C2", alpha, area)

        volume = ball_volume(alpha, r) / delta ** 8
        table.add("c3", alpha, volume)
        table.add("C3", alpha, volume)

        count = len(cover_tube(alpha, r)) * delta ** 4
        table.add("c5", alpha, count)
        table.add("C5", alpha, count)

    n0 = disc_lattice(I_AXIS, r, 0.95).overlap(samples, seed)
    table.add("n0", np.zeros(4), n0)
    return table
