"""
Quaternion arithmetic on numpy arrays.

Quaternions are float arrays whose last axis holds (w, x, y, z). Every
routine broadcasts over leading axes, so a grid of points is just a
``(..., 4)`` array. Frozen dataclasses wrap single values for the public
API and JSON.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .constants import TAU_REAL

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
ONE = np.array([1.0, 0.0, 0.0, 0.0])
I_AXIS = np.array([1.0, 0.0, 0.0])


# =============================================================================
# ARRAY KERNELS
# =============================================================================

def as_array(q) -> np.ndarray:
    """Coerce a Quaternion, UnitImaginary, real number or (..., 4) array."""
    if isinstance(q, Quaternion):
        return q.to_array()
    if isinstance(q, UnitImaginary):
        return np.concatenate([[0.0], q.to_array()])
    arr = np.asarray(q, dtype=float)
    if arr.ndim == 0:
        return np.array([float(arr), 0.0, 0.0, 0.0])
    if arr.shape[-1] != 4:
        raise ValueError(f"quaternion arrays need a trailing axis of length 4, got {arr.shape}")
    return arr


def qmul(p, q) -> np.ndarray:
    """Hamilton product, broadcasting over leading axes."""
    p = as_array(p)
    q = as_array(q)
    w1, x1, y1, z1 = np.moveaxis(p, -1, 0)
    w2, x2, y2, z2 = np.moveaxis(q, -1, 0)
    return np.stack([
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    ], axis=-1)


def qconj(q) -> np.ndarray:
    return as_array(q) * np.array([1.0, -1.0, -1.0, -1.0])


def qnorm(q) -> np.ndarray:
    return np.linalg.norm(as_array(q), axis=-1)


def qinv(q) -> np.ndarray:
    q = as_array(q)
    return qconj(q) / np.sum(q * q, axis=-1, keepdims=True)


def split_axis(q, tau: float = TAU_REAL):
    """
    Decompose q = re + axis * im with im >= 0.

    Returns (re, im, axis, real_mask). At real points the axis defaults to i
    and im is set to 0.
    """
    q = as_array(q)
    re = q[..., 0]
    vec = q[..., 1:]
    im = np.linalg.norm(vec, axis=-1)
    real_mask = im < tau
    safe = np.where(real_mask, 1.0, im)[..., None]
    axis = np.where(real_mask[..., None], I_AXIS, vec / safe)
    return re, np.where(real_mask, 0.0, im), axis, real_mask


def embed(re, im, axis) -> np.ndarray:
    """re + axis * im as a quaternion array; im may be negative."""
    re = np.asarray(re, dtype=float)
    im = np.asarray(im, dtype=float)
    axis = np.asarray(axis, dtype=float)
    shape = np.broadcast_shapes(re.shape, im.shape, axis.shape[:-1])
    vec = np.broadcast_to(axis, shape + (3,)) * np.broadcast_to(im, shape)[..., None]
    return np.concatenate([np.broadcast_to(re, shape)[..., None], vec], axis=-1)


def from_complex(z, axis) -> np.ndarray:
    """Map complex numbers onto the slice C_axis."""
    z = np.asarray(z, dtype=complex)
    return embed(z.real, z.imag, axis)


def slice_apply(fn: Callable[[np.ndarray], np.ndarray], q) -> np.ndarray:
    """
    Evaluate an intrinsic function given by its complex restriction.

    q = x + I y is sent to z = x + iy, fn(z) = u + iv comes back as u + I v.
    """
    re, im, axis, _ = split_axis(q)
    w = np.asarray(fn(re + 1j * im), dtype=complex)
    return from_complex(w, axis)


def rotate_imaginary(u, v) -> np.ndarray:
    """Rotate pure imaginary vectors v (..., 3) by the unit quaternion u."""
    v4 = np.concatenate([np.zeros(np.shape(v)[:-1] + (1,)), v], axis=-1)
    return qmul(qmul(u, v4), qconj(u))[..., 1:]


def uniform_ball(rng: np.random.Generator, n: int, radius: float = 1.0) -> np.ndarray:
    """n points uniform in the 4-ball of the given radius."""
    g = rng.standard_normal((n, 4))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g * (radius * rng.random(n) ** 0.25)[:, None]


def uniform_sphere(rng: np.random.Generator, n: int) -> np.ndarray:
    """n unit imaginaries uniform on the 2-sphere."""
    g = rng.standard_normal((n, 3))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


# =============================================================================
# VALUE TYPES
# =============================================================================

@dataclass(frozen=True)
class Quaternion:
    """w + x i + y j + z k."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        w, x, y, z = (float(c) for c in np.asarray(arr, dtype=float).reshape(4))
        return cls(w, x, y, z)

    @classmethod
    def parse(cls, text: str) -> "Quaternion":
        """Parse the command-line form 'w,x,y,z' (a bare real is accepted)."""
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) == 1:
            return cls(float(parts[0]))
        if len(parts) != 4:
            raise ValueError(f"expected 'w,x,y,z', got '{text}'")
        return cls(*(float(p) for p in parts))

    @classmethod
    def from_json(cls, data: Sequence[float]) -> "Quaternion":
        return cls.from_array(data)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=float)

    def to_json(self) -> list:
        return [self.w, self.x, self.y, self.z]

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.sqrt(self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2)

    def __add__(self, other) -> "Quaternion":
        return Quaternion.from_array(self.to_array() + as_array(other))

    __radd__ = __add__

    def __sub__(self, other) -> "Quaternion":
        return Quaternion.from_array(self.to_array() - as_array(other))

    def __rsub__(self, other) -> "Quaternion":
        return Quaternion.from_array(as_array(other) - self.to_array())

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other) -> "Quaternion":
        return Quaternion.from_array(qmul(self.to_array(), as_array(other)))

    def __rmul__(self, other) -> "Quaternion":
        return Quaternion.from_array(qmul(as_array(other), self.to_array()))

    def __truediv__(self, scalar: float) -> "Quaternion":
        return Quaternion.from_array(self.to_array() / float(scalar))

    def __str__(self) -> str:
        return f"{self.w:+.6g}{self.x:+.6g}i{self.y:+.6g}j{self.z:+.6g}k"


@dataclass(frozen=True)
class UnitImaginary:
    """A point of the sphere of imaginary units."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)
        if abs(n - 1.0) > 1e-9:
            raise ValueError(f"imaginary unit must have norm 1, got {n}")

    @classmethod
    def from_array(cls, arr) -> "UnitImaginary":
        v = np.asarray(arr, dtype=float).reshape(-1)[-3:]
        v = v / np.linalg.norm(v)
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @classmethod
    def from_json(cls, data: Sequence[float]) -> "UnitImaginary":
        return cls.from_array(data)

    def to_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def to_json(self) -> list:
        return [self.x, self.y, self.z]

    def to_quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def __neg__(self) -> "UnitImaginary":
        return UnitImaginary(-self.x, -self.y, -self.z)


class _RealMarker:
    """Axis placeholder for points on the real axis."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "REAL"

    def to_json(self) -> str:
        return "REAL"


REAL = _RealMarker()


@dataclass(frozen=True)
class SlicePoint:
    """q = re + axis * im with im >= 0; axis is REAL exactly when im = 0."""

    re: float
    im: float
    axis: Union[UnitImaginary, _RealMarker]

    def embed(self) -> Quaternion:
        if self.axis is REAL:
            return Quaternion(self.re)
        return Quaternion.from_array(embed(self.re, self.im, self.axis.to_array()))

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


# =============================================================================
# SCALAR API
# =============================================================================

def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return Quaternion.from_array(qmul(as_array(p), as_array(q)))


def conj(q: Quaternion) -> Quaternion:
    return Quaternion.from_array(qconj(q))


def norm(q: Quaternion) -> float:
    return float(qnorm(q))


def axis_of(q: Quaternion, tau: float = TAU_REAL) -> SlicePoint:
    arr = as_array(q)
    vec = arr[1:]
    im = float(np.linalg.norm(vec))
    if im < tau:
        return SlicePoint(float(arr[0]), 0.0, REAL)
    return SlicePoint(float(arr[0]), im, UnitImaginary.from_array(vec / im))


def same_slice(a, b, tol: float = 1e-12) -> bool:
    """True when a and b lie in a common slice C_I."""
    va = as_array(a)[1:]
    vb = as_array(b)[1:]
    na, nb = np.linalg.norm(va), np.linalg.norm(vb)
    if na < TAU_REAL or nb < TAU_REAL:
        return True
    return bool(np.linalg.norm(np.cross(va, vb)) <= tol * max(1.0, na * nb))


# =============================================================================
# SPHERE SAMPLING
# =============================================================================

def _rotate_i_to(points: np.ndarray, pole: np.ndarray) -> np.ndarray:
    """Half-turn about the bisector of i and pole; sends i to pole."""
    pole = pole / np.linalg.norm(pole)
    h = I_AXIS + pole
    n = np.linalg.norm(h)
    if n < 1e-12:
        h = np.array([0.0, 1.0, 0.0])
    else:
        h = h / n
    return 2.0 * (points @ h)[:, None] * h - points


def sphere_sample(n: int, seed: int = 0, pole: Optional[Sequence[float]] = None) -> np.ndarray:
    """
    Deterministic quasi-uniform imaginary units as an (n, 3) array.

    Fibonacci layout on one hemisphere followed by the antipodes, so even n
    always comes in ±I pairs and n=2 gives {i, -i}. ``pole`` rotates the
    first point onto the given axis; a nonzero ``seed`` applies a seeded
    random rotation instead.
    """
    if n < 1:
        raise ValueError("sphere_sample needs n >= 1")
    half = (n + 1) // 2
    k = np.arange(half)
    x = 1.0 - k / half
    rho = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    phi = k * GOLDEN_ANGLE
    upper = np.stack([x, rho * np.cos(phi), rho * np.sin(phi)], axis=1)
    points = np.concatenate([upper, -upper])[:n]

    if pole is not None:
        points = _rotate_i_to(points, np.asarray(pole, dtype=float).reshape(-1)[-3:])
    elif seed:
        u = np.random.default_rng(seed).standard_normal(4)
        points = rotate_imaginary(u / np.linalg.norm(u), points)
    return points
