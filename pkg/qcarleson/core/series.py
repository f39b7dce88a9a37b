"""
Slice regular functions as truncated power series with right coefficients.

A ``SliceSeries`` stores a0..aN as an (N+1, 4) array and evaluates
f(q) = sum q^n a_n by Horner's rule. The *-product is the coefficient
convolution, which is not the pointwise product unless the left factor has
real coefficients.
"""

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .constants import (
    DEFAULT_TRUNCATION,
    EVAL_MARGIN,
    INTRINSIC_TOL,
    ORTHOGONALITY_TOL,
    TAU_REAL,
)
from .quaternion import (
    Quaternion,
    as_array,
    embed,
    from_complex,
    qconj,
    qinv,
    qmul,
    qnorm,
    split_axis,
    uniform_ball,
)


class OutOfDisk(ValueError):
    """Evaluation point too close to the series' convergence radius."""


class NonInvertibleAtZero(ArithmeticError):
    """The series has no *-inverse because a0 vanishes."""


class AxesNotOrthogonal(ValueError):
    """Splitting axes I and J are not orthogonal."""


class BranchCut(ArithmeticError):
    """Non-integer power requested on the negative real axis."""


@dataclass(frozen=True, eq=False)
class SliceSeries:
    coeffs: np.ndarray
    radius: float = 1.0

    def __post_init__(self):
        coeffs = np.array([as_array(c) for c in self.coeffs], dtype=float).reshape(-1, 4)
        if len(coeffs) == 0:
            coeffs = np.zeros((1, 4))
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        if not 0.0 < self.radius <= 1.0:
            raise ValueError(f"radius must lie in (0, 1], got {self.radius}")

    @classmethod
    def constant(cls, c) -> "SliceSeries":
        return cls([as_array(c)])

    @classmethod
    def monomial(cls, n: int, a=1.0) -> "SliceSeries":
        coeffs = np.zeros((n + 1, 4))
        coeffs[n] = as_array(a)
        return cls(coeffs)

    @classmethod
    def real(cls, values: Sequence[float], radius: float = 1.0) -> "SliceSeries":
        coeffs = np.zeros((len(values), 4))
        coeffs[:, 0] = values
        return cls(coeffs, radius)

    @classmethod
    def from_json(cls, data: dict) -> "SliceSeries":
        return cls(np.asarray(data["coeffs"], dtype=float), float(data.get("radius", 1.0)))

    def to_json(self) -> dict:
        return {"coeffs": self.coeffs.tolist(), "radius": self.radius}

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_real(self) -> bool:
        """Real coefficients, i.e. the series is intrinsic."""
        return bool(np.all(np.abs(self.coeffs[:, 1:]) < TAU_REAL))

    def __call__(self, q) -> np.ndarray:
        return eval_series(self, q)


def eval_series(f: SliceSeries, q, margin: float = EVAL_MARGIN) -> np.ndarray:
    """Horner evaluation of sum q^n a_n on a (..., 4) array."""
    q = as_array(q)
    if np.any(qnorm(q) > margin * f.radius + 1e-15):
        raise OutOfDisk(f"|q| exceeds {margin} x radius {f.radius}")
    result = np.broadcast_to(f.coeffs[-1], q.shape).copy()
    for a in f.coeffs[-2::-1]:
        result = qmul(q, result) + a
    return result


def evaluate(f: SliceSeries, q: Quaternion) -> Quaternion:
    return Quaternion.from_array(eval_series(f, q))


def star_mul(f: SliceSeries, g: SliceSeries, n_max: int = DEFAULT_TRUNCATION) -> SliceSeries:
    """Convolution c_n = sum a_k b_{n-k}."""
    n = min(f.truncation + g.truncation, n_max)
    c = np.zeros((n + 1, 4))
    b = g.coeffs
    for k, a in enumerate(f.coeffs[: n + 1]):
        m = min(len(b), n + 1 - k)
        c[k:k + m] += qmul(a, b[:m])
    return SliceSeries(c, min(f.radius, g.radius))


def reg_conj(f: SliceSeries) -> SliceSeries:
    return SliceSeries(qconj(f.coeffs), f.radius)


def symmetrize(f: SliceSeries, n_max: int = DEFAULT_TRUNCATION) -> SliceSeries:
    return star_mul(f, reg_conj(f), n_max)


def _real_reciprocal(s: np.ndarray, n: int) -> np.ndarray:
    r = np.zeros(n + 1)
    r[0] = 1.0 / s[0]
    for k in range(1, n + 1):
        m = min(k, len(s) - 1)
        r[k] = -np.dot(s[1:m + 1], r[k - 1::-1][:m]) / s[0]
    return r


def star_inv(f: SliceSeries, n_max: int = DEFAULT_TRUNCATION) -> SliceSeries:
    """f^{-*} = (f^s)^{-1} f^c, through the scalar reciprocal of f^s."""
    if qnorm(f.coeffs[0]) < TAU_REAL:
        raise NonInvertibleAtZero("a0 vanishes")
    s = symmetrize(f, n_max).coeffs[:, 0]
    recip = SliceSeries.real(_real_reciprocal(s, n_max), f.radius)
    return star_mul(recip, reg_conj(f), n_max)


def compose_intrinsic(f: SliceSeries, g: SliceSeries, n_max: int = DEFAULT_TRUNCATION) -> SliceSeries:
    """f o g for real-coefficient g with g(0) = 0, by series substitution."""
    if not g.is_real:
        raise ValueError("inner series must have real coefficients")
    if abs(g.coeffs[0, 0]) > TAU_REAL:
        raise ValueError("inner series must vanish at 0")
    gr = g.coeffs[:, 0]
    out = np.zeros((n_max + 1, 4))
    power = np.zeros(n_max + 1)
    power[0] = 1.0
    for a in f.coeffs:
        out += power[:, None] * a
        power = np.convolve(power, gr)[: n_max + 1]
        if not np.any(power):
            break
    last = np.max(np.nonzero(np.any(out != 0.0, axis=1))[0], initial=0)
    return SliceSeries(out[: last + 1], min(f.radius, g.radius))


def star_eval(f: SliceSeries, g: SliceSeries, q) -> np.ndarray:
    """(f*g)(q) = f(q) g(f(q)^{-1} q f(q)) where f(q) != 0."""
    q = as_array(q)
    fq = eval_series(f, q)
    moved = qmul(qmul(qinv(fq), q), fq)
    return qmul(fq, eval_series(g, moved))


# =============================================================================
# SPLITTING
# =============================================================================

@dataclass(frozen=True, eq=False)
class SplitPair:
    """f restricted to C_I written as F(z) + G(z) J."""

    F: np.ndarray
    G: np.ndarray
    I: np.ndarray
    J: np.ndarray

    def evaluate(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        f_val = np.polynomial.polynomial.polyval(z, self.F)
        g_val = np.polynomial.polynomial.polyval(z, self.G)
        j4 = np.concatenate([[0.0], self.J])
        return from_complex(f_val, self.I) + qmul(from_complex(g_val, self.I), j4)


def split(f: SliceSeries, I, J) -> SplitPair:
    I = np.asarray(I, dtype=float).reshape(-1)[-3:]
    J = np.asarray(J, dtype=float).reshape(-1)[-3:]
    if abs(float(I @ J)) >= ORTHOGONALITY_TOL:
        raise AxesNotOrthogonal(f"I.J = {float(I @ J):.3e}")
    K = np.cross(I, J)
    vec = f.coeffs[:, 1:]
    F = f.coeffs[:, 0] + 1j * (vec @ I)
    G = (vec @ J) + 1j * (vec @ K)
    return SplitPair(F, G, I, J)


# =============================================================================
# EXTENSION AND POWERS
# =============================================================================

def ext_from_slice(values: Callable[[np.ndarray], np.ndarray], J) -> Callable[[np.ndarray], np.ndarray]:
    """
    Regular extension of a function known on the slice C_J.

    ``values`` maps (..., 4) points of C_J to quaternions.
    """
    J = np.asarray(J, dtype=float).reshape(-1)[-3:]
    J4 = np.concatenate([[0.0], J])

    def extension(q) -> np.ndarray:
        q = as_array(q)
        x, y, axis, _ = split_axis(q)
        plus = np.asarray(values(embed(x, y, J)), dtype=float)
        minus = np.asarray(values(embed(x, -y, J)), dtype=float)
        I4 = np.concatenate([np.zeros(axis.shape[:-1] + (1,)), axis], axis=-1)
        return 0.5 * (plus + minus) + 0.5 * qmul(I4, qmul(J4, minus - plus))

    return extension


def power(q, nu: float) -> np.ndarray:
    """Slice-wise principal power q^nu."""
    q = as_array(q)
    re, im, axis, real_mask = split_axis(q)
    integer = float(nu).is_integer()
    if not integer and np.any(real_mask & (re < 0.0)):
        raise BranchCut(f"q^{nu} is not defined on the negative real axis")
    z = re + 1j * im
    if integer:
        w = z ** int(nu)
    else:
        w = np.where(z == 0, 0.0, z ** nu)
    return from_complex(w, axis)


class IntrinsicCheck(NamedTuple):
    intrinsic: bool
    defect: float
    witness: Optional[Quaternion]


def is_intrinsic(
    f: Callable[[np.ndarray], np.ndarray],
    samples: int = 1000,
    seed: int = 0,
    tol: float = INTRINSIC_TOL,
    max_norm: float = 0.9,
) -> IntrinsicCheck:
    """max |f(conj q) - conj f(q)| over samples in the ball."""
    q = uniform_ball(np.random.default_rng(seed), samples, max_norm)
    defect = qnorm(f(qconj(q)) - qconj(f(q)))
    k = int(np.argmax(defect))
    worst = float(defect[k])
    witness = Quaternion.from_array(q[k]) if worst >= tol else None
    return IntrinsicCheck(worst < tol, worst, witness)
