"""
Reproducing kernels of the Hardy and Bergman spaces and their sphere averages.

For w = u + I v the symmetric factor S_w(q) = 1 - 2uq + |w|^2 q^2 has real
coefficients, so it is evaluated slice-wise through ``slice_apply``.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .constants import DEFAULT_TRUNCATION
from .quaternion import (
    ONE,
    Quaternion,
    as_array,
    embed,
    qconj,
    qmul,
    qnorm,
    slice_apply,
    sphere_sample,
    split_axis,
    uniform_ball,
    uniform_sphere,
)
from .series import SliceSeries, power

KERNEL_KINDS = ("hardy_k", "bergman_h", "averaged_K", "averaged_H")
KERNEL_ALIASES = {"k": "hardy_k", "h": "bergman_h", "K": "averaged_K", "H": "averaged_H"}


def _parts(w):
    w = as_array(w)
    u = w[..., 0]
    n2 = np.sum(w * w, axis=-1)
    return w, u, n2


def symmetric_factor(q, w, exponent: int = 1) -> np.ndarray:
    """S_w(q)^exponent evaluated slice-wise."""
    _, u, n2 = _parts(w)
    return slice_apply(lambda z: (1.0 - 2.0 * u * z + n2 * z * z) ** exponent, q)


def hardy_kernel(q, w) -> np.ndarray:
    """k(q, w) = S_w(q)^{-1} (1 - q w)."""
    q = as_array(q)
    w, _, _ = _parts(w)
    return qmul(symmetric_factor(q, w, -1), ONE - qmul(q, w))


def bergman_kernel(q, w, form: str = "series") -> np.ndarray:
    """
    h_w(q) without the 1/pi factor.

    ``series`` is S_w(q)^{-2} (1 - 2qw + q^2 w^2) = sum (n+1) q^n conj(w)^n;
    ``printed`` is (1 - 2 conj(q) conj(w) + conj(q)^2 conj(w)^2) S_w(conj q)^{-2}.
    """
    q = as_array(q)
    w, _, _ = _parts(w)
    if form == "series":
        q2 = qmul(q, q)
        poly = ONE - 2.0 * qmul(q, w) + qmul(q2, qmul(w, w))
        return qmul(symmetric_factor(q, w, -2), poly)
    if form == "printed":
        qb, wb = qconj(q), qconj(w)
        poly = ONE - 2.0 * qmul(qb, wb) + qmul(qmul(qb, qb), qmul(wb, wb))
        return qmul(poly, symmetric_factor(qb, w, -2))
    raise ValueError(f"unknown Bergman kernel form '{form}'")


def averaged_K(q, w) -> np.ndarray:
    """(k(q, w) + k(q, conj w)) / 2 = S_w(q)^{-1} (1 - u q)."""
    _, u, n2 = _parts(w)
    return slice_apply(lambda z: (1.0 - u * z) / (1.0 - 2.0 * u * z + n2 * z * z), q)


def averaged_H(q, w) -> np.ndarray:
    """(h_w(q) + h_{conj w}(q)) / 2 = S_w(q)^{-2} (1 - 2uq + (u^2 - v^2) q^2)."""
    _, u, n2 = _parts(w)
    re_w2 = 2.0 * u * u - n2
    return slice_apply(
        lambda z: (1.0 - 2.0 * u * z + re_w2 * z * z) / (1.0 - 2.0 * u * z + n2 * z * z) ** 2,
        q,
    )


_BASE = {
    "hardy_k": hardy_kernel,
    "bergman_h": bergman_kernel,
    "averaged_K": averaged_K,
    "averaged_H": averaged_H,
}


@dataclass(frozen=True, eq=False)
class KernelSpec:
    """A closed-form kernel k, h, K or H at parameter w, raised to ``power``."""

    kind: str
    w: np.ndarray = field(default_factory=lambda: np.zeros(4))
    power: float = 1.0

    def __post_init__(self):
        kind = KERNEL_ALIASES.get(self.kind, self.kind)
        if kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel kind '{self.kind}'")
        w = as_array(self.w).astype(float).reshape(4)
        if qnorm(w) >= 1.0:
            raise ValueError("kernel parameter must satisfy |w| < 1")
        if self.power <= 0:
            raise ValueError("kernel power must be positive")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "w", w)

    @property
    def intrinsic(self) -> bool:
        return self.kind.startswith("averaged")

    def with_power(self, nu: float) -> "KernelSpec":
        return KernelSpec(self.kind, self.w, nu)

    def __call__(self, q) -> np.ndarray:
        value = _BASE[self.kind](q, self.w)
        if self.power != 1.0:
            value = power(value, self.power)
        return value

    def to_json(self) -> dict:
        return {"kind": self.kind, "w": self.w.tolist(), "power": self.power}


def kernel_series(w, kind: str = "hardy", truncation: int = DEFAULT_TRUNCATION) -> SliceSeries:
    """sum q^n conj(w)^n (Hardy) or sum (n+1) q^n conj(w)^n (Bergman)."""
    wb = qconj(as_array(w))
    coeffs = np.zeros((truncation + 1, 4))
    coeffs[0] = ONE
    for n in range(1, truncation + 1):
        coeffs[n] = qmul(coeffs[n - 1], wb)
    if kind == "bergman":
        coeffs *= np.arange(1, truncation + 2)[:, None]
    elif kind != "hardy":
        raise ValueError(f"unknown kernel series '{kind}'")
    return SliceSeries(coeffs)


def _q_grid(seed: int = 0, n: int = 200, max_norm: float = 0.9) -> np.ndarray:
    return uniform_ball(np.random.default_rng(seed), n, max_norm)


def sphere_average_check(kind: str, w, n_i: int, q_grid: Optional[np.ndarray] = None) -> float:
    """
    max over q of |mean_I kernel_{u+vI}(q) - averaged kernel(q)|.

    The sample of I is centred on the axis of w, so n_i=2 reproduces the
    two-point average exactly.
    """
    w = as_array(w)
    q = _q_grid() if q_grid is None else as_array(q_grid)
    re, im, axis, _ = split_axis(w)
    axes = sphere_sample(n_i, pole=axis)
    ws = embed(np.full(n_i, re), np.full(n_i, im), axes)
    if kind == "hardy":
        values = hardy_kernel(q[:, None, :], ws[None, :, :])
        closed = averaged_K(q, w)
    elif kind == "bergman":
        values = bergman_kernel(q[:, None, :], ws[None, :, :])
        closed = averaged_H(q, w)
    else:
        raise ValueError(f"unknown kernel family '{kind}'")
    return float(np.max(qnorm(values.mean(axis=1) - closed)))


def womega_defect(w, kind: str = "bergman", n: int = 64, seed: int = 0) -> float:
    """max |k_w + k_{conj w} - k_omega - k_{conj omega}| for omega on the sphere of w."""
    w = as_array(w)
    rng = np.random.default_rng(seed)
    re, im, _, _ = split_axis(w)
    omegas = embed(np.full(n, re), np.full(n, im), uniform_sphere(rng, n))
    kernel = bergman_kernel if kind == "bergman" else hardy_kernel
    q = _q_grid(seed + 1, 100)[:, None, :]
    lhs = kernel(q, w) + kernel(q, qconj(w))
    rhs = kernel(q, omegas[None]) + kernel(q, qconj(omegas)[None])
    return float(np.max(qnorm(lhs - rhs)))


def kernel_consistency(w, n_points: int = 200, seed: int = 0) -> Dict[str, float]:
    """Both Bergman forms against the truncated series on |q||w| <= 0.5."""
    w = as_array(w)
    radius = min(0.9, 0.5 / max(float(qnorm(w)), 1e-12))
    q = _q_grid(seed, n_points, radius)
    series = kernel_series(w, "bergman", 256)(q)
    return {
        "series_form": float(np.max(qnorm(bergman_kernel(q, w, "series") - series))),
        "printed_form": float(np.max(qnorm(bergman_kernel(q, w, "printed") - series))),
    }


def kernel_norm_squared(kind: str, w, space: str = "hardy", normalized: bool = False) -> float:
    """
    Exact squared norm of the intrinsic kernels K or H by Parseval.

    With w_c = u + iv the coefficients are Re(w_c^n) for K and
    (n+1) Re(w_c^n) for H.
    """
    kind = KERNEL_ALIASES.get(kind, kind)
    w = as_array(w)
    re, im, _, _ = split_axis(w)
    a = float(re * re + im * im)
    b = complex(float(re), float(im)) ** 2

    if space == "hardy":
        if kind == "averaged_K":
            value = 0.5 * (1.0 / (1.0 - a) + (1.0 / (1.0 - b)).real)
        elif kind == "averaged_H":
            value = 0.5 * ((1.0 + a) / (1.0 - a) ** 3 + ((1.0 + b) / (1.0 - b) ** 3).real)
        else:
            raise ValueError(f"no closed form for '{kind}'")
        return value if normalized else 2.0 * np.pi * value

    if space == "bergman":
        if kind == "averaged_K":
            def log_ratio(x):
                return 1.0 if abs(x) < 1e-15 else -np.log(1.0 - x) / x
            return 0.5 * np.pi * (log_ratio(a) + complex(log_ratio(b)).real)
        if kind == "averaged_H":
            return 0.5 * np.pi * (1.0 / (1.0 - a) ** 2 + (1.0 / (1.0 - b) ** 2).real)
        raise ValueError(f"no closed form for '{kind}'")

    raise ValueError(f"unknown space '{space}'")


@dataclass
class LowerBoundReport:
    min_scaled: float               # min of (1 - |w|^2)|K(q)| over the samples
    witness: Quaternion
    box_min_scaled: float           # the same minimum over the box S(w)
    literal_holds: bool


def kernel_lower_bound(w, samples: int = 100_000, seed: int = 0) -> LowerBoundReport:
    """How far (1 - |w|^2)|K(q)| gets below 1, globally and on the box of w."""
    w = as_array(w)
    scale = 1.0 - float(np.sum(w * w))
    rng = np.random.default_rng(seed)
    q = np.concatenate([uniform_ball(rng, samples), w[None]])
    scaled = scale * qnorm(averaged_K(q, w))
    k = int(np.argmin(scaled))

    re, im, axis, _ = split_axis(w)
    r = float(np.hypot(re, im))
    theta0 = float(np.arctan2(im, re))
    rho = r + (1.0 - r) * rng.random(samples)
    theta = theta0 + (1.0 - r) * (2.0 * rng.random(samples) - 1.0)
    box = embed(rho * np.cos(theta), rho * np.sin(theta), axis)
    box_scaled = scale * qnorm(averaged_K(box, w))

    return LowerBoundReport(
        min_scaled=float(scaled[k]),
        witness=Quaternion.from_array(q[k]),
        box_min_scaled=float(np.min(box_scaled)),
        literal_holds=bool(scaled[k] >= 1.0 - 1e-6),
    )
