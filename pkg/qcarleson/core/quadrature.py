"""Gauss-Legendre building blocks for slice-disc and polar-box integrals."""

from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy import special

from .constants import RADIAL_PANELS

Rule = Tuple[np.ndarray, np.ndarray]


@lru_cache(maxsize=64)
def _legendre(n: int) -> Rule:
    x, w = special.roots_legendre(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(a: float, b: float, n: int) -> Rule:
    """Nodes and weights of the n-point rule on [a, b]."""
    x, w = _legendre(n)
    half = 0.5 * (b - a)
    return half * x + 0.5 * (a + b), half * w


def graded_radial_rule(n_total: int, panels: int = RADIAL_PANELS) -> Rule:
    """Composite rule on [0, 1] with panels [1 - 2^-k, 1 - 2^-(k+1)]."""
    per_panel = max(4, n_total // panels)
    edges = [0.0] + [1.0 - 2.0 ** -k for k in range(1, panels)] + [1.0]
    nodes, weights = zip(*(gauss_legendre(a, b, per_panel) for a, b in zip(edges[:-1], edges[1:])))
    return np.concatenate(nodes), np.concatenate(weights)


def disc_rule(center: complex, radius: float, n_r: int = 48, n_theta: int = 192,
              clip_upper: bool = False) -> Rule:
    """
    Points z and weights for the integral over the disc |z - center| < radius.

    With ``clip_upper`` only the part with Im z >= 0 is kept; the centre must
    then satisfy Im center >= 0. Polar coordinates about the centre, with the
    clipped arc integrated separately so each piece is smooth.
    """
    rt, wt = gauss_legendre(0.0, 1.0, n_r)
    h = center.imag
    pieces = []

    if not clip_upper or h >= radius:
        phi = 2.0 * np.pi * np.arange(n_theta) / n_theta
        pieces.append((phi, np.full(n_theta, 2.0 * np.pi / n_theta), np.full(n_theta, radius)))
    else:
        if h < 0:
            raise ValueError("clipped disc rule needs a centre in the closed upper half plane")
        lift = np.arcsin(h / radius)
        phi, wphi = gauss_legendre(-lift, np.pi + lift, n_theta)
        pieces.append((phi, wphi, np.full(n_theta, radius)))
        if h > 0:
            phi, wphi = gauss_legendre(np.pi + lift, 2.0 * np.pi - lift, n_theta)
            pieces.append((phi, wphi, -h / np.sin(phi)))

    points, weights = [], []
    for phi, wphi, reach in pieces:
        rho = reach[:, None] * rt[None, :]
        w = wphi[:, None] * reach[:, None] * wt[None, :] * rho
        points.append(center + rho * np.exp(1j * phi)[:, None])
        weights.append(w)
    return np.concatenate([p.ravel() for p in points]), np.concatenate([w.ravel() for w in weights])


def polar_box_rule(theta0: float, r: float, n_r: int = 24, n_theta: int = 48) -> Rule:
    """Points and area weights on {r <= |z| < 1, |arg z - theta0| <= 1 - r}."""
    rho, wr = gauss_legendre(r, 1.0, n_r)
    theta, wth = gauss_legendre(theta0 - (1.0 - r), theta0 + (1.0 - r), n_theta)
    z = rho[:, None] * np.exp(1j * theta)[None, :]
    w = (wr * rho)[:, None] * wth[None, :]
    return z.ravel(), w.ravel()


def unit_disc_rule(n_r: int = 64, n_theta: int = 256) -> Rule:
    """Graded polar rule on the unit disc."""
    rho, wr = graded_radial_rule(n_r)
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    z = rho[:, None] * np.exp(1j * theta)[None, :]
    w = (wr * rho)[:, None] * np.full(n_theta, 2.0 * np.pi / n_theta)[None, :]
    return z.ravel(), w.ravel()
