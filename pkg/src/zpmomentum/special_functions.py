"""Spherical Bessel functions of low order and the sphere form factor.

The vacuum-mode integrands only ever need j0, j1, j2 and the closed-form
Fourier transform of a uniform ball.  These are written out explicitly (with
small-argument series) rather than routed through the generic special-function
machinery: the integration engine evaluates them on millions of quadrature
nodes and the closed forms vectorize cleanly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["sph_bessel_j", "FormFactorArgs", "sphere_form_factor", "SERIES_CROSSOVER"]

# Below this |x| the closed forms lose digits to cancellation: j2 subtracts
# terms of size ~3/x^2 to produce a result of size x^2/15, so its relative
# error grows like 1/x^4 and already reaches ~1e-12 at x = 0.1.  Switching at
# 0.5 keeps the closed forms comfortably accurate, and the truncated series
# are converged to ~1e-16 relative over the whole series branch.
SERIES_CROSSOVER = 0.5


def _j0_series(x2: np.ndarray) -> np.ndarray:
    # sin(x)/x = sum_k (-1)^k x^(2k) / (2k+1)!
    out = np.ones_like(x2)
    term = np.ones_like(x2)
    for k in range(1, 9):
        term = term * (-x2) / ((2 * k) * (2 * k + 1))
        out = out + term
    return out


def _jn_series(n: int, x: np.ndarray, x2: np.ndarray) -> np.ndarray:
    # j_n(x) = x^n / (2n+1)!! * sum_k (-1)^k x^(2k) / (2^k k! prod_{j<=k}(2n+2j+1))
    dfact = 1.0
    for m in range(1, 2 * n + 2, 2):
        dfact *= m
    out = np.ones_like(x)
    term = np.ones_like(x)
    for k in range(1, 9):
        term = term * (-x2) / (2 * k * (2 * n + 2 * k + 1))
        out = out + term
    return (x**n / dfact) * out


def sph_bessel_j(n: int, x) -> np.ndarray | float:
    """Spherical Bessel function j_n for n in {0, 1, 2}; scalar or array input.

    Uses the trigonometric closed forms away from the origin and series
    expansions below SERIES_CROSSOVER so that values stay fully accurate down
    to x = 0 (j0(0) = 1, j1(0) = j2(0) = 0).
    """
    if n not in (0, 1, 2):
        raise ValueError(f"only orders 0, 1, 2 are supported, got n={n}")
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    ax = np.abs(x_arr)
    small = ax < SERIES_CROSSOVER
    out = np.empty_like(x_arr)

    xs = x_arr[small]
    if xs.size:
        x2 = xs * xs
        out[small] = _j0_series(x2) if n == 0 else _jn_series(n, xs, x2)

    xl = x_arr[~small]
    if xl.size:
        s, c = np.sin(xl), np.cos(xl)
        if n == 0:
            out[~small] = s / xl
        elif n == 1:
            out[~small] = s / (xl * xl) - c / xl
        else:
            out[~small] = (3.0 / (xl * xl) - 1.0) * s / xl - 3.0 * c / (xl * xl)

    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class FormFactorArgs:
    """Arguments of the uniform-ball form factor: momentum q >= 0, radius a > 0."""

    q: float
    a: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.q) and self.q >= 0):
            raise ValueError(f"q must be >= 0, got {self.q!r}")
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError(f"a must be > 0, got {self.a!r}")


def sphere_form_factor(args: FormFactorArgs) -> float:
    """Fourier transform of the indicator of a ball of radius a.

    theta(q) = 4 pi (sin(qa) - qa cos(qa)) / q^3, with the q -> 0 limit equal
    to the ball volume 4 pi a^3 / 3.  Equivalently 4 pi a^3 j1(qa)/(qa).
    """
    q, a = args.q, args.a
    z = q * a
    if z < SERIES_CROSSOVER:
        z2 = z * z
        # (sin z - z cos z) / z^3 * 3 expanded around z = 0
        series = 1.0 - z2 / 10.0 * (
            1.0 - z2 / 28.0 * (1.0 - z2 / 54.0 * (
                1.0 - z2 / 88.0 * (1.0 - z2 / 130.0 * (1.0 - z2 / 180.0))))
        )
        return 4.0 * math.pi * a**3 / 3.0 * series
    return 4.0 * math.pi * (math.sin(z) - z * math.cos(z)) / q**3
