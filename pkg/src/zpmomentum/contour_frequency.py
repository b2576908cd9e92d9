"""Frequency-axis contour integrals over products of resonant denominators.

The mode sums behind the momentum calculation reduce, frequency by frequency,
to integrals of the form

    int_0^inf  omega^p / ((omega^2 - k^2 + i eta)^2 (omega^2 - k'^2 + i eta)) domega

with p = 4 (two transverse propagators, one squared) or p = 2 (one
longitudinal factor).  Closing the contour gives compact closed forms; this
module provides those closed forms plus an independent numerical oracle that
evaluates the regulated integral at finite i-eta and extrapolates eta -> 0.

The oracle exists to cross-check the closed forms, so it deliberately shares
no algebra with them: it is plain adaptive quadrature on the real axis with
symmetric windows around each near-pole, evaluated in a shifted variable so
that u^2 - p^2 is computed without cancellation, followed by quadratic
Richardson extrapolation in the regulator.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

__all__ = [
    "KINDS",
    "FreqIntegralResult",
    "ConvergenceError",
    "freq_integral_transverse",
    "freq_integral_one_longitudinal",
    "freq_closed_form",
    "freq_oracle",
    "compare",
]

KINDS = ("transverse", "one_longitudinal")

_QUAD_OPTS = dict(epsabs=1e-14, epsrel=1e-12, limit=1000)
# The oracle's own error estimate (quadrature + extrapolation) must stay below
# this fraction of the result, else the evaluation is reported as failed.
ORACLE_REL_TOL = 1e-5


class ConvergenceError(RuntimeError):
    """Numerical evaluation did not reach the required accuracy."""


@dataclass(frozen=True)
class FreqIntegralResult:
    """Closed form vs regulated-numeric comparison for one (kind, k, kp) triple."""

    kind: str
    k: float
    kp: float
    closed_form: complex
    numeric: complex
    regulator_epsilon: float
    rel_error: float


def _validate(kind: str, k: float, kp: float) -> None:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if not (math.isfinite(k) and k > 0 and math.isfinite(kp) and kp > 0):
        raise ValueError(f"wavenumbers must be positive, got k={k!r}, kp={kp!r}")


def freq_integral_transverse(k: float, kp: float) -> complex:
    """Closed form of the omega^4 integral: -(i pi / 4) (k + 2 kp) / (k + kp)^2.

    Homogeneous of degree -1 in (k, kp) and purely imaginary.
    """
    _validate("transverse", k, kp)
    return -0.25j * math.pi * (k + 2.0 * kp) / (k + kp) ** 2


def freq_integral_one_longitudinal(k: float, kp: float) -> complex:
    """Closed form of the omega^2 integral: +(i pi / 4) / (k (k + kp)^2).

    Homogeneous of degree -3 in (k, kp) and purely imaginary.  The squared
    denominator carries k; the single denominator carries kp.
    """
    _validate("one_longitudinal", k, kp)
    return 0.25j * math.pi / (k * (k + kp) ** 2)


def freq_closed_form(kind: str, k: float, kp: float) -> complex:
    """Dispatch to the closed form for the given kind."""
    _validate(kind, k, kp)
    if kind == "transverse":
        return freq_integral_transverse(k, kp)
    return freq_integral_one_longitudinal(k, kp)


def _quad_cplx(func, lo, hi, pts=None) -> tuple[complex, float]:
    # The tolerances are deliberately tighter than double precision can always
    # deliver; roundoff warnings are expected and the residual error is checked
    # against the Richardson step downstream.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        vr, er = quad(lambda x: func(x).real, lo, hi, points=pts, **_QUAD_OPTS)
        vi, ei = quad(lambda x: func(x).imag, lo, hi, points=pts, **_QUAD_OPTS)
    return complex(vr, vi), er + ei


def _regulated_single(kind: str, k: float, kp: float, eps_scaled: float
                      ) -> tuple[complex, float]:
    """One regulated evaluation at fixed (rescaled) regulator strength.

    Works in the rescaled variable u = omega / min(k, kp), which keeps the
    pole locations O(1).  Near each pole p the integrand is evaluated in
    x = u - p with u^2 - p^2 = x (x + 2p); the product form avoids the
    catastrophic cancellation that u*u - p*p suffers in double precision
    when p is large.  Returns (value, accumulated error estimate).
    """
    pw = 4 if kind == "transverse" else 2
    s = min(k, kp)
    a, b = k / s, kp / s  # a carries the squared denominator
    e = eps_scaled
    prefac = s ** (pw - 5)
    degenerate = abs(a - b) < 1e-14 * max(a, b)

    def f(u):
        return u**pw / ((u * u - a * a + 1j * e) ** 2 * (u * u - b * b + 1j * e))

    def f_near(p, x):
        u = p + x
        dp = x * (x + 2.0 * p)
        if degenerate:
            return u**pw / (dp + 1j * e) ** 3
        if p == a:
            return u**pw / ((dp + 1j * e) ** 2 * (u * u - b * b + 1j * e))
        return u**pw / ((u * u - a * a + 1j * e) ** 2 * (dp + 1j * e))

    poles = [a] if degenerate else sorted((a, b))
    upper = 10.0 * (a + b) + 10.0
    total = 0j
    errtot = 0.0
    cursor = 0.0
    for idx, p in enumerate(poles):
        w = e / (2.0 * p)  # half-width at half-maximum of the regulated pole
        lo_gap = p - cursor
        hi_gap = ((poles[idx + 1] - p) / 2.0) if idx + 1 < len(poles) else upper - p
        half = min(1e4 * w, 0.9 * lo_gap, 0.9 * hi_gap)
        if half < 10.0 * w:
            # the symmetric window around this pole cannot clear its neighbour:
            # the poles are distinct but closer than the regulated width resolves
            gap = 2.0 * min(lo_gap, hi_gap)
            raise ConvergenceError(
                f"rescaled poles {poles} are separated by {gap:.3e}, closer "
                f"than the regulator epsilon={e:g} resolves; reduce epsilon "
                f"below ~{0.05 * gap * p:.1e} or pass exactly equal "
                "wavenumbers for the degenerate path")
        if p - half > cursor:
            v, err = _quad_cplx(f, cursor, p - half)
            total += v
            errtot += err
        # break hints at decade multiples of the pole width guide the adaptive
        # subdivision from the narrow core out to the window edge
        hints = sorted({sgn * w * 10.0**m for sgn in (-1, 1)
                        for m in range(0, 5) if w * 10.0**m < half} | {0.0})
        v, err = _quad_cplx(lambda x, pp=p: f_near(pp, x), -half, half, pts=hints)
        total += v
        errtot += err
        cursor = p + half
    v, err = _quad_cplx(f, cursor, upper)
    total += v
    errtot += err
    # decaying tail: integrand ~ u^(pw-6) out here
    vr, er = quad(lambda u: f(u).real, upper, np.inf, epsabs=1e-14, epsrel=1e-12,
                  limit=400)
    vi, ei = quad(lambda u: f(u).imag, upper, np.inf, epsabs=1e-14, epsrel=1e-12,
                  limit=400)
    total += complex(vr, vi)
    errtot += er + ei
    return prefac * total, abs(prefac) * errtot


def freq_oracle(kind: str, k: float, kp: float, epsilon: float = 1e-3) -> complex:
    """Regulated numerical evaluation, extrapolated to zero regulator.

    Evaluates at regulator strengths {epsilon, epsilon/2, epsilon/4} (in the
    rescaled integration variable) and removes the O(eps) and O(eps^2) tails by
    solving the 3x3 Vandermonde system.  Raises ConvergenceError when the
    combined quadrature error estimate exceeds ORACLE_REL_TOL of the result.

    Validated domain: wavenumber ratios up to ~100 (ValueError beyond), and
    either exactly equal wavenumbers or pole separations the regulator can
    resolve (ConvergenceError for distinct-but-closer pairs).
    """
    _validate(kind, k, kp)
    if not (0.0 < epsilon <= 0.1):
        raise ValueError(f"epsilon must lie in (0, 0.1], got {epsilon!r}")
    ratio = max(k, kp) / min(k, kp)
    if ratio > 101.0:
        raise ValueError(
            f"wavenumber ratio {ratio:.3g} is outside the oracle's validated "
            "range (up to ~100); the closed forms remain usable out there")
    schedule = (epsilon, epsilon / 2.0, epsilon / 4.0)
    values = []
    err_acc = 0.0
    for e in schedule:
        v, err = _regulated_single(kind, k, kp, e)
        values.append(v)
        err_acc += err
    basis = np.column_stack([np.asarray(schedule) ** p for p in (0, 1, 2)])
    re = np.linalg.solve(basis, [v.real for v in values])[0]
    im = np.linalg.solve(basis, [v.imag for v in values])[0]
    result = complex(re, im)
    scale = abs(result)
    if scale == 0.0 or err_acc / scale > ORACLE_REL_TOL:
        raise ConvergenceError(
            f"regulated quadrature for {kind} at (k={k}, kp={kp}) did not "
            f"converge: error estimate {err_acc:.2e} vs |value| {scale:.2e}"
        )
    return result


def compare(kind: str, k: float, kp: float, epsilon: float = 1e-3
            ) -> FreqIntegralResult:
    """Closed form and oracle side by side, with their relative deviation."""
    cf = freq_closed_form(kind, k, kp)
    num = freq_oracle(kind, k, kp, epsilon)
    rel = abs(num - cf) / abs(cf)
    return FreqIntegralResult(kind=kind, k=k, kp=kp, closed_form=cf,
                              numeric=num, regulator_epsilon=epsilon,
                              rel_error=rel)
