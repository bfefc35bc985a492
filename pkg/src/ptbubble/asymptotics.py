"""Closed-form asymptotic predictions for the linear sweep: Weber constants, the
Gamma/tanh identity, the initial-state-independent amplitude ratio, and the
regime classification for broken-symmetry sweeps (delta_x != 0)."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NotApplicableError, OutOfRegimeError
from .model import ModelParams, SYMMETRY_TOL
from .specfun import complex_gamma

# Boundary of the asymptotic regime in the dimensionless combination alpha*t^2.
MIN_ALPHA_T_SQ = 10.0


@dataclass(frozen=True)
class RegimeLabel:
    label: str  # "ratio-diverges" | "no-equal-distribution"
    marginal: bool = False  # exactly on the |delta_y*delta_x/alpha| = 1/2 boundary


def gamma_tilde_sq(p: ModelParams) -> float:
    """(gamma^2 - delta_y^2)/alpha; negative when |delta_y| > gamma."""
    p.require_sweep()
    return (p.gamma**2 - p.delta_y**2) / p.alpha


def epsilon(p: ModelParams) -> complex:
    """[i(gamma^2 - delta_y^2 - delta_x^2) + 2 delta_x delta_y] / (4 alpha)."""
    p.require_sweep()
    return (1j * (p.gamma**2 - p.delta_y**2 - p.delta_x**2) + 2.0 * p.delta_x * p.delta_y) / (
        4.0 * p.alpha
    )


def weber_constants(p: ModelParams) -> tuple[complex, complex]:
    """Parabolic-cylinder constants a_{1,2}; always a2 - a1 = 1."""
    p.require_sweep()
    core = (
        1j * (p.gamma**2 - p.delta_x**2 - p.delta_y**2) + 2.0 * p.delta_x * p.gamma
    ) / (2.0 * p.alpha)
    return core - 0.5, core + 0.5


def tanh_identity(gt_sq: float) -> tuple[float, float]:
    """Both sides of (g/4)|Gamma(1/2+ig/4)|^2 / |Gamma(1+ig/4)|^2 = tanh(pi g/4),
    with g the squared reduced loss; returned as (lhs, rhs) for testing."""
    q = gt_sq / 4.0
    if q == 0.0:
        return 0.0, 0.0
    num = abs(complex_gamma(0.5 + 1j * q)) ** 2
    den = abs(complex_gamma(1.0 + 1j * q)) ** 2
    return q * num / den, math.tanh(math.pi * q)


def predicted_ratio(p: ModelParams) -> float:
    """Adiabatic-limit amplitude ratio |psi1/psi2| = |(gamma-delta_y)/(gamma+delta_y)|^(1/2).

    Requires the PT-symmetric family (delta_x = 0) with exceptional points
    present (gamma > |delta_y|); the probability ratio is the square.
    """
    if abs(p.delta_x) >= SYMMETRY_TOL:
        raise NotApplicableError("ratio formula holds only for delta_x = 0")
    if p.gamma <= abs(p.delta_y):
        raise NotApplicableError(
            "no exceptional points for gamma <= |delta_y|; the ratio limit presumes crossing them"
        )
    return math.sqrt(abs((p.gamma - p.delta_y) / (p.gamma + p.delta_y)))


def regime_classify_dx(p: ModelParams) -> RegimeLabel:
    """Large-time regime for delta_x != 0, from the threshold delta_y*delta_x/alpha = -1/2.

    Below -1/2 the component ratio diverges (|psi1/psi2|^2 ~ z^2); everywhere
    else no equal distribution arises. Exact boundary values classify with the
    inner regime and are flagged marginal.
    """
    if abs(p.delta_x) < SYMMETRY_TOL:
        raise NotApplicableError("use predicted_ratio for delta_x = 0")
    p.require_sweep()
    s = p.delta_y * p.delta_x / p.alpha
    marginal = abs(abs(s) - 0.5) == 0.0
    if s < -0.5:
        return RegimeLabel(label="ratio-diverges", marginal=False)
    return RegimeLabel(label="no-equal-distribution", marginal=marginal)


def asymptotic_amplitudes(
    p: ModelParams, init: tuple[complex, complex], t: float
) -> tuple[complex, complex]:
    """Leading-order (psi1, psi2) of the exact sweep solution at large alpha*t^2.

    Uses the zero-order terms of the Kummer expansion on the arg(x) = -pi/2 ray;
    valid for delta_x = 0. Raises OutOfRegimeError when alpha*t^2 < 10.
    """
    if abs(p.delta_x) >= SYMMETRY_TOL:
        raise NotApplicableError("leading-order forms derived only for delta_x = 0")
    p.require_sweep()
    if p.alpha * t * t < MIN_ALPHA_T_SQ:
        raise OutOfRegimeError(f"alpha*t^2 = {p.alpha * t * t:.3g} is below the asymptotic regime")
    a_init, b_init = complex(init[0]), complex(init[1])
    g = (p.gamma**2 - p.delta_y**2) / (4.0 * p.alpha)
    z = cmath.exp(-1j * math.pi / 4.0) * math.sqrt(2.0 * p.alpha) * t
    x = z * z / 2.0
    decay = cmath.exp(-z * z / 4.0)
    grow = cmath.exp(z * z / 4.0)
    pw_m = x ** (-1j * g)
    pw_p = x ** (1j * g)
    sqrt_pi = math.sqrt(math.pi)
    g32 = complex_gamma(1.5)
    y11 = decay * sqrt_pi * math.exp(math.pi * g) / complex_gamma(0.5 - 1j * g) * pw_m
    y12 = -1j * decay * math.sqrt(2.0) * g32 * math.exp(math.pi * g) / complex_gamma(1.0 - 1j * g) * pw_m
    y21 = grow * sqrt_pi / complex_gamma(0.5 + 1j * g) * pw_p
    y22 = grow * math.sqrt(2.0) * g32 / complex_gamma(1.0 + 1j * g) * pw_p
    pre = cmath.exp(1j * math.pi / 4.0) / math.sqrt(2.0 * p.alpha)
    psi1 = a_init * y11 + pre * (p.gamma - p.delta_y) * b_init * y12
    psi2 = b_init * y21 + pre * (p.gamma + p.delta_y) * a_init * y22
    return psi1, psi2
