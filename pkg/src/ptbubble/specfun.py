"""Complex special-function kernel: Gamma, Pochhammer, Kummer M, and Weber parity solutions.

Only what the swept two-level problem needs: the Kummer function M(a, b, x) with
complex parameters, evaluated by a convergent series below a switch radius and by
its large-|x| two-term expansion above it, plus the even/odd parabolic-cylinder
particular solutions built from M.
"""

from __future__ import annotations

import cmath
import math

import mpmath

from .errors import InvalidParameterError, PoleError, PrecisionLossError

# Series/asymptotic switch radius in |x|; the sweep dynamics probes x on the
# negative imaginary axis, where the series loses roughly 0.43*|x| digits to
# cancellation at double precision.
SWITCH_RADIUS = 30.0

# Default truncation orders for the large-|x| expansion.
DEFAULT_R = 12
DEFAULT_S = 12

_MAX_SERIES_TERMS = 2000

# Lanczos coefficients, g = 7, 9 terms (~15 significant digits on the half-plane
# Re(z) >= 1/2; reflection covers the rest).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_integer(z: complex, tol: float = 1e-14) -> bool:
    return abs(z.imag) <= tol and z.real <= 0.5 and abs(z.real - round(z.real)) <= tol


def complex_gamma(z: complex) -> complex:
    """Gamma function on the complex plane (Lanczos approximation with reflection).

    Satisfies conj(Gamma(z)) = Gamma(conj(z)). Raises PoleError at non-positive
    integers.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma pole at z = {z}")
    if z.real < 0.5:
        # Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * complex_gamma(1.0 - z))
    w = z - 1.0
    acc = _LANCZOS_C[0]
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        acc += c / (w + i)
    t = w + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (w + 0.5) * cmath.exp(-t) * acc


def reciprocal_gamma(z: complex) -> complex:
    """1/Gamma(z); entire, returns 0 at the poles of Gamma."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        return 0.0 + 0.0j
    return 1.0 / complex_gamma(z)


def pochhammer(f: complex, n: int) -> complex:
    """Rising factorial (f)_n = f (f+1) ... (f+n-1), with (f)_0 = 1."""
    if not isinstance(n, int) or n < 0:
        raise InvalidParameterError(f"pochhammer order must be a non-negative integer, got {n!r}")
    out = 1.0 + 0.0j
    f = complex(f)
    for k in range(n):
        out *= f + k
    return out


def _validate_kummer_b(b: complex) -> None:
    if _is_nonpositive_integer(complex(b)):
        raise InvalidParameterError(f"Kummer b = {b} is zero or a negative integer (series pole)")


def _series_digits_lost(x: complex) -> float:
    # The largest series term is ~ e^{|x|} / sqrt(2 pi |x|) while the sum is
    # ~ e^{Re x}; the difference is pure cancellation.
    return max(0.0, (abs(x) - x.real)) / math.log(10.0)


def kummer_m_series(a: complex, b: complex, x: complex, tol: float = 1e-14) -> complex:
    """M(a, b, x) by direct power series, summed until the relative tail is below tol.

    When cancellation would eat into the requested accuracy at double precision,
    the same loop is run in adaptive-precision arithmetic.
    """
    a, b, x = complex(a), complex(b), complex(x)
    _validate_kummer_b(b)
    lost = _series_digits_lost(x)
    if lost <= 2.0:
        term = 1.0 + 0.0j
        total = term
        for n in range(1, _MAX_SERIES_TERMS):
            term *= (a + n - 1) * x / ((b + n - 1) * n)
            total += term
            if n > abs(x) and abs(term) <= tol * abs(total):
                return total
        raise PrecisionLossError(f"Kummer series did not converge for x = {x}")
    dps = int(math.ceil(17 + lost + 5))
    with mpmath.workdps(dps):
        ma, mb, mx = mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(x)
        term = mpmath.mpc(1)
        total = term
        mtol = mpmath.mpf(10) ** (-(17 + 2))
        for n in range(1, _MAX_SERIES_TERMS):
            term *= (ma + n - 1) * mx / ((mb + n - 1) * n)
            total += term
            if n > abs(x) and abs(term) <= mtol * abs(total):
                return complex(total)
        raise PrecisionLossError(f"Kummer series did not converge for x = {x}")


def asymptotic_branch_sign(x: complex) -> int:
    """Expansion branch: -1 in the lower half-plane, +1 otherwise.

    This keeps exp(sign*i*pi*a) * x**(-a) equal to (-x)**(-a) on both sides of
    the negative real axis, which is what the expansion of the recessive sum
    requires; on the positive real axis the exp(x) term dominates and either
    sign works."""
    return -1 if complex(x).imag < 0 else +1


def kummer_m_asymptotic(
    a: complex,
    b: complex,
    x: complex,
    branch: int | None = None,
    r: int = DEFAULT_R,
    s: int = DEFAULT_S,
    rtol: float = 1e-8,
) -> complex:
    """M(a, b, x) from its large-|x| two-term expansion, truncated at orders r and s.

    The error is estimated from the first omitted term of each sum; if the
    estimate exceeds rtol relative to the result, PrecisionLossError is raised
    rather than returning a silently degraded value.
    """
    a, b, x = complex(a), complex(b), complex(x)
    _validate_kummer_b(b)
    if x == 0:
        raise InvalidParameterError("asymptotic expansion undefined at x = 0")
    sign = asymptotic_branch_sign(x) if branch is None else (1 if branch >= 0 else -1)

    def tail_sum(u: complex, v: complex, z: complex, nmax: int):
        # sum_{n<nmax} (u)_n (v)_n / n! * z^n; stops early at the smallest term
        # if the (divergent) tail starts growing. Returns (sum, |first omitted|).
        term = 1.0 + 0.0j
        total = term
        last = abs(term)
        err = 0.0
        for n in range(1, nmax + 1):
            term = term * (u + n - 1) * (v + n - 1) * z / n
            mag = abs(term)
            if n >= nmax or mag > last:
                err = mag
                break
            total += term
            last = mag
        return total, err

    sum1, err1 = tail_sum(a, 1 + a - b, -1.0 / x, r)
    sum2, err2 = tail_sum(b - a, 1 - a, 1.0 / x, s)

    pre1 = cmath.exp(sign * 1j * math.pi * a) * x ** (-a) * reciprocal_gamma(b - a)
    pre2 = cmath.exp(x) * x ** (a - b) * reciprocal_gamma(a)
    gb = complex_gamma(b)
    value = gb * (pre1 * sum1 + pre2 * sum2)
    estimate = abs(gb) * (abs(pre1) * err1 + abs(pre2) * err2)
    if estimate > rtol * max(abs(value), 1e-300):
        raise PrecisionLossError(
            f"asymptotic expansion reaches only ~{estimate / max(abs(value), 1e-300):.2e} "
            f"relative accuracy at x = {x} (requested {rtol:.1e})"
        )
    return value


def kummer_m(
    a: complex,
    b: complex,
    x: complex,
    switch_radius: float = SWITCH_RADIUS,
    r: int = DEFAULT_R,
    s: int = DEFAULT_S,
) -> complex:
    """M(a, b, x): series below the switch radius, asymptotic expansion above."""
    if abs(complex(x)) <= switch_radius:
        return kummer_m_series(a, b, x)
    return kummer_m_asymptotic(a, b, x, r=r, s=s)


def weber_y(
    parity: str,
    a_nu: complex,
    z: complex,
    switch_radius: float = SWITCH_RADIUS,
) -> complex:
    """Even/odd particular solutions of y'' - (z^2/4 + a_nu) y = 0.

    even: exp(-z^2/4) M(a_nu/2 + 1/4, 1/2, z^2/2), with y(0) = 1, y'(0) = 0
    odd:  z exp(-z^2/4) M(a_nu/2 + 3/4, 3/2, z^2/2), with y(0) = 0, y'(0) = 1
    """
    z = complex(z)
    x = z * z / 2.0
    if parity == "even":
        return cmath.exp(-z * z / 4.0) * kummer_m(a_nu / 2.0 + 0.25, 0.5, x, switch_radius)
    if parity == "odd":
        return z * cmath.exp(-z * z / 4.0) * kummer_m(a_nu / 2.0 + 0.75, 1.5, x, switch_radius)
    raise InvalidParameterError(f"parity must be 'even' or 'odd', got {parity!r}")
