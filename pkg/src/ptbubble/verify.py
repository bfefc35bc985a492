"""Self-check suites behind the `verify` CLI subcommand: special-function
identities, series/asymptotic consistency, and analytic-vs-numeric propagation."""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import specfun
from .asymptotics import tanh_identity
from .dynamics import TwoLevelState, analytic_solution, propagate
from .model import EtaSchedule, ModelParams


def _check(name: str, err: float, tol: float):
    return (name, err <= tol, f"err={err:.3e} tol={tol:.1e}")


def gamma_checks() -> list[tuple[str, bool, str]]:
    out = []
    out.append(_check("gamma(1/2) = sqrt(pi)", abs(specfun.complex_gamma(0.5) - math.sqrt(math.pi)), 1e-13))
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(50):
        z = complex(rng.uniform(-4, 6), rng.uniform(-5, 5))
        if abs(z.imag) < 0.1:
            z += 0.5j
        worst = max(worst, abs(specfun.complex_gamma(z).conjugate() - specfun.complex_gamma(z.conjugate())) / abs(specfun.complex_gamma(z)))
    out.append(_check("conj(Gamma(z)) = Gamma(conj(z))", worst, 1e-12))
    worst = 0.0
    for lam in (0.1, 0.5, 1.0, 3.0, 10.0):
        half = abs(specfun.complex_gamma(0.5 + 1j * lam)) ** 2
        worst = max(worst, abs(half - math.pi / math.cosh(math.pi * lam)) / half)
        one = abs(specfun.complex_gamma(1.0 + 1j * lam)) ** 2
        worst = max(worst, abs(one - math.pi * lam / math.sinh(math.pi * lam)) / one)
    out.append(_check("|Gamma(1/2+il)|^2, |Gamma(1+il)|^2 identities", worst, 1e-12))
    return out


def kummer_checks() -> list[tuple[str, bool, str]]:
    out = []
    worst = 0.0
    for mag in (1.0, 10.0, 40.0):
        x = -1j * mag
        val = specfun.kummer_m(1.0, 1.0, x)
        worst = max(worst, abs(val - cmath.exp(x)))
    out.append(_check("M(1,1,x) = exp(x) on arg(x) = -pi/2", worst, 1e-10))
    # series vs asymptotic in the overlap annulus
    worst = 0.0
    for mag in (31.0, 34.0, 38.0):
        x = -1j * mag
        a, b = 0.25 + 2.0j, 0.5
        rel = abs(specfun.kummer_m_series(a, b, x) - specfun.kummer_m_asymptotic(a, b, x)) / abs(
            specfun.kummer_m_series(a, b, x)
        )
        worst = max(worst, rel)
    # just past the switch radius the truncated expansion is good to ~1e-8
    out.append(_check("series/asymptotic overlap agreement", worst, 1e-8))
    # contiguous relation (b-a) M(a-1,b,x) + (2a-b+x) M(a,b,x) - a M(a+1,b,x) = 0
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(20):
        a = complex(rng.uniform(-1, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(0.3, 3), rng.uniform(-1, 1))
        x = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        lhs = (
            (b - a) * specfun.kummer_m_series(a - 1, b, x)
            + (2 * a - b + x) * specfun.kummer_m_series(a, b, x)
            - a * specfun.kummer_m_series(a + 1, b, x)
        )
        scale = max(abs(specfun.kummer_m_series(a, b, x)), 1.0)
        worst = max(worst, abs(lhs) / scale)
    out.append(_check("Kummer contiguous relation", worst, 1e-11))
    return out


def weber_checks() -> list[tuple[str, bool, str]]:
    # ODE residual y'' - (z^2/4 + a) y = 0 by central differences on the sweep ray
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(10):
        a = complex(rng.uniform(-1, 1), rng.uniform(-2, 2))
        mag = rng.uniform(0.5, 4.0)
        z = cmath.exp(-1j * math.pi / 4.0) * mag
        h = 1e-4 * cmath.exp(-1j * math.pi / 4.0)
        for parity in ("even", "odd"):
            y0 = specfun.weber_y(parity, a, z)
            ypp = (
                specfun.weber_y(parity, a, z + h) - 2.0 * y0 + specfun.weber_y(parity, a, z - h)
            ) / (h * h)
            resid = abs(ypp - (z * z / 4.0 + a) * y0)
            worst = max(worst, resid / max(abs(y0), 1e-6))
    return [_check("Weber ODE residual (finite differences)", worst, 1e-6)]


def tanh_checks() -> list[tuple[str, bool, str]]:
    worst = 0.0
    for gt_sq in (0.4, 2.0, 4.0, 12.0, 40.0):
        lhs, rhs = tanh_identity(gt_sq)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return [_check("Gamma-ratio tanh identity", worst, 1e-12)]


def analytic_vs_numeric_checks(n_cases: int = 5) -> list[tuple[str, bool, str]]:
    rng = np.random.default_rng(23)
    worst = 0.0
    for _ in range(n_cases):
        gamma = rng.uniform(0.05, 0.6)
        delta_y = rng.uniform(-1.0, 1.0) * gamma
        alpha = rng.uniform(0.05, 0.5)
        a0 = complex(rng.normal(), rng.normal())
        b0 = complex(rng.normal(), rng.normal())
        p = ModelParams(gamma=gamma, delta_y=delta_y, alpha=alpha)
        t_grid = np.linspace(0.0, 10.0, 41)
        traj = propagate(p, EtaSchedule.linear(alpha), TwoLevelState(a0, b0, 0.0), t_grid)
        for i, t in enumerate(t_grid):
            exact = analytic_solution(p, (a0, b0), float(t)).as_array()
            worst = max(worst, float(np.linalg.norm(traj.psi[i] - exact) / np.linalg.norm(exact)))
    return [_check("analytic vs numeric propagation", worst, 1e-6)]


def run_all() -> list[tuple[str, bool, str]]:
    results = []
    results += gamma_checks()
    results += kummer_checks()
    results += weber_checks()
    results += tanh_checks()
    results += analytic_vs_numeric_checks()
    return results
