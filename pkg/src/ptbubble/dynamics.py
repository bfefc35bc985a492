"""Time evolution of the swept two-level system.

Numerical propagation of i d/dt psi = H(eta(t)) psi with an embedded adaptive
Runge-Kutta 5(4) pair, the exact Weber/Kummer solution for the PT-symmetric
linear sweep, and the cyclic gap-closing-detection protocol with biorthogonal
projection coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    CoalescenceError,
    InvalidParameterError,
    MagnitudeError,
    NotApplicableError,
    StiffnessError,
)
from .model import EtaSchedule, ModelParams, build_hamiltonian, eval_schedule, SYMMETRY_TOL
from .spectra import EigenSystem, eigensystem, eigenvalues_2x2
from .specfun import weber_y

# Integrator tolerances; validated against the analytic solution.
RTOL = 1e-10
ATOL = 1e-12

# Amplitudes beyond this trip MagnitudeError (the raw evolution is non-unitary).
MAX_AMPLITUDE = 1e150

# Sample count used for figure-style cyclic trajectories.
DEFAULT_SAMPLES = 2001

# Eigenvector condition beyond which projection samples are masked as EP-adjacent.
MAX_CONDITION = 1e8


@dataclass(frozen=True)
class TwoLevelState:
    psi1: complex
    psi2: complex
    t: float

    def as_array(self) -> np.ndarray:
        return np.array([self.psi1, self.psi2], dtype=complex)


@dataclass(frozen=True)
class WeberSolution:
    """Constants a_{1,2} and superposition coefficients of the exact sweep solution."""

    a1: complex
    a2: complex
    c11: complex
    c12: complex
    c21: complex
    c22: complex


@dataclass(frozen=True)
class Trajectory:
    """Sampled evolution: amplitudes, schedule value, tracked spectra and
    projection coefficients. c1/c2 are NaN where ep_flag marks coalescence."""

    t: np.ndarray
    eta: np.ndarray
    psi: np.ndarray  # (n, 2) complex
    e1: np.ndarray
    e2: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    ep_flag: np.ndarray  # bool

    CSV_COLUMNS = (
        "t",
        "eta",
        "re_psi1",
        "im_psi1",
        "re_psi2",
        "im_psi2",
        "re_e1",
        "im_e1",
        "re_e2",
        "im_e2",
        "abs_c1_sq",
        "abs_c2_sq",
        "ep_flag",
    )

    def rows(self):
        for i in range(len(self.t)):
            yield (
                self.t[i],
                self.eta[i],
                self.psi[i, 0].real,
                self.psi[i, 0].imag,
                self.psi[i, 1].real,
                self.psi[i, 1].imag,
                self.e1[i].real,
                self.e1[i].imag,
                self.e2[i].real,
                self.e2[i].imag,
                abs(self.c1[i]) ** 2,
                abs(self.c2[i]) ** 2,
                int(self.ep_flag[i]),
            )

    def sample_index(self, t: float) -> int:
        return int(np.argmin(np.abs(self.t - t)))


def weber_solution(p: ModelParams, a_init: complex, b_init: complex) -> WeberSolution:
    """Constants and coefficients of the exact solution for the linear sweep
    (PT-symmetric family, delta_x = 0, initial state (A, B) at t = 0)."""
    if abs(p.delta_x) >= SYMMETRY_TOL:
        raise NotApplicableError("exact Weber solution is derived only for delta_x = 0")
    p.require_sweep()
    a1 = 1j * (p.gamma**2 - p.delta_y**2) / (2.0 * p.alpha) - 0.5
    a2 = a1 + 1.0
    pre = cmath.exp(1j * math.pi / 4.0) / math.sqrt(2.0 * p.alpha)
    return WeberSolution(
        a1=a1,
        a2=a2,
        c11=a_init,
        c12=pre * (p.gamma - p.delta_y) * b_init,
        c21=b_init,
        c22=pre * (p.gamma + p.delta_y) * a_init,
    )


def analytic_solution(p: ModelParams, init: tuple[complex, complex], t: float) -> TwoLevelState:
    """Exact state at time t for the linear sweep eta = alpha*t, delta_x = 0.

    Assembled from the even/odd parabolic-cylinder solutions with argument
    z = exp(-i pi/4) sqrt(2 alpha) t.
    """
    sol = weber_solution(p, complex(init[0]), complex(init[1]))
    z = cmath.exp(-1j * math.pi / 4.0) * math.sqrt(2.0 * p.alpha) * t
    psi1 = sol.c11 * weber_y("even", sol.a1, z) + sol.c12 * weber_y("odd", sol.a1, z)
    psi2 = sol.c21 * weber_y("even", sol.a2, z) + sol.c22 * weber_y("odd", sol.a2, z)
    return TwoLevelState(psi1=psi1, psi2=psi2, t=float(t))


def projection_coefficients(psi: np.ndarray, h: np.ndarray) -> tuple[complex, complex]:
    """C_k = (l_k^dag psi) / |l_k^dag r_k| with the biorthogonal pairs of h."""
    sys = eigensystem(h)
    return _projection_from_system(np.asarray(psi, dtype=complex), sys)


def _projection_from_system(psi: np.ndarray, sys: EigenSystem) -> tuple[complex, complex]:
    if not math.isfinite(sys.condition):
        raise CoalescenceError("projection undefined near coalescence", eigenvector=sys.r1)
    c1 = np.vdot(sys.l1, psi) / abs(np.vdot(sys.l1, sys.r1))
    c2 = np.vdot(sys.l2, psi) / abs(np.vdot(sys.l2, sys.r2))
    return complex(c1), complex(c2)


def _tracked_instantaneous(p: ModelParams, s: EtaSchedule, t_grid: np.ndarray, psi: np.ndarray):
    """Per-sample spectra and projections with branches tracked continuously."""
    n = len(t_grid)
    eta = np.array([eval_schedule(s, float(t)) for t in t_grid])
    e1 = np.empty(n, dtype=complex)
    e2 = np.empty(n, dtype=complex)
    c1 = np.full(n, np.nan, dtype=complex)
    c2 = np.full(n, np.nan, dtype=complex)
    ep = np.zeros(n, dtype=bool)
    prev = None
    for i in range(n):
        h = build_hamiltonian(p, eta[i])
        va, vb = eigenvalues_2x2(h)
        if prev is not None:
            if abs(vb - prev[0]) + abs(va - prev[1]) < abs(va - prev[0]) + abs(vb - prev[1]):
                va, vb = vb, va
        e1[i], e2[i] = va, vb
        prev = (va, vb)
        try:
            scale = max(1.0, float(np.max(np.abs(h))))
            if abs(va - vb) <= 1e-12 * scale:
                # exact degeneracy (defective or not): no preferred eigenbasis
                ep[i] = True
                continue
            sys = eigensystem(h)
            if sys.condition > MAX_CONDITION:
                # too close to a coalescence for the projections to mean anything
                ep[i] = True
                continue
            p1, p2 = _projection_from_system(psi[i], sys)
            # eigensystem orders by real part; realign with the tracked branches
            if abs(sys.e1 - va) <= abs(sys.e1 - vb):
                c1[i], c2[i] = p1, p2
            else:
                c1[i], c2[i] = p2, p1
        except CoalescenceError:
            ep[i] = True
    return eta, e1, e2, c1, c2, ep


def propagate(
    p: ModelParams,
    s: EtaSchedule,
    init: TwoLevelState,
    t_grid,
    rtol: float = RTOL,
    atol: float = ATOL,
) -> Trajectory:
    """Integrate i d/dt psi = H(eta(t)) psi over the given sample grid.

    Adaptive RK 5(4); samples are interpolated onto t_grid by the integrator's
    dense output. The evolution is non-unitary: no normalization is applied.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 2 or np.any(np.diff(t_grid) <= 0):
        raise InvalidParameterError("t_grid must be strictly increasing with >= 2 points")
    if abs(init.t - t_grid[0]) > 1e-12 * max(1.0, abs(t_grid[0])):
        raise InvalidParameterError("initial state must be given at t_grid[0]")
    y0 = init.as_array()
    if not np.all(np.isfinite(y0)) or np.all(y0 == 0):
        raise InvalidParameterError("initial amplitudes must be finite and not both zero")

    def rhs(t, y):
        return -1j * (build_hamiltonian(p, eval_schedule(s, t)) @ y)

    result = solve_ivp(
        rhs,
        (t_grid[0], t_grid[-1]),
        y0,
        method="RK45",
        t_eval=t_grid,
        rtol=rtol,
        atol=atol,
    )
    if not result.success:
        raise StiffnessError(f"integrator failed: {result.message}")
    psi = result.y.T.copy()
    if not np.all(np.isfinite(psi)) or np.max(np.abs(psi)) > MAX_AMPLITUDE:
        raise MagnitudeError(
            "amplitudes overflowed; consider the background-loss rescaling (loss_normalization)"
        )
    eta, e1, e2, c1, c2, ep = _tracked_instantaneous(p, s, t_grid, psi)
    return Trajectory(t=t_grid, eta=eta, psi=psi, e1=e1, e2=e2, c1=c1, c2=c2, ep_flag=ep)


def eigenbasis_initial_state(p: ModelParams, theta: float, phi: float, eta: float) -> np.ndarray:
    """cos(theta) r1 + e^{i phi} sin(theta) r2 from the instantaneous eigenbasis at eta."""
    sys = eigensystem(build_hamiltonian(p, eta))
    return math.cos(theta) * sys.r1 + cmath.exp(1j * phi) * math.sin(theta) * sys.r2


def cyclic_experiment(
    p: ModelParams,
    theta: float,
    phi: float,
    t_f: float,
    n_samples: int = DEFAULT_SAMPLES,
) -> Trajectory:
    """Out-and-back sweep from eta = -1 across the gap region and back.

    The initial state is the (theta, phi) superposition of the instantaneous
    eigenstates at t = 0; projections are recorded at every sample.
    """
    schedule = EtaSchedule.cyclic(t_f)
    psi0 = eigenbasis_initial_state(p, theta, phi, eta=-1.0)
    t_grid = np.linspace(0.0, 2.0 * t_f, n_samples)
    init = TwoLevelState(psi1=psi0[0], psi2=psi0[1], t=0.0)
    return propagate(p, schedule, init, t_grid)


def initial_state_scan(
    p: ModelParams,
    theta_grid,
    phi: float,
    t_f: float,
    n_samples: int = DEFAULT_SAMPLES,
) -> list[tuple[float, float, float]]:
    """For each theta: (theta, ||C2|-|C1|| at 2 t_f, |C2|/|C1| at t_f)."""
    out = []
    for theta in theta_grid:
        traj = cyclic_experiment(p, float(theta), phi, t_f, n_samples)
        i_end = len(traj.t) - 1
        i_mid = traj.sample_index(t_f)
        dc = abs(abs(traj.c2[i_end]) - abs(traj.c1[i_end]))
        c1_mid = abs(traj.c1[i_mid])
        ratio = abs(traj.c2[i_mid]) / c1_mid if c1_mid > 0 else math.inf
        out.append((float(theta), float(dc), float(ratio)))
    return out


def loss_normalization(traj: Trajectory, gamma: float) -> Trajectory:
    """Rescale amplitudes (and their projections) by exp(-gamma*t), modeling the
    background loss omitted from the raw model. gamma = 0 is the identity."""
    scale = np.exp(-gamma * traj.t)
    return Trajectory(
        t=traj.t,
        eta=traj.eta,
        psi=traj.psi * scale[:, None],
        e1=traj.e1,
        e2=traj.e2,
        c1=traj.c1 * scale,
        c2=traj.c2 * scale,
        ep_flag=traj.ep_flag,
    )
