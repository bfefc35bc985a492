"""Instantaneous eigenstructure: closed-form 2x2 eigensolve, biorthogonal pairs,
phase classification, exceptional-point location and spin expectations."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CoalescenceError, InvalidParameterError, NotApplicableError
from .model import ModelParams, build_hamiltonian, SYMMETRY_TOL

# Eigenvalue gaps below this fraction of ||H|| are treated as coalescent.
NEAR_EP_GAP = 1e-8

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues with unit-norm right and left eigenvectors of a 2x2 complex matrix.

    Ordering: state 1 has the smaller real part (smaller imaginary part on ties).
    ``condition`` is 1/min|l_k^dag r_k|; math.inf flags near-coalescence.
    """

    e1: complex
    e2: complex
    r1: np.ndarray
    r2: np.ndarray
    l1: np.ndarray
    l2: np.ndarray
    condition: float


@dataclass(frozen=True)
class BubbleReport:
    exists: bool
    eta_minus: float = math.nan
    eta_plus: float = math.nan

    @property
    def diameter(self) -> float:
        return self.eta_plus - self.eta_minus if self.exists else 0.0


def eigenvalues_2x2(h: np.ndarray) -> tuple[complex, complex]:
    """Closed-form eigenvalues, ordered by (real part, imaginary part)."""
    mean = (h[0, 0] + h[1, 1]) / 2.0
    det = h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
    d = cmath.sqrt(mean * mean - det)
    e1, e2 = mean - d, mean + d
    if (e1.real, e1.imag) > (e2.real, e2.imag):
        e1, e2 = e2, e1
    return e1, e2


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # Deterministic gauge: the largest-magnitude component is made real and
    # positive (the LAPACK convention), so superpositions built from these
    # vectors are reproducible across code paths.
    k = int(np.argmax(np.abs(v)))
    phase = v[k] / abs(v[k])
    return v / phase


def _right_vector(h: np.ndarray, e: complex) -> np.ndarray:
    # (h12, e - h11) and (e - h22, h21) both solve (H - e) v = 0; pick the
    # better-conditioned one.
    v_a = np.array([h[0, 1], e - h[0, 0]], dtype=complex)
    v_b = np.array([e - h[1, 1], h[1, 0]], dtype=complex)
    v = v_a if np.linalg.norm(v_a) >= np.linalg.norm(v_b) else v_b
    n = np.linalg.norm(v)
    if n == 0.0:  # scalar matrix: any vector works
        v = np.array([1.0, 0.0], dtype=complex) if e == h[0, 0] else np.array([0.0, 1.0], dtype=complex)
        n = 1.0
    return _fix_phase(v / n)


def _left_vector(h: np.ndarray, e: complex) -> np.ndarray:
    # Row vector w with w H = e w is (h21, e - h11) or (e - h22, h12);
    # the stored left eigenvector is l = conj(w)^T so that l^dag = w.
    w_a = np.array([h[1, 0], e - h[0, 0]], dtype=complex)
    w_b = np.array([e - h[1, 1], h[0, 1]], dtype=complex)
    w = w_a if np.linalg.norm(w_a) >= np.linalg.norm(w_b) else w_b
    n = np.linalg.norm(w)
    if n == 0.0:
        w = np.array([1.0, 0.0], dtype=complex) if e == h[0, 0] else np.array([0.0, 1.0], dtype=complex)
        n = 1.0
    return _fix_phase(np.conj(w) / n)


def eigensystem(h: np.ndarray) -> EigenSystem:
    """Eigen-decomposition with biorthogonal left/right pairs.

    Raises CoalescenceError (carrying the surviving eigenvector) for a defective
    matrix; a nearly defective one is returned with ``condition = inf``.
    """
    h = np.asarray(h, dtype=complex)
    if h.shape != (2, 2) or not np.all(np.isfinite(h)):
        raise InvalidParameterError("eigensystem needs a finite 2x2 matrix")
    scale = max(float(np.max(np.abs(h))), 1e-300)
    e1, e2 = eigenvalues_2x2(h)
    r1, r2 = _right_vector(h, e1), _right_vector(h, e2)
    l1, l2 = _left_vector(h, e1), _left_vector(h, e2)
    o1 = abs(np.vdot(l1, r1))
    o2 = abs(np.vdot(l2, r2))
    min_overlap = min(o1, o2)
    if min_overlap < 1e-12:
        raise CoalescenceError(
            f"defective matrix: eigenvalues coalesce at {e1}", eigenvector=r1
        )
    if abs(e1 - e2) < NEAR_EP_GAP * scale and min_overlap < 1e-3:
        condition = math.inf
    else:
        condition = 1.0 / min_overlap
    return EigenSystem(e1=e1, e2=e2, r1=r1, r2=r2, l1=l1, l2=l2, condition=condition)


def _require_pt(p: ModelParams) -> None:
    if abs(p.delta_x) >= SYMMETRY_TOL:
        raise NotApplicableError("operation defined only for delta_x = 0 (PT-symmetric family)")


def pt_phase(p: ModelParams, eta: float) -> str:
    """'real-spectrum' or 'broken', for the PT-symmetric family delta_x = 0."""
    _require_pt(p)
    h = build_hamiltonian(p, eta)
    e1, e2 = eigenvalues_2x2(h)
    tol_imag = 1e-10 * max(1.0, float(np.max(np.abs(h))))
    return "real-spectrum" if max(abs(e1.imag), abs(e2.imag)) < tol_imag else "broken"


def _broken_at(p: ModelParams, eta: float) -> bool:
    return pt_phase(p, eta) == "broken"


def find_bubble(p: ModelParams, xtol: float = 1e-12) -> BubbleReport:
    """Locate the pair of exceptional points bounding the broken-phase interval.

    Bisection on the real/broken indicator in eta; the bubble, when present, is
    centered at eta = 0 by the eta -> -eta symmetry of the squared spectrum.
    """
    _require_pt(p)
    if not _broken_at(p, 0.0):
        return BubbleReport(exists=False)
    # Find a real-spectrum bracket on each side by doubling.
    hi = max(1.0, 2.0 * (abs(p.gamma) + abs(p.delta_y)))
    while _broken_at(p, hi):
        hi *= 2.0
        if hi > 1e12:
            raise InvalidParameterError("no real-spectrum region found; parameters pathological")

    def bisect(lo_broken: float, hi_real: float) -> float:
        a, b = lo_broken, hi_real
        while abs(b - a) > xtol:
            mid = 0.5 * (a + b)
            if _broken_at(p, mid):
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    eta_plus = bisect(0.0, hi)
    eta_minus = bisect(0.0, -hi)
    return BubbleReport(exists=True, eta_minus=eta_minus, eta_plus=eta_plus)


def bubble_size_scan(p: ModelParams, gammas) -> list[tuple[float, float]]:
    """Bubble diameter for each loss strength in ``gammas`` (0 when absent)."""
    out = []
    for g in gammas:
        report = find_bubble(p.replace(gamma=float(g)))
        out.append((float(g), report.diameter))
    return out


def spin_expectations(sys: EigenSystem, which: int) -> tuple[complex, complex, complex]:
    """Expectations (<sx>, <sy>, <sz>) = r^dag s r in the chosen (unit-norm) eigenstate.

    Plain expectations in the right eigenvector, not the biorthogonal form:
    these are what vanish/turn on across the EP (sx outside, sz inside)."""
    if which not in (1, 2):
        raise InvalidParameterError("which must be 1 or 2")
    r = sys.r1 if which == 1 else sys.r2
    return tuple(complex(np.vdot(r, s @ r)) for s in (_SIGMA_X, _SIGMA_Y, _SIGMA_Z))


def spectrum_scan(p: ModelParams, etas) -> list[tuple[float, complex, complex]]:
    """(eta, e1, e2) along an eta grid, with branches tracked continuously."""
    rows = []
    prev = None
    for eta in etas:
        e1, e2 = eigenvalues_2x2(build_hamiltonian(p, float(eta)))
        if prev is not None:
            keep = abs(e1 - prev[0]) + abs(e2 - prev[1])
            swap = abs(e2 - prev[0]) + abs(e1 - prev[1])
            if swap < keep:
                e1, e2 = e2, e1
        prev = (e1, e2)
        rows.append((float(eta), e1, e2))
    return rows
