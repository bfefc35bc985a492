"""Perturbative treatment of a dissipative term i*lambda*V_p on a Hermitian base:
vanishing first-order corrections under the antiunitary symmetry, second-order
gap shrinking, the skew-Hermitian degenerate block, and a heuristic predictor
for the window of complex spectra."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, NotApplicableError

_HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class PerturbationSetup:
    """Hermitian base h0 perturbed by +i*lam*v_p with Hermitian v_p, lam >= 0."""

    h0: np.ndarray
    v_p: np.ndarray
    lam: float

    def __post_init__(self):
        h0 = np.asarray(self.h0, dtype=complex)
        v_p = np.asarray(self.v_p, dtype=complex)
        for name, m in (("h0", h0), ("v_p", v_p)):
            if m.shape != (2, 2) or not np.all(np.isfinite(m)):
                raise InvalidParameterError(f"{name} must be a finite 2x2 matrix")
            scale = max(float(np.max(np.abs(m))), 1.0)
            if np.max(np.abs(m - m.conj().T)) > _HERMITIAN_TOL * scale:
                raise InvalidParameterError(f"{name} must be Hermitian")
        if not math.isfinite(self.lam) or self.lam < 0:
            raise InvalidParameterError("lam must be finite and >= 0")
        object.__setattr__(self, "h0", h0)
        object.__setattr__(self, "v_p", v_p)


@dataclass(frozen=True)
class CorrectionReport:
    e0: tuple[float, float]  # unperturbed (lower, upper)
    e1: tuple[complex, complex]  # first order
    e2: tuple[complex, complex]  # second order
    gap0: float


def hermitian_eigensystem_2x2(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigenvalues (ascending) and orthonormal eigenvectors (columns)."""
    a = float(h[0, 0].real)
    d = float(h[1, 1].real)
    b = complex(h[0, 1])
    mean = 0.5 * (a + d)
    radius = math.hypot(0.5 * (a - d), abs(b))
    evals = np.array([mean - radius, mean + radius])
    if abs(b) == 0.0:
        vecs = np.eye(2, dtype=complex) if a <= d else np.array([[0, 1], [1, 0]], dtype=complex)
        return evals, vecs
    vecs = np.empty((2, 2), dtype=complex)
    for k, e in enumerate(evals):
        v = np.array([b, e - a], dtype=complex)
        vecs[:, k] = v / np.linalg.norm(v)
    return evals, vecs


def perturbative_corrections(s: PerturbationSetup) -> CorrectionReport:
    """First- and second-order eigenvalue corrections from +i*lam*v_p.

    e1 = i*lam <k|V|k>; e2 = -lam^2 |<k|V|k'>|^2 / (E_k - E_k'). Requires a
    nondegenerate base; use degenerate_block otherwise.
    """
    evals, vecs = hermitian_eigensystem_2x2(s.h0)
    gap = float(evals[1] - evals[0])
    if gap < 1e-10:
        raise NotApplicableError("h0 is (near-)degenerate; use degenerate_block")
    v_lo = vecs[:, 0]
    v_hi = vecs[:, 1]
    cross = complex(np.vdot(v_lo, s.v_p @ v_hi))
    e1 = tuple(1j * s.lam * complex(np.vdot(v, s.v_p @ v)) for v in (v_lo, v_hi))
    e2_lo = -(s.lam**2) * abs(cross) ** 2 / (evals[0] - evals[1])
    e2_hi = -(s.lam**2) * abs(cross) ** 2 / (evals[1] - evals[0])
    return CorrectionReport(
        e0=(float(evals[0]), float(evals[1])),
        e1=e1,
        e2=(complex(e2_lo), complex(e2_hi)),
        gap0=gap,
    )


def degenerate_block(s: PerturbationSetup) -> tuple[np.ndarray, np.ndarray]:
    """Degenerate-block matrix M = i*lam <k|V|k'> in the base eigenbasis.

    M is skew-Hermitian, so its eigenvalues are purely imaginary; returns
    (M, eigenvalues).
    """
    _, vecs = hermitian_eigensystem_2x2(s.h0)
    v_e = vecs[:, 1]
    v_g = vecs[:, 0]
    m = 1j * s.lam * np.array(
        [
            [np.vdot(v_e, s.v_p @ v_e), np.vdot(v_e, s.v_p @ v_g)],
            [np.vdot(v_g, s.v_p @ v_e), np.vdot(v_g, s.v_p @ v_g)],
        ],
        dtype=complex,
    )
    if np.max(np.abs(m + m.conj().T)) > 1e-12 * max(1.0, float(np.max(np.abs(m)))):
        raise InvalidParameterError("degenerate block is not skew-Hermitian; v_p invalid")
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    d = cmath.sqrt(tr * tr / 4.0 - det)
    return m, np.array([tr / 2.0 - d, tr / 2.0 + d])


@dataclass(frozen=True)
class BubbleWindows:
    predicted: tuple[float, float] | None  # heuristic gap-vs-perturbation window
    exact: tuple[float, float] | None  # complex-spectrum window of h0 + i*lam*v_p


def _window_from_predicate(eta_scan: np.ndarray, flags: np.ndarray, predicate, xtol: float):
    if not np.any(flags):
        return None
    idx = np.flatnonzero(flags)
    lo, hi = float(eta_scan[idx[0]]), float(eta_scan[idx[-1]])

    def refine(inside: float, outside: float) -> float:
        a, b = inside, outside
        while abs(b - a) > xtol:
            mid = 0.5 * (a + b)
            if predicate(mid):
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    if idx[0] > 0:
        lo = refine(lo, float(eta_scan[idx[0] - 1]))
    if idx[-1] < len(eta_scan) - 1:
        hi = refine(hi, float(eta_scan[idx[-1] + 1]))
    return (min(lo, hi), max(lo, hi))


def bubble_prediction(
    s: PerturbationSetup, eta_scan, h0_builder, xtol: float = 1e-10
) -> BubbleWindows:
    """Predicted vs exact windows of complex spectra along an eta scan.

    Heuristic: the gap of h0(eta) is smaller than 2*lam*|<e|V|g>|, calibrated on
    the exactly solvable sigma_z/sigma_x pair. Exact: eigenvalues of
    h0(eta) + i*lam*v_p acquire imaginary parts.
    """
    eta_scan = np.asarray(eta_scan, dtype=float)

    def predicted_at(eta: float) -> bool:
        evals, vecs = hermitian_eigensystem_2x2(h0_builder(eta))
        cross = abs(np.vdot(vecs[:, 1], s.v_p @ vecs[:, 0]))
        return bool(evals[1] - evals[0] < 2.0 * s.lam * cross)

    def exact_at(eta: float) -> bool:
        h = np.asarray(h0_builder(eta), dtype=complex) + 1j * s.lam * s.v_p
        tr = h[0, 0] + h[1, 1]
        det = h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
        d = cmath.sqrt(tr * tr / 4.0 - det)
        scale = max(float(np.max(np.abs(h))), 1.0)
        return abs(d.imag) > 1e-10 * scale

    pred_flags = np.array([predicted_at(e) for e in eta_scan])
    exact_flags = np.array([exact_at(e) for e in eta_scan])
    return BubbleWindows(
        predicted=_window_from_predicate(eta_scan, pred_flags, predicted_at, xtol),
        exact=_window_from_predicate(eta_scan, exact_flags, exact_at, xtol),
    )
