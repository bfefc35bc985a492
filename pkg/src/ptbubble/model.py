"""Hamiltonian family, symmetry classification and sweep schedules for the lossy two-level model.

The model is H = eta*sigma_z' + delta_x*sigma_x + delta_y*sigma_y + i*gamma*sigma_x,
written in the sign convention with -eta in the top-left entry:

    H = [[-eta,  delta_x + i*(gamma - delta_y)],
         [delta_x + i*(gamma + delta_y),  eta]]

This convention is used everywhere in the package so that static spectra and
swept dynamics share one matrix.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict, replace

import numpy as np

from .errors import InvalidParameterError, InconsistentScheduleError

# |delta_x| below this counts as exactly zero for symmetry classification.
SYMMETRY_TOL = 1e-12

_SCHEDULE_KINDS = ("constant", "linear", "cyclic")


@dataclass(frozen=True)
class ModelParams:
    """The four Hamiltonian coefficients plus the sweep rate alpha."""

    eta: float = 0.0
    delta_x: float = 0.0
    delta_y: float = 0.0
    gamma: float = 0.0
    alpha: float = 0.0

    def __post_init__(self):
        for name in ("eta", "delta_x", "delta_y", "gamma", "alpha"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be a finite real number, got {value!r}")
        if self.gamma < 0:
            raise InvalidParameterError("gamma < 0 (gain) is rejected, not reinterpreted")

    def replace(self, **kwargs) -> "ModelParams":
        return replace(self, **kwargs)

    def require_sweep(self) -> None:
        """Raise unless alpha is a valid sweep rate (> 0)."""
        if self.alpha <= 0:
            raise InvalidParameterError(f"sweeps require alpha > 0, got alpha={self.alpha}")

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_dict(cls, data: dict) -> "ModelParams":
        unknown = set(data) - {"eta", "delta_x", "delta_y", "gamma", "alpha"}
        if unknown:
            raise InvalidParameterError(f"unknown ModelParams keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "ModelParams":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class EtaSchedule:
    """Time dependence of the gap-control parameter.

    constant: eta(t) = eta0
    linear:   eta(t) = eta0 + alpha*t
    cyclic:   eta(t) = -1 + alpha*t for t <= t_f, then 1 - alpha*t; requires alpha*t_f = 1
    """

    kind: str
    eta0: float = 0.0
    alpha: float = 0.0
    t_f: float = 0.0

    def __post_init__(self):
        if self.kind not in _SCHEDULE_KINDS:
            raise InvalidParameterError(f"unknown schedule kind {self.kind!r}")
        for name in ("eta0", "alpha", "t_f"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be finite, got {value!r}")
        if self.kind in ("linear", "cyclic") and self.alpha <= 0:
            raise InvalidParameterError("sweep schedules require alpha > 0")

    @classmethod
    def constant(cls, eta0: float) -> "EtaSchedule":
        return cls(kind="constant", eta0=eta0)

    @classmethod
    def linear(cls, alpha: float, eta0: float = 0.0) -> "EtaSchedule":
        return cls(kind="linear", eta0=eta0, alpha=alpha)

    @classmethod
    def cyclic(cls, t_f: float) -> "EtaSchedule":
        """Out-and-back sweep from eta = -1 across zero and back, apex at t_f."""
        if t_f <= 0:
            raise InvalidParameterError(f"cyclic schedules require t_f > 0, got {t_f}")
        return cls(kind="cyclic", eta0=-1.0, alpha=1.0 / t_f, t_f=t_f)

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_dict(cls, data: dict) -> "EtaSchedule":
        unknown = set(data) - {"kind", "eta0", "alpha", "t_f"}
        if unknown:
            raise InvalidParameterError(f"unknown EtaSchedule keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "EtaSchedule":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SymmetryReport:
    pt_symmetric: bool
    gap_behavior: str  # "gap-closing" or "anticrossing"


def build_hamiltonian(p: ModelParams, eta: float) -> np.ndarray:
    """Instantaneous 2x2 Hamiltonian at the given eta (top-left entry -eta)."""
    if not math.isfinite(eta):
        raise InvalidParameterError(f"eta must be finite, got {eta!r}")
    return np.array(
        [
            [-eta, p.delta_x + 1j * (p.gamma - p.delta_y)],
            [p.delta_x + 1j * (p.gamma + p.delta_y), eta],
        ],
        dtype=complex,
    )


def classify_symmetry(p: ModelParams) -> SymmetryReport:
    """Combined parity-time symmetry is present iff delta_x = 0; the non-dissipative
    gap closes under an eta sweep iff delta_x = delta_y = 0, otherwise it anticrosses."""
    pt = abs(p.delta_x) < SYMMETRY_TOL
    closing = pt and abs(p.delta_y) < SYMMETRY_TOL
    return SymmetryReport(pt_symmetric=pt, gap_behavior="gap-closing" if closing else "anticrossing")


def eval_schedule(s: EtaSchedule, t: float) -> float:
    """Value of eta(t) for the given schedule."""
    if s.kind == "constant":
        return s.eta0
    if s.kind == "linear":
        return s.eta0 + s.alpha * t
    # cyclic: continuity at the apex requires alpha*t_f = 1
    if abs(s.alpha * s.t_f - 1.0) > 1e-12:
        raise InconsistentScheduleError(
            f"cyclic schedule needs alpha*t_f = 1, got {s.alpha * s.t_f}"
        )
    if t <= s.t_f:
        return -1.0 + s.alpha * t
    return 1.0 - s.alpha * t


def is_pt_symmetric_matrix(h: np.ndarray, tol: float = 1e-12) -> bool:
    """Entrywise check of the antiunitary symmetry sigma_z * conj(H) * sigma_z == H."""
    sz = np.diag([1.0, -1.0])
    return bool(np.max(np.abs(sz @ np.conj(h) @ sz - h)) <= tol * max(1.0, np.max(np.abs(h))))
