import numpy as np
import pytest

from ptbubble import (
    ModelParams,
    PerturbationSetup,
    bubble_prediction,
    degenerate_block,
    find_bubble,
    perturbative_corrections,
)
from ptbubble.errors import InvalidParameterError, NotApplicableError
from ptbubble.perturbation import hermitian_eigensystem_2x2

SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)


def test_setup_validation():
    with pytest.raises(InvalidParameterError):
        PerturbationSetup(h0=np.array([[0, 1], [0, 0]], dtype=complex), v_p=SX, lam=0.1)
    with pytest.raises(InvalidParameterError):
        PerturbationSetup(h0=SZ, v_p=SX, lam=-0.1)
    with pytest.raises(InvalidParameterError):
        PerturbationSetup(h0=np.eye(3), v_p=SX, lam=0.1)


def test_hermitian_eigensystem_against_numpy():
    rng = np.random.default_rng(41)
    for _ in range(30):
        a, d = rng.normal(size=2)
        b = complex(rng.normal(), rng.normal())
        h = np.array([[a, b], [np.conj(b), d]], dtype=complex)
        evals, vecs = hermitian_eigensystem_2x2(h)
        ref = np.linalg.eigvalsh(h)
        assert np.allclose(evals, ref, atol=1e-12)
        for k in range(2):
            assert np.linalg.norm(h @ vecs[:, k] - evals[k] * vecs[:, k]) < 1e-12
        assert abs(np.vdot(vecs[:, 0], vecs[:, 1])) < 1e-12


def test_first_order_vanishes_for_pt_pair():
    # diagonal elements of sigma_x in the sigma_z eigenbasis are zero, so the
    # first-order (anti-Hermitian) shift is exactly absent
    rep = perturbative_corrections(PerturbationSetup(h0=SZ, v_p=SX, lam=0.05))
    assert max(abs(c) for c in rep.e1) < 1e-14
    assert rep.gap0 == pytest.approx(2.0)
    # second order pulls the levels together (gap shrinks)
    assert rep.e2[0].real > 0
    assert rep.e2[1].real < 0


def test_second_order_accuracy_scales_fourth_order():
    errs = {}
    for lam in (0.05, 0.025):
        rep = perturbative_corrections(PerturbationSetup(h0=SZ, v_p=SX, lam=lam))
        exact = sorted(np.linalg.eigvals(SZ + 1j * lam * SX), key=lambda z: z.real)
        errs[lam] = max(
            abs(exact[k] - (rep.e0[k] + rep.e1[k] + rep.e2[k])) for k in range(2)
        )
    assert 12.0 < errs[0.05] / errs[0.025] < 20.0


def test_degenerate_base_rejected_and_block_used_instead():
    with pytest.raises(NotApplicableError):
        perturbative_corrections(PerturbationSetup(h0=np.zeros((2, 2), dtype=complex), v_p=SX, lam=0.1))
    m, evals = degenerate_block(PerturbationSetup(h0=np.zeros((2, 2), dtype=complex), v_p=SX, lam=0.1))
    assert np.max(np.abs(m + m.conj().T)) < 1e-13
    assert max(abs(e.real) for e in evals) < 1e-13
    assert sorted(e.imag for e in evals) == pytest.approx([-0.1, 0.1])


def test_bubble_prediction_windows():
    lam = 0.2

    def h0_builder(eta):
        return eta * SZ

    setup = PerturbationSetup(h0=SZ, v_p=SX, lam=lam)
    windows = bubble_prediction(setup, np.linspace(-1, 1, 101), h0_builder)
    assert windows.exact is not None
    assert windows.exact[0] == pytest.approx(-lam, abs=1e-8)
    assert windows.exact[1] == pytest.approx(lam, abs=1e-8)
    # the calibrated heuristic coincides with the exact window for this pair
    assert windows.predicted == pytest.approx(windows.exact, abs=1e-6)
    # cross-check the exact window against the spectral bisection route
    report = find_bubble(ModelParams(gamma=lam))
    assert windows.exact[1] == pytest.approx(report.eta_plus, abs=1e-7)

    # no window when the perturbation is too weak to close the gapped case
    def gapped(eta):
        return eta * SZ + 0.5 * SY

    none_windows = bubble_prediction(
        PerturbationSetup(h0=SZ, v_p=SX, lam=0.1), np.linspace(-1, 1, 101), gapped
    )
    assert none_windows.exact is None
