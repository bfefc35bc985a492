import cmath
import math

import numpy as np
import pytest

from ptbubble import ModelParams, build_hamiltonian, eigensystem, find_bubble, pt_phase
from ptbubble.errors import CoalescenceError, InvalidParameterError, NotApplicableError
from ptbubble.spectra import (
    bubble_size_scan,
    eigenvalues_2x2,
    spectrum_scan,
    spin_expectations,
)


def _random_params(rng):
    return ModelParams(
        delta_x=rng.uniform(-0.5, 0.5),
        delta_y=rng.uniform(-0.5, 0.5),
        gamma=rng.uniform(0, 0.8),
    ), rng.uniform(-1.5, 1.5)


def test_eigenvalues_closed_form():
    rng = np.random.default_rng(11)
    for _ in range(50):
        p, eta = _random_params(rng)
        e1, e2 = eigenvalues_2x2(build_hamiltonian(p, eta))
        expect = cmath.sqrt(eta**2 + (p.delta_x + 1j * p.gamma) ** 2 + p.delta_y**2)
        assert abs(e1 + e2) < 1e-12
        assert min(abs(e1 - expect), abs(e1 + expect)) < 1e-12


def test_trace_det_identity():
    rng = np.random.default_rng(12)
    for _ in range(50):
        p, eta = _random_params(rng)
        h = build_hamiltonian(p, eta)
        e1, e2 = eigenvalues_2x2(h)
        assert e1 + e2 == pytest.approx(np.trace(h), abs=1e-12)
        assert e1 * e2 == pytest.approx(np.linalg.det(h), abs=1e-12)


def test_eigensystem_residuals_and_biorthogonality():
    rng = np.random.default_rng(13)
    for _ in range(50):
        p, eta = _random_params(rng)
        h = build_hamiltonian(p, eta)
        if abs(eigenvalues_2x2(h)[0] - eigenvalues_2x2(h)[1]) < 1e-3:
            continue
        sys = eigensystem(h)
        scale = max(np.max(np.abs(h)), 1.0)
        assert np.linalg.norm(h @ sys.r1 - sys.e1 * sys.r1) < 1e-12 * scale
        assert np.linalg.norm(h @ sys.r2 - sys.e2 * sys.r2) < 1e-12 * scale
        assert np.linalg.norm(np.conj(sys.l1) @ h - sys.e1 * np.conj(sys.l1)) < 1e-12 * scale
        assert np.linalg.norm(np.conj(sys.l2) @ h - sys.e2 * np.conj(sys.l2)) < 1e-12 * scale
        assert abs(np.vdot(sys.l1, sys.r2)) < 1e-10
        assert abs(np.vdot(sys.l2, sys.r1)) < 1e-10
        assert np.linalg.norm(sys.r1) == pytest.approx(1.0)
        assert np.linalg.norm(sys.r2) == pytest.approx(1.0)
        assert (sys.e1.real, sys.e1.imag) <= (sys.e2.real, sys.e2.imag)
        assert sys.condition >= 1.0


def test_exact_coalescence_raises_with_eigenvector():
    # defective matrix at the exceptional point eta = gamma, delta = 0
    h = build_hamiltonian(ModelParams(gamma=0.2), 0.2)
    with pytest.raises(CoalescenceError) as info:
        eigensystem(h)
    v = info.value.eigenvector
    assert v is not None
    assert np.linalg.norm(h @ v - eigenvalues_2x2(h)[0] * v) < 1e-8


def test_eigensystem_rejects_bad_input():
    with pytest.raises(InvalidParameterError):
        eigensystem(np.zeros((3, 3)))
    with pytest.raises(InvalidParameterError):
        eigensystem(np.array([[np.inf, 0], [0, 1]]))


def test_pt_phase_dichotomy():
    rng = np.random.default_rng(14)
    for _ in range(50):
        p = ModelParams(delta_y=rng.uniform(-0.5, 0.5), gamma=rng.uniform(0, 0.8))
        eta = rng.uniform(-1.5, 1.5)
        e1, e2 = eigenvalues_2x2(build_hamiltonian(p, eta))
        real = max(abs(e1.imag), abs(e2.imag)) < 1e-10
        conj_pair = abs(e2 - e1.conjugate()) < 1e-10
        assert real or conj_pair
        assert pt_phase(p, eta) == ("real-spectrum" if real else "broken")
    with pytest.raises(NotApplicableError):
        pt_phase(ModelParams(delta_x=0.1, gamma=0.2), 0.0)


def test_find_bubble_delta_zero():
    report = find_bubble(ModelParams(gamma=0.2))
    assert report.exists
    assert report.eta_plus == pytest.approx(0.2, abs=1e-8)
    assert report.eta_minus == pytest.approx(-0.2, abs=1e-8)
    assert report.diameter == pytest.approx(0.4, abs=2e-8)


def test_find_bubble_closed_form_grid():
    for g in (0.18, 0.25, 0.4):
        for dy in (0.0, 0.1, 0.15):
            report = find_bubble(ModelParams(gamma=g, delta_y=dy))
            expect = math.sqrt(g**2 - dy**2)
            assert report.exists
            assert report.eta_plus == pytest.approx(expect, abs=1e-8)
            assert report.eta_minus == pytest.approx(-expect, abs=1e-8)


def test_bubble_absent_cases():
    assert not find_bubble(ModelParams(gamma=0.0)).exists
    assert not find_bubble(ModelParams(gamma=0.1, delta_y=0.15)).exists
    assert find_bubble(ModelParams(gamma=0.1, delta_y=0.15)).diameter == 0.0


def test_bubble_size_scan_linear_in_gamma():
    gammas = np.linspace(0.02, 0.4, 10)
    scan = bubble_size_scan(ModelParams(), gammas)
    for g, d in scan:
        assert d == pytest.approx(2.0 * g, abs=2e-8)


def test_spin_expectation_structure():
    p = ModelParams(gamma=0.2)
    # outside the bubble: sx vanishes, sz does not
    sx, sy, sz = spin_expectations(eigensystem(build_hamiltonian(p, 0.5)), 1)
    assert abs(sx) < 1e-10
    assert abs(sz) > 0.1
    assert abs(sy) > 0.1
    # inside: sz vanishes, sx does not
    sx, sy, sz = spin_expectations(eigensystem(build_hamiltonian(p, 0.1)), 1)
    assert abs(sz) < 1e-10
    assert abs(sx) > 0.1
    assert abs(sy) > 0.1
    # Hermitian limit: plain sigma_z eigenstates
    sx, sy, sz = spin_expectations(eigensystem(build_hamiltonian(ModelParams(), 1.0)), 1)
    assert (sx, sy) == (0.0, 0.0)
    assert sz == pytest.approx(1.0)
    with pytest.raises(InvalidParameterError):
        spin_expectations(eigensystem(build_hamiltonian(p, 0.5)), 3)


def test_spectrum_scan_branches_are_continuous():
    p = ModelParams(gamma=0.2)
    etas = np.linspace(-1.0, 1.0, 801)
    rows = spectrum_scan(p, etas)
    e1 = np.array([r[1] for r in rows])
    e2 = np.array([r[2] for r in rows])
    assert np.max(np.abs(np.diff(e1))) < 0.05
    assert np.max(np.abs(np.diff(e2))) < 0.05
    # real outside the bubble, conjugate pair inside
    outside = np.abs(etas) > 0.21
    inside = np.abs(etas) < 0.19
    assert np.max(np.abs(e1[outside].imag)) < 1e-10
    assert np.min(np.abs(e1[inside].imag)) > 0.0
