"""Collective models: reduction to the single-dipole case, the rotation
identity, and the corrected form's dipole-gauge partner."""

import numpy as np
import pytest

import oracles
from gaugeqed import (
    DickeParams,
    RabiParams,
    build_dicke_correct,
    build_dicke_dipole,
    build_dicke_standard,
    build_H_C_correct,
    build_H_C_standard,
    build_H_D,
    conjugate,
    fock_ops,
    hermitian_eig,
    identity,
    kron,
    spectrum_of,
    spin_ops,
    unitary_exp,
)

# n_dipoles = 4, eta = 0.3, resonant, cutoff 80
GOLD_N4_CORR = np.array([
    5.375076460234e-01, 1.104581807938e+00,
    1.695803151405e+00, 1.724800561024e+00,
])


def transitions(H, k):
    return spectrum_of(H).transitions(k)


def test_params():
    p = DickeParams(eta=0.2, n_dipoles=4)
    assert p.j == 2.0
    assert p.dim == 5 * (p.cutoff + 1)
    with pytest.raises(ValueError):
        DickeParams(eta=0.2, n_dipoles=0)


# ---------------------------------------------------------------------------
# N = 1 reduction
# ---------------------------------------------------------------------------

def test_single_dipole_reduces_to_rabi():
    pd = DickeParams(eta=0.4, cutoff=50, detuning=0.2, n_dipoles=1)
    pr = RabiParams(eta=0.4, cutoff=50, detuning=0.2)
    for dicke_build, rabi_build in (
            (build_dicke_standard, build_H_C_standard),
            (lambda p: build_dicke_correct(p, method="conjugation"), build_H_C_correct)):
        hd = dicke_build(pd)
        hr = rabi_build(pr)
        scale = np.abs(hr.arr).max()
        assert np.abs(hd.arr - hr.arr).max() <= 1e-10 * scale
        wd = hermitian_eig(hd, vectors=False).eigenvalues
        wr = hermitian_eig(hr, vectors=False).eigenvalues
        assert np.abs(wd - wr).max() <= 1e-10


def test_single_dipole_dipole_gauge_offset():
    # at N = 1 the collective J_x^2 term is the scalar eta^2 omega_c, which
    # the two-level dipole builder drops; the partner keeps it
    p = DickeParams(eta=0.4, cutoff=50, n_dipoles=1)
    hd = build_dicke_dipole(p)
    hr = build_H_D(RabiParams(eta=0.4, cutoff=50))
    shift = p.eta ** 2 * p.omega_c
    dev = np.abs(hd.arr - hr.arr - shift * np.eye(p.dim)).max()
    assert dev <= 1e-12 * np.abs(hr.arr).max()


# ---------------------------------------------------------------------------
# construction routes
# ---------------------------------------------------------------------------

def test_conjugation_matches_closed_form_factor2():
    p = DickeParams(eta=0.3, cutoff=60, n_dipoles=3)
    h_conj = build_dicke_correct(p, method="conjugation")
    h_closed = build_dicke_correct(p, method="closed_form", factor=2)
    scale = np.abs(h_conj.arr).max()
    assert np.abs(h_conj.arr - h_closed.arr).max() <= 1e-9 * scale


def test_closed_form_factor4_disagrees():
    # the rotation identity fixes the argument at 2 eta (a + a^dag); doubling
    # it again produces a materially different operator, which is the point
    # of keeping the conjugation route authoritative
    p = DickeParams(eta=0.3, cutoff=60, n_dipoles=3)
    h_conj = build_dicke_correct(p, method="conjugation")
    h4 = build_dicke_correct(p, method="closed_form", factor=4)
    scale = np.abs(h_conj.arr).max()
    assert np.abs(h_conj.arr - h4.arr).max() > 1e-3 * scale
    t_conj = transitions(h_conj, 4)
    t4 = transitions(h4, 4)
    assert np.abs(t_conj - t4).max() > 1e-3


def test_method_validation():
    p = DickeParams(eta=0.3, n_dipoles=2)
    with pytest.raises(ValueError):
        build_dicke_correct(p, method="closed_form", factor=3)
    with pytest.raises(ValueError):
        build_dicke_correct(p, method="magic")


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

def test_n4_golden():
    p = DickeParams(eta=0.3, cutoff=80, n_dipoles=4)
    t = transitions(build_dicke_correct(p), 4)
    assert np.max(np.abs(t - GOLD_N4_CORR) / GOLD_N4_CORR) <= 1e-10


def test_matches_raw_oracle():
    w = np.linalg.eigvalsh(oracles.dicke_standard(3, 0.25, 0.1, 70))
    p = DickeParams(eta=0.25, cutoff=70, detuning=0.1, n_dipoles=3)
    t = transitions(build_dicke_standard(p), 5)
    assert np.abs(t - (w[1:6] - w[0])).max() <= 1e-11
    w = np.linalg.eigvalsh(oracles.dicke_correct(3, 0.25, 0.1, 70))
    t = transitions(build_dicke_correct(p), 5)
    assert np.abs(t - (w[1:6] - w[0])).max() <= 1e-11


def test_eta_zero_ladder():
    # uncoupled: E = omega_10 (m + j) + omega_c n above the ground state
    p = DickeParams(eta=0.0, cutoff=30, detuning=0.5, n_dipoles=3)
    expected = sorted(p.omega_10 * k + p.omega_c * n
                      for k in range(4) for n in range(8))[1:9]
    for build in (build_dicke_standard, build_dicke_correct, build_dicke_dipole):
        t = transitions(build(p), 8)
        assert np.abs(t - np.array(expected)).max() <= 1e-10


def test_dipole_partner_spectrum():
    p = DickeParams(eta=0.3, cutoff=120, n_dipoles=4)
    t_corr = transitions(build_dicke_correct(p), 4)
    t_dip = transitions(build_dicke_dipole(p), 4)
    assert np.abs(t_corr - t_dip).max() <= 1e-10


def test_standard_fails_at_strong_coupling():
    p = DickeParams(eta=0.8, cutoff=120, n_dipoles=4)
    t_std = transitions(build_dicke_standard(p), 4)
    t_corr = transitions(build_dicke_correct(p), 4)
    assert np.max(np.abs(t_std - t_corr) / t_corr) > 0.10


# ---------------------------------------------------------------------------
# symmetries
# ---------------------------------------------------------------------------

def test_collective_spin_conserved():
    p = DickeParams(eta=0.35, cutoff=40, detuning=0.2, n_dipoles=4)
    jx, jy, jz = spin_ops(p.n_dipoles)
    j2 = (jx @ jx + jy @ jy + jz @ jz).arr
    j2_emb = np.kron(j2, np.eye(p.cutoff + 1))
    for build in (build_dicke_standard, build_dicke_correct, build_dicke_dipole):
        H = build(p).arr
        dev = np.abs(H @ j2_emb - j2_emb @ H).max()
        assert dev <= 1e-12 * np.abs(H).max() * np.abs(j2).max()


def test_spectrum_invariant_under_further_rotation():
    # conjugating by another exp[i beta J_x (a + a^dag)] must not move the
    # spectrum (it is unitary on the truncated space)
    p = DickeParams(eta=0.3, cutoff=60, n_dipoles=3)
    H = build_dicke_correct(p)
    jx, _, _ = spin_ops(p.n_dipoles)
    a, adag, _ = fock_ops(p.cutoff)
    from gaugeqed import as_hermitian
    gen = kron(jx, as_hermitian(a + adag))
    U = unitary_exp(gen, 0.37)
    w0 = hermitian_eig(H, vectors=False).eigenvalues
    w1 = hermitian_eig(conjugate(U, H), vectors=False).eigenvalues
    assert np.abs(w0 - w1).max() <= 1e-9 * max(np.abs(w0).max(), 1.0)


def test_builders_hermitian():
    p = DickeParams(eta=0.5, cutoff=30, detuning=0.3, n_dipoles=2)
    for build in (build_dicke_standard, build_dicke_correct, build_dicke_dipole):
        H = build(p)
        assert H.hermitian_hint
