"""Acceptance gate: one test per headline claim, one printed verdict each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS/FAIL
lines. Each criterion prints its measured numbers before asserting, so a
failure documents itself.
"""

import time

import numpy as np

from gaugeqed import (
    DickeParams,
    FluxoniumParams,
    RabiParams,
    build_dicke_correct,
    build_dicke_dipole,
    build_dicke_standard,
    build_flux_charge_correct,
    build_H_C_correct,
    build_H_C_standard,
    build_H_D,
    check_gauge_theorem,
    check_minimal_coupling_identity,
    lowest_transitions,
    solve_fluxonium,
    trk_sum,
)
from gaugeqed.experiments import (
    SweepSpec,
    alpha_invariance_study,
    default_eta_grid,
    run_sweep,
    sweep_csv_lines,
    taylor_study,
    write_sweep_csv,
)
from test_particle1d import gauge_gap
from test_rabi import GOLD_CSTD_T1_REL_DEV


def verdict(name, ok, detail):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


def test_01_gauge_coincidence():
    # dipole and corrected Coulomb spectra coincide across the full
    # coupling range, at zero and finite detuning
    t0 = time.perf_counter()
    grid = tuple(round(0.1 * k, 10) for k in range(16))
    worst = 0.0
    for detuning in (0.0, 0.5):
        res = run_sweep(SweepSpec(models=("D", "Ccorr"), eta_grid=grid,
                                  detuning=detuning, levels_reported=6))
        assert all(pt.converged for pt in res.points)
        by = {(pt.model, pt.eta): np.asarray(pt.transitions)
              for pt in res.points}
        for eta in grid:
            dev = float(np.abs(by[("D", eta)] - by[("Ccorr", eta)]).max())
            worst = max(worst, dev)
    elapsed = time.perf_counter() - t0
    verdict("gauge-coincidence", worst <= 1e-6 and elapsed < 60.0,
            f"max |t_D - t_Ccorr| = {worst:.3e} over eta in [0, 1.5], "
            f"delta in {{0, 0.5}}, 6 transitions, {elapsed:.1f} s")


def test_02_standard_model_failure():
    res = run_sweep(SweepSpec(models=("D", "Cstd"), eta_grid=(1.0,),
                              levels_reported=2))
    t = {pt.model: float(pt.transitions[0]) for pt in res.points}
    rel = abs(t["Cstd"] - t["D"]) / t["D"]
    ok = rel > 0.10 and abs(rel - GOLD_CSTD_T1_REL_DEV) <= 1e-6 * GOLD_CSTD_T1_REL_DEV
    verdict("standard-model-failure", ok,
            f"naive Coulomb first transition off by {100 * rel:.1f}% at "
            f"eta = 1 (golden {100 * GOLD_CSTD_T1_REL_DEV:.1f}%)")


def test_03_alpha_invariance():
    alphas = (0.0, 0.25, 0.5, 0.75, 1.0)
    study = alpha_invariance_study(alphas, (0.8, 1.5), levels=6)
    control = alpha_invariance_study(alphas, (1.0,), levels=6,
                                     negative_control=True)
    ok = study.passed and study.max_spread <= 1e-6 and control.max_spread > 0.1
    verdict("alpha-invariance", ok,
            f"spread {study.max_spread:.3e} across alpha grid at eta = 0.8 "
            f"and 1.5; negative control spread {control.max_spread:.3e}")


def test_04_gauge_theorem_matrix():
    cutoffs = (60, 80, 100, 140)
    ok = True
    details = []
    for eta in (0.25, 0.5):
        reports = [check_gauge_theorem(RabiParams(eta=eta, cutoff=c))
                   for c in cutoffs]
        at100 = reports[cutoffs.index(100)]
        full_rel = [r.max_dev_full_rel for r in reports]
        ok &= at100.passed and at100.max_dev_interior <= 1e-8
        # the interior deviation bottoms out at the arithmetic floor at
        # small eta; the full-matrix deviation is the monotone witness
        ok &= all(b < a for a, b in zip(full_rel, full_rel[1:]))
        details.append(f"eta={eta}: interior {at100.max_dev_interior:.2e} "
                       f"at cutoff 100, full-matrix deviation falling "
                       f"{full_rel[0]:.2e} -> {full_rel[-1]:.2e}")
    verdict("gauge-theorem-matrix", ok, "; ".join(details))


def test_05_taylor_thresholds():
    grid = default_eta_grid(eta_max=1.6)
    one_pct = taylor_study((2, 200), eta_grid=grid, cutoff=200, levels=5,
                           tol=0.01)
    ten_pct = taylor_study((3,), eta_grid=grid, cutoff=200, levels=5,
                           tol=0.10)
    star2, star200 = one_pct.eta_star
    star3, bad3 = ten_pct.eta_star[0], ten_pct.first_bad[0]
    ok = (abs(star2 - 0.125) <= 1e-9 and 0.05 <= star2 <= 0.15
          and abs(star200 - 1.4) <= 1e-9 and 1.1 <= star200 <= 1.5
          and abs(star3 - 0.225) <= 1e-9 and bad3 < 0.35)
    verdict("taylor-thresholds", ok,
            f"1% thresholds eta*(2) = {star2}, eta*(200) = {star200}; "
            f"order 3 holds 10% until {star3} (exceeds at {bad3})")


def test_06_dicke_consistency():
    # N = 1 collapses onto the two-level builders spectrally
    pr = RabiParams(eta=0.6, detuning=0.3, cutoff=100)
    p1 = DickeParams(n_dipoles=1, eta=0.6, detuning=0.3, cutoff=100)
    spectral = max(
        float(np.abs(lowest_transitions(a, 8) - lowest_transitions(b, 8)).max())
        for a, b in ((build_dicke_standard(p1), build_H_C_standard(pr)),
                     (build_dicke_correct(p1), build_H_C_correct(pr)),
                     (build_dicke_dipole(p1), build_H_D(pr))))
    # the two constructions of the corrected model agree entrywise with
    # the argument-doubling closed form; the printed factor-4 variant of
    # the same formula does not, and the conjugation form is authoritative
    pn = DickeParams(n_dipoles=3, eta=0.3, cutoff=60)
    conj = build_dicke_correct(pn, method="conjugation").arr
    scale = float(np.abs(conj).max())
    dev2 = float(np.abs(
        conj - build_dicke_correct(pn, method="closed_form", factor=2).arr).max())
    four = build_dicke_correct(pn, method="closed_form", factor=4)
    dev4 = float(np.abs(conj - four.arr).max()) / scale
    t4 = float(np.abs(lowest_transitions(four, 6)
                      - lowest_transitions(build_dicke_dipole(pn), 6)).max())
    ok = spectral <= 1e-10 and dev2 <= 1e-9 * scale and dev4 > 1e-3
    verdict("dicke-consistency", ok,
            f"N=1 spectral dev {spectral:.2e}; conjugation vs closed(c=2) "
            f"entrywise {dev2:.2e}; closed(c=4) variant deviates "
            f"{dev4:.2e} rel entrywise and {t4:.2e} in transitions, so the "
            f"factor-2 argument is the consistent reading")


def test_07_minimal_coupling_identity(harmonic):
    model, _ = harmonic
    rep = check_minimal_coupling_identity(model, 0.3)
    ok = rep.passed and rep.residual_rel <= 1e-6 and rep.spectrum_dev <= 1e-8
    verdict("minimal-coupling-identity", ok,
            f"conjugated vs substituted operator residual "
            f"{rep.residual_rel:.2e}, spectrum dev {rep.spectrum_dev:.2e} "
            f"at qA0 = {rep.q_a0}")


def test_08_trk_sum_rule(harmonic, double_well):
    model_h, basis_h = harmonic
    model_d, basis_d = double_well
    s2 = trk_sum(basis_h, model_h, m_used=2)
    s50 = trk_sum(basis_d, model_d, m_used=50)
    ok = abs(s2 - 1.0) <= 1e-6 and s50 >= 0.999
    verdict("trk-sum-rule", ok,
            f"harmonic M=2 sum = {s2:.9f}; double well M=50 sum = {s50:.6f}")


def test_09_fluxonium():
    p = FluxoniumParams(e_c=1.0, e_l=0.9, e_j=3.0, chi0=0.2, cutoff=120)
    basis = solve_fluxonium(p)
    conj = build_flux_charge_correct(p, basis, method="conjugation").arr
    closed = build_flux_charge_correct(p, basis, method="closed_form").arr
    nf = p.cutoff + 1
    keep = np.r_[0:int(0.8 * nf)]
    idx = np.concatenate([keep, nf + keep])
    dev = float(np.abs((conj - closed)[np.ix_(idx, idx)]).max())
    p0 = FluxoniumParams(e_c=1.0, e_l=0.9, e_j=0.0, chi0=0.2, cutoff=40)
    b0 = solve_fluxonium(p0)
    ladder = b0.energies - b0.energies[0]
    dev0 = float(np.abs(
        ladder - p0.omega_quad * np.arange(ladder.size)).max())
    ok = dev <= 1e-9 and dev0 <= 1e-8
    verdict("fluxonium", ok,
            f"closed form vs conjugation interior dev {dev:.2e}; "
            f"E_J = 0 ladder dev {dev0:.2e} from analytic oscillator levels")


def test_10_full_model_convergence(double_well):
    model, basis = double_well
    g2 = gauge_gap(model, basis, 2)
    g32 = gauge_gap(model, basis, 32)
    ratio = g2 / max(g32, 1e-300)
    verdict("full-model-convergence", ratio >= 100.0,
            f"double-well gauge gap {g2:.3e} at M=2 vs {g32:.3e} at M=32, "
            f"ratio {ratio:.1e}")


def test_11_determinism(tmp_path):
    spec = SweepSpec(models=("D", "Ccorr"), eta_grid=(0.0, 0.5, 1.0),
                     levels_reported=4)
    runs = [run_sweep(spec, threads=n) for n in (1, 2, 1)]
    paths = []
    for k, res in enumerate(runs):
        path = tmp_path / f"run{k}.csv"
        write_sweep_csv(res, path)
        paths.append(path.read_bytes())
    same_lines = (sweep_csv_lines(runs[0]) == sweep_csv_lines(runs[1])
                  == sweep_csv_lines(runs[2]))
    ok = same_lines and paths[0] == paths[1] == paths[2]
    verdict("determinism", ok,
            "sweep CSV byte-identical across thread counts and reruns")
