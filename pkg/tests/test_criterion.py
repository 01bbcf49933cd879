import math

import numpy as np
import pytest

import zenoscan as z
from zenoscan import (DomainError, NoSignChangeError, PracticalRegimeWarning,
                      Trend, ValidityWarning, Verdict, boundary_find, classify,
                      gamma_approx, monotonicity_sign, validity_check)

from conftest import FIG2_SPEC, TWO_PI, powerlaw


# --- classification -----------------------------------------------------------

def test_classify_lorentzian_resonant_is_qze(fig2a):
    result = classify(fig2a)
    assert result.verdict is Verdict.QZE
    assert result.g2 == pytest.approx(-0.02, rel=1e-14)
    assert result.gamma0 == pytest.approx(2 * math.pi * 0.01, rel=1e-14)


def test_classify_lorentzian_detuned_is_qaze(fig2b):
    # 3 Omega^2 = 12 lam^2 > lam^2
    assert classify(fig2b).verdict is Verdict.QAZE


def test_classify_powerlaw_trio():
    assert classify(powerlaw(0.5)).verdict is Verdict.QZE
    assert classify(powerlaw(1.0)).verdict is Verdict.INDETERMINATE
    assert classify(powerlaw(1.5)).verdict is Verdict.QAZE


def test_classify_hydrogenlike_sides(hydro4, hydro1):
    assert classify(hydro4).verdict is Verdict.QZE
    assert classify(hydro1).verdict is Verdict.QAZE


def test_classify_verdict_follows_curvature_sign():
    configs = [powerlaw(s) for s in (0.3, 0.8, 1.2, 2.0, 3.0)]
    configs += [z.SystemConfig(d, FIG2_SPEC) for d in (7.0, 9.0, 9.6, 10.0)]
    for cfg in configs:
        res = classify(cfg)
        eps = z.criterion.default_g2_eps(cfg)
        if res.g2 < -eps:
            assert res.verdict is Verdict.QZE
        elif res.g2 > eps:
            assert res.verdict is Verdict.QAZE
        else:
            assert res.verdict is Verdict.INDETERMINATE


def test_classify_never_throws_on_degenerate_curvature():
    wc = math.sqrt(7.0 / 3.0)
    res = classify(z.SystemConfig(1.0, z.Hydrogenlike(1e-3, wc)))
    assert res.verdict is Verdict.INDETERMINATE
    assert ValidityWarning.G2_NEAR_ZERO in res.validity.warnings


# --- asymptotic rate ------------------------------------------------------

def closed_form_ratio(omega_big, lam, tau):
    # independent oracle: substitute the Lorentzian curvature into the
    # asymptotic rate, 1 + 4 (3 Omega^2 - lam^2) / ((Omega^2 + lam^2)^2 tau^2)
    return 1.0 + 4.0 * (3.0 * omega_big**2 - lam**2) / (
        (omega_big**2 + lam**2) ** 2 * tau**2)


def test_gamma_approx_resonant_value(fig2a):
    est = gamma_approx(fig2a, 5.0)
    assert est.ratio == pytest.approx(closed_form_ratio(0.0, 1.0, 5.0), rel=1e-13)
    assert est.ratio == pytest.approx(0.84, rel=1e-13)


def test_gamma_approx_detuned_value(fig2b):
    est = gamma_approx(fig2b, 5.0)
    assert est.ratio == pytest.approx(closed_form_ratio(2.0, 1.0, 5.0), rel=1e-13)
    assert est.ratio == pytest.approx(1.0 + 44.0 / 625.0, rel=1e-13)


def test_gamma_approx_long_time_limit(fig2b):
    assert gamma_approx(fig2b, 1e8).ratio == pytest.approx(1.0, abs=1e-14)


def test_gamma_approx_warns_when_negative(fig2a):
    with pytest.warns(PracticalRegimeWarning):
        est = gamma_approx(fig2a, 0.05)
    assert est.gamma_eff < 0.0  # reported as-is


def test_gamma_approx_equals_gamma0_plus_main_lobe(fig2b):
    for tau in (0.3, 1.0, 4.0):
        est = gamma_approx(fig2b, tau)
        assert est.gamma_eff == z.free_decay_rate(fig2b) + z.gamma1_main_lobe(
            fig2b, tau)


def test_gamma_approx_monotone_toward_gamma0():
    for cfg in (powerlaw(0.5), powerlaw(2.5)):
        g2 = cfg.spectrum.second_derivative(cfg.delta)
        taus = np.linspace(TWO_PI / cfg.delta, 40.0, 12)
        vals = [gamma_approx(cfg, t).gamma_eff for t in taus]
        diffs = np.sign(np.diff(vals))
        assert np.all(diffs == -math.copysign(1.0, g2))


# --- monotonicity enum ------------------------------------------------------

def test_monotonicity_examples(hydro4, hydro1):
    assert monotonicity_sign(hydro4) is Trend.INCREASING_TO_GAMMA0
    assert monotonicity_sign(hydro1) is Trend.DECREASING_TO_GAMMA0
    wc = math.sqrt(7.0 / 3.0)
    assert monotonicity_sign(
        z.SystemConfig(1.0, z.Hydrogenlike(1e-3, wc))) is Trend.FLAT


# --- boundary bisection ------------------------------------------------------

def test_boundary_hydrogenlike_cutoff():
    root = boundary_find(lambda wc: z.SystemConfig(1.0, z.Hydrogenlike(1e-3, wc)),
                         1.0, 4.0)
    assert root == pytest.approx(math.sqrt(7.0 / 3.0), rel=1e-9)


def test_boundary_lorentzian_detuning():
    root = boundary_find(lambda d: z.SystemConfig(d, FIG2_SPEC), 8.0, 10.0)
    assert 10.0 - root == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-9)


def test_boundary_powerlaw_near_ohmic():
    # at omega_c = 100 delta the exact root of s^2 - s(1+2r) + r^2 (r = 1/100)
    r = 0.01
    expect = ((1.0 + 2.0 * r) + math.sqrt(1.0 + 4.0 * r)) / 2.0
    root = boundary_find(lambda s: z.SystemConfig(1.0, z.PowerLaw(1e-3, s, 100.0)),
                         0.5, 1.5)
    assert root == pytest.approx(expect, rel=1e-9)
    assert abs(root - 1.0) < 0.05  # close to the Ohmic point


def test_boundary_residual_property():
    lo, hi = 1.0, 4.0
    family = lambda wc: z.SystemConfig(1.0, z.Hydrogenlike(1e-3, wc))
    root = boundary_find(family, lo, hi)
    g2 = lambda p: family(p).spectrum.second_derivative(1.0)
    endpoint_scale = max(abs(g2(lo)), abs(g2(hi)))
    assert abs(g2(root)) < 1e-9 * endpoint_scale


def test_boundary_no_sign_change():
    with pytest.raises(NoSignChangeError):
        boundary_find(lambda wc: z.SystemConfig(1.0, z.Hydrogenlike(1e-3, wc)),
                      2.0, 4.0)
    with pytest.raises(DomainError):
        boundary_find(lambda wc: z.SystemConfig(1.0, z.Hydrogenlike(1e-3, wc)),
                      4.0, 2.0)


# --- validity report ---------------------------------------------------------

def test_validity_hydrogen_atom_regime():
    report = validity_check(z.SystemConfig(1.0, z.Hydrogenlike(1e-3, 550.0)))
    assert ValidityWarning.DELTA_FAR_BELOW_CUTOFF in report.warnings
    assert report.delta_over_cutoff == pytest.approx(1.0 / 550.0)


def test_validity_moderate_cutoff_clean(hydro4):
    report = validity_check(hydro4)
    assert ValidityWarning.DELTA_FAR_BELOW_CUTOFF not in report.warnings
    assert report.delta_over_cutoff == 0.25


def test_validity_centroid_warning_for_steep_powerlaw():
    report = validity_check(powerlaw(3.5))
    assert ValidityWarning.DELTA_FAR_BELOW_CENTROID in report.warnings
    # centroid of w^s e^(-w/wc) sits at (s+1) wc = 45 delta
    assert report.delta_over_centroid == pytest.approx(1.0 / 45.0, rel=1e-12)


def test_validity_strong_coupling_flag():
    hot = z.SystemConfig(10.0, z.Lorentzian(0.2, 10.0, 1.0))  # gamma0 = 1.26
    assert ValidityWarning.STRONG_COUPLING_SUSPECT in validity_check(hot).warnings
    assert ValidityWarning.STRONG_COUPLING_SUSPECT not in validity_check(
        z.SystemConfig(10.0, FIG2_SPEC)).warnings


def test_validity_no_cutoff_for_lorentzian(fig2a):
    assert validity_check(fig2a).delta_over_cutoff is None


# --- coupling-strength scaling ----------------------------------------------

def test_coupling_scaling_leaves_ratios_and_verdicts_unchanged():
    for cfg in (z.SystemConfig(8.0, FIG2_SPEC), powerlaw(1.5),
                z.SystemConfig(1.0, z.Hydrogenlike(1e-3, 4.0))):
        scaled = z.SystemConfig(cfg.delta, cfg.spectrum.scaled(4.0))
        assert classify(cfg).verdict is classify(scaled).verdict
        for tau in (TWO_PI / cfg.delta, 8.0 / cfg.delta):
            assert (z.gamma_ut(cfg, tau).ratio
                    == z.gamma_ut(scaled, tau).ratio)
            assert (gamma_approx(cfg, tau).ratio
                    == gamma_approx(scaled, tau).ratio)
