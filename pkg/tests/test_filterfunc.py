import math

import numpy as np
import pytest
from scipy import integrate
from scipy.special import sici

import zenoscan as z
from zenoscan import (DomainError, ModelMismatchError, PracticalRegimeWarning,
                      filter_value, gamma1_main_lobe, gamma1_minor_lobes,
                      gamma_minor_lobe_corrected, gamma_ut, main_lobe_fraction)

from conftest import FIG2_SPEC, TWO_PI, powerlaw


# --- filter function ----------------------------------------------------------

def test_filter_params_practical_bound():
    assert z.FilterParams(1.0).is_practical(delta=10.0)
    assert not z.FilterParams(0.5).is_practical(delta=10.0)
    assert z.FilterParams(TWO_PI / 10.0).is_practical(delta=10.0)
    with pytest.raises(z.InvalidModelError):
        z.FilterParams(0.0)


def test_filter_center_and_first_zero():
    tau = 3.7
    assert filter_value(5.0, tau, 5.0) == pytest.approx(tau / TWO_PI, rel=1e-15)
    assert filter_value(5.0, tau, 5.0 + TWO_PI / tau) == pytest.approx(
        0.0, abs=1e-18)
    with pytest.raises(DomainError):
        filter_value(5.0, 0.0, 5.0)


def test_filter_series_branch_against_high_precision():
    import mpmath
    tau, delta = 2.0, 5.0
    # points on both sides of the |x| = 5e-5 series switch
    for x in (1e-7, 4.9e-5, 5.1e-5, 1e-3):
        w = delta + 2.0 * x / tau
        with mpmath.workdps(40):
            oracle = tau / (2 * mpmath.pi) * (mpmath.sin(x) / mpmath.mpf(x)) ** 2
        assert filter_value(delta, tau, w) == pytest.approx(float(oracle),
                                                            rel=1e-13)


def test_filter_normalization_to_1e10():
    # per-lobe sum out to 400 pi plus the exact integration-by-parts tail
    # int_X^inf sin^2 u / u^2 du = sin^2 X / X + (pi/2 - Si(2X))
    tau, delta = 1.3, 4.0
    lobes = 200
    total = 0.0
    for k in range(-lobes, lobes):
        a = delta + k * TWO_PI / tau
        b = a + TWO_PI / tau
        v, _ = integrate.quad(lambda w: filter_value(delta, tau, w), a, b,
                              epsabs=1e-15, epsrel=1e-13, limit=60)
        total += v
    x_edge = lobes * math.pi  # in sinc argument units
    si, _ = sici(2.0 * x_edge)
    tail = 2.0 * (math.sin(x_edge) ** 2 / x_edge + (math.pi / 2.0 - si)) / math.pi
    assert total + tail == pytest.approx(1.0, abs=1e-10)


def test_filter_self_similarity_across_four_decades():
    rng = np.random.default_rng(7)
    delta = 3.0
    xs = np.linspace(-8.0, 8.0, 41)
    taus = 10.0 ** rng.uniform(-2.0, 2.0, size=12)
    ref = filter_value(delta, 1.0, delta + xs) * TWO_PI
    for tau in taus:
        cur = filter_value(delta, tau, delta + xs / tau) * (TWO_PI / tau)
        assert np.allclose(cur, ref, rtol=1e-13, atol=1e-16)


def test_main_lobe_fraction_constant():
    vals = [main_lobe_fraction(t) for t in (0.01, 1.0, 1000.0)]
    for v in vals:
        assert v == pytest.approx(0.903, abs=1e-3)
    assert abs(main_lobe_fraction(1.0) - main_lobe_fraction(10.0)) < 1e-10
    assert main_lobe_fraction(1.0, half_width_lobes=2) > main_lobe_fraction(1.0)


# --- overlap-integral quadrature ----------------------------------------------

def riemann_oracle(config, tau, upper, n=1_000_000):
    """Brute-force trapezoid of 2 pi G F on a dense uniform grid."""
    w = np.linspace(0.0, upper, n)
    f = TWO_PI * config.spectrum.value(w) * filter_value(config.delta, tau, w)
    return np.trapezoid(f, w)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_gamma_ut_matches_riemann_oracle_lorentzian(fig2a, k):
    tau = k * TWO_PI / fig2a.delta
    oracle = riemann_oracle(fig2a, tau, upper=90.0)
    assert gamma_ut(fig2a, tau).gamma_eff == pytest.approx(oracle, rel=1e-5)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_gamma_ut_matches_riemann_oracle_hydrogenlike(hydro4, k):
    tau = k * TWO_PI / hydro4.delta
    oracle = riemann_oracle(hydro4, tau, upper=40.0)
    assert gamma_ut(hydro4, tau).gamma_eff == pytest.approx(oracle, rel=1e-5)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_gamma_ut_matches_riemann_oracle_powerlaw(k):
    cfg = powerlaw(1.5)
    tau = k * TWO_PI / cfg.delta
    oracle = riemann_oracle(cfg, tau, upper=200.0, n=2_000_000)
    assert gamma_ut(cfg, tau).gamma_eff == pytest.approx(oracle, rel=1e-5)


def test_gamma_ut_long_interval_limit(fig2a):
    # F -> delta(w - delta): the ratio approaches 1 like 1/(lam tau)
    est = gamma_ut(fig2a, 1e4)
    assert est.ratio == pytest.approx(1.0, abs=1e-3)


def test_gamma_ut_flat_band_spectrum():
    # wide flat band around delta: gamma_eff ~ 2 pi c within the lobe coverage
    c = 0.02
    delta, tau = 10.0, 4.0
    grid = np.linspace(0.0, 40.0, 161)
    cfg = z.SystemConfig(delta, z.Tabulated([(w, c) for w in grid]))
    est = gamma_ut(cfg, tau)
    oracle = riemann_oracle(cfg, tau, upper=40.0)
    assert est.gamma_eff == pytest.approx(oracle, rel=1e-6)
    assert est.gamma_eff == pytest.approx(TWO_PI * c, rel=2e-2)
    assert est.gamma_eff < TWO_PI * c  # band edges cut part of the filter


def test_gamma_ut_nonnegative_and_err_estimate(fig2b):
    rng = np.random.default_rng(3)
    for tau in 10.0 ** rng.uniform(-2, 1.5, size=10):
        est = gamma_ut(fig2b, float(tau))
        assert est.gamma_eff >= 0.0
        assert est.err_estimate < 1e-6


def test_gamma_ut_domain_error(fig2a):
    with pytest.raises(DomainError):
        gamma_ut(fig2a, -1.0)


# --- main-lobe curvature term ---------------------------------------------

def test_gamma1_main_lobe_values(fig2a):
    got = gamma1_main_lobe(fig2a, 5.0)  # lam tau = 5
    # (4 pi / tau^2) G''(delta) with G''(delta) = -2 d0 / lam^2
    assert got == pytest.approx(4.0 * math.pi / 25.0 * (-0.02), rel=1e-14)
    assert got == pytest.approx(-0.01005309649148734, rel=1e-12)
    # ratio to gamma0 matches the closed-form -4/(lam tau)^2
    assert got / z.free_decay_rate(fig2a) == pytest.approx(-0.16, rel=1e-12)


def test_gamma1_main_lobe_zero_and_sign():
    wc = math.sqrt(7.0 / 3.0)
    cfg = z.SystemConfig(1.0, z.Hydrogenlike(0.2, wc))
    assert gamma1_main_lobe(cfg, 2.0) == pytest.approx(0.0, abs=1e-18)
    for cfg in (powerlaw(0.5), powerlaw(2.5)):
        g2 = cfg.spectrum.second_derivative(cfg.delta)
        assert math.copysign(1, gamma1_main_lobe(cfg, 3.0)) == math.copysign(1, g2)


# --- minor-lobe tails ----------------------------------------------------------

def flat_box_config(height=0.01, delta=10.0, upper=15.0):
    grid = np.linspace(0.0, upper, 61)
    return z.SystemConfig(delta, z.Tabulated([(w, height) for w in grid]))


def test_minor_lobes_flat_box_isolates_tail_term():
    # spectrum equal to G(delta) on its support, ending at the main-lobe edge:
    # the upper tail reduces to the analytic -G(delta)/pi of the 1/x^2 integral
    cfg = flat_box_config()
    tau = TWO_PI / 5.0  # edge delta + 2 pi/tau = 15 exactly
    plus, minus = gamma1_minor_lobes(cfg, tau)
    assert plus == pytest.approx(-0.01 / math.pi, rel=1e-9)
    assert minus == pytest.approx(0.0, abs=1e-12)
    # quadrature oracle over [15, 1e5] plus the analytic remainder
    oracle, _ = integrate.quad(lambda w: (0.0 - 0.01) / (w - 10.0) ** 2,
                               15.0, 1e5, limit=400)
    oracle += -0.01 / (1e5 - 10.0)
    assert plus == pytest.approx(2.0 / tau * oracle, rel=1e-6)


def test_minor_lobes_practical_regime_warning(fig2a):
    with pytest.warns(PracticalRegimeWarning):
        plus, minus = gamma1_minor_lobes(fig2a, 0.5 * TWO_PI / fig2a.delta)
    assert minus == 0.0


def test_minor_lobes_upper_dominates_for_steep_superohmic():
    cfg = powerlaw(2.5)
    tau = 4.0 * math.pi
    plus, minus = gamma1_minor_lobes(cfg, tau)
    assert abs(plus) > abs(gamma1_main_lobe(cfg, tau))


def test_minor_lobe_lower_bound_for_rising_spectrum():
    # G below delta never exceeds G(delta) (super-Ohmic rise toward the
    # peak): the lower tail stays within (-G(delta)/pi, 0]
    for s_exp in (1.5, 2.5, 3.5):
        cfg = powerlaw(s_exp)
        _, minus = gamma1_minor_lobes(cfg, 4.0 * math.pi)
        bound = cfg.spectrum.value(cfg.delta) / math.pi
        assert -bound < minus <= 0.0


# --- composed / corrected estimates ---------------------------------------

def test_decomposition_tracks_gamma_ut_increasingly_well(fig2a):
    errs = []
    for k in (2, 4, 8):
        tau = k * TWO_PI / fig2a.delta
        ut = gamma_ut(fig2a, tau).gamma_eff
        composed = (z.free_decay_rate(fig2a) + gamma1_main_lobe(fig2a, tau)
                    + sum(gamma1_minor_lobes(fig2a, tau)))
        errs.append(abs(composed - ut) / ut)
    assert errs[0] > errs[1] > errs[2]


def test_corrected_estimate_closed_form_values():
    cfg = powerlaw(2.5)
    tau = 4.0 * math.pi
    est = gamma_minor_lobe_corrected(cfg, tau)
    spec = cfg.spectrum
    expect = 1.0 + spec.a * math.gamma(1.5) / (
        math.pi * spec.value(1.0) * tau)
    assert est.ratio == pytest.approx(expect, rel=1e-12)
    sharp = gamma_minor_lobe_corrected(cfg, tau, sharp=True)
    assert sharp.ratio < est.ratio  # incomplete gamma < complete gamma


def test_corrected_estimate_model_mismatch():
    with pytest.raises(ModelMismatchError):
        gamma_minor_lobe_corrected(z.SystemConfig(10.0, FIG2_SPEC), 1.0,
                                   closed_form=True)
    with pytest.raises(ModelMismatchError):
        gamma_minor_lobe_corrected(powerlaw(0.8), 1.0, closed_form=True)


def test_corrected_estimate_diverges_toward_ohmic():
    tau = 4.0 * math.pi
    near = gamma_minor_lobe_corrected(powerlaw(1.001), tau).ratio - 1.0
    far = gamma_minor_lobe_corrected(powerlaw(1.5), tau).ratio - 1.0
    assert near > 50.0 * far  # Gamma(s-1) pole at s = 1


def test_corrected_estimate_long_time_limit():
    est = gamma_minor_lobe_corrected(powerlaw(2.5), 1e6)
    assert est.ratio == pytest.approx(1.0, abs=1e-5)


def test_corrected_estimate_numeric_composition_non_powerlaw(hydro4):
    tau = 4.0 * math.pi
    est = gamma_minor_lobe_corrected(hydro4, tau)
    composed = (z.free_decay_rate(hydro4) + gamma1_main_lobe(hydro4, tau)
                + sum(gamma1_minor_lobes(hydro4, tau)))
    assert est.gamma_eff == pytest.approx(composed, rel=1e-12)
    assert est.method is z.Method.MINOR_LOBE_CORRECTED
