"""Zeno vs anti-Zeno classification from the spectral curvature at delta.

The measurement correction to the golden-rule rate is, to leading order in
the inverse measurement interval,

    gamma_eff(tau) ~ 2 pi G(delta) + (4 pi / tau^2) G''(delta),

so the sign of G''(delta) decides the effect: convex spectra (negative
curvature) suppress the decay (QZE), concave ones accelerate it (QAZE).
A curvature too small in magnitude to beat the neglected terms gives no
verdict; that degeneracy tolerance and the validity diagnostics below mark
the regimes where the criterion is known to lose its footing (transition
frequency far below the spectral cutoff or center of gravity).
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, NoSignChangeError, PracticalRegimeWarning
from .filterfunc import DecayEstimate, Method, gamma1_main_lobe, make_estimate
from .spectra import SystemConfig, free_decay_rate

# |G''(delta)| below this fraction of the golden-rule curvature scale
# G(delta)/delta^2 counts as degenerate.  The exact Ohmic curvature at
# omega_c = 10 delta is -0.19 on that scale (pure cutoff terms), while the
# neighboring sub- and super-Ohmic baths sit at -0.34 and +0.46: a quarter
# separates "all cutoff, no verdict" from genuine convexity.
G2_EPS_SCALE = 0.25

# validity thresholds (empirical onsets: hydrogenlike QAZE reappears beyond
# ~12 delta, sub-Ohmic s=0.8 beyond ~20 delta; conservative defaults)
DELTA_OVER_CUTOFF_MIN = 1.0 / 12.0
DELTA_OVER_CENTROID_MIN = 1.0 / 10.0
STRONG_COUPLING_GAMMA0_FRACTION = 0.1


class Verdict(enum.Enum):
    QZE = "qze"
    QAZE = "qaze"
    INDETERMINATE = "indeterminate"


class Trend(enum.Enum):
    INCREASING_TO_GAMMA0 = "increasing_to_gamma0"
    DECREASING_TO_GAMMA0 = "decreasing_to_gamma0"
    FLAT = "flat"


class ValidityWarning(enum.Enum):
    DELTA_FAR_BELOW_CUTOFF = "delta_far_below_cutoff"
    DELTA_FAR_BELOW_CENTROID = "delta_far_below_centroid"
    G2_NEAR_ZERO = "g2_near_zero"
    STRONG_COUPLING_SUSPECT = "strong_coupling_suspect"


@dataclass(frozen=True)
class ValidityReport:
    delta_over_cutoff: float | None
    delta_over_centroid: float
    warnings: tuple[ValidityWarning, ...]

    def to_dict(self) -> dict:
        return {"delta_over_cutoff": self.delta_over_cutoff,
                "delta_over_centroid": self.delta_over_centroid,
                "warnings": [w.value for w in self.warnings]}


@dataclass(frozen=True)
class ZenoClassification:
    verdict: Verdict
    g2: float
    gamma0: float
    validity: ValidityReport

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "g2": self.g2,
                "gamma0": self.gamma0, "validity": self.validity.to_dict()}


def default_g2_eps(config: SystemConfig) -> float:
    return G2_EPS_SCALE * config.spectrum.value(config.delta) / config.delta**2


def validity_check(config: SystemConfig,
                   g2_eps: float | None = None) -> ValidityReport:
    """Diagnostics for the regimes where the curvature criterion degrades."""
    spec, delta = config.spectrum, config.delta
    if g2_eps is None:
        g2_eps = default_g2_eps(config)
    flags = []
    cutoff = spec.cutoff()
    over_cutoff = delta / cutoff if cutoff else None
    if over_cutoff is not None and over_cutoff < DELTA_OVER_CUTOFF_MIN:
        flags.append(ValidityWarning.DELTA_FAR_BELOW_CUTOFF)
    over_centroid = delta / spec.centroid()
    if over_centroid < DELTA_OVER_CENTROID_MIN:
        flags.append(ValidityWarning.DELTA_FAR_BELOW_CENTROID)
    if abs(spec.second_derivative(delta)) <= g2_eps:
        flags.append(ValidityWarning.G2_NEAR_ZERO)
    if free_decay_rate(config) > STRONG_COUPLING_GAMMA0_FRACTION * delta:
        flags.append(ValidityWarning.STRONG_COUPLING_SUSPECT)
    return ValidityReport(over_cutoff, over_centroid, tuple(flags))


def classify(config: SystemConfig,
             g2_eps: float | None = None) -> ZenoClassification:
    """Verdict from the sign of G''(delta), with validity report attached."""
    if g2_eps is None:
        g2_eps = default_g2_eps(config)
    g2 = config.spectrum.second_derivative(config.delta)
    if g2 < -g2_eps:
        verdict = Verdict.QZE
    elif g2 > g2_eps:
        verdict = Verdict.QAZE
    else:
        verdict = Verdict.INDETERMINATE
    return ZenoClassification(verdict, g2, free_decay_rate(config),
                              validity_check(config, g2_eps))


def gamma_approx(config: SystemConfig, tau: float) -> DecayEstimate:
    """Asymptotic rate gamma0 + (4 pi / tau^2) G''(delta).

    Negative values at very small tau are reported as-is; the formula is
    asymptotic in 1/tau and such intervals are below the practical bound.
    """
    if not tau > 0:
        raise DomainError("tau must be > 0")
    gamma0 = free_decay_rate(config)
    gamma = gamma0 + gamma1_main_lobe(config, tau)
    if gamma < 0.0:
        warnings.warn(
            "second-derivative approximation is negative: tau is below the "
            "practical regime of the asymptotic formula",
            PracticalRegimeWarning, stacklevel=2)
    return make_estimate(tau, gamma, gamma0, Method.SECOND_DERIV_APPROX, 0.0)


def monotonicity_sign(config: SystemConfig,
                      g2_eps: float | None = None) -> Trend:
    """Direction from which the asymptotic rate approaches gamma0."""
    if g2_eps is None:
        g2_eps = default_g2_eps(config)
    g2 = config.spectrum.second_derivative(config.delta)
    if g2 < -g2_eps:
        return Trend.INCREASING_TO_GAMMA0
    if g2 > g2_eps:
        return Trend.DECREASING_TO_GAMMA0
    return Trend.FLAT


def boundary_find(config_at: Callable[[float], SystemConfig],
                  lo: float, hi: float, rel_tol: float = 1e-10) -> float:
    """Parameter value where G''(delta) changes sign, by bisection.

    ``config_at`` maps the swept parameter to a full system configuration.
    Assumes exactly one sign change on [lo, hi] (endpoint signs are
    checked; multiple interior roots are not detected).
    """
    if not (hi > lo):
        raise DomainError("need hi > lo")

    def g2(p: float) -> float:
        cfg = config_at(p)
        return cfg.spectrum.second_derivative(cfg.delta)

    f_lo, f_hi = g2(lo), g2(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise NoSignChangeError(
            f"G''(delta) has the same sign at both endpoints "
            f"({f_lo:.3g} and {f_hi:.3g})")
    a, b, f_a = lo, hi, f_lo
    while b - a > rel_tol * max(abs(a), abs(b)):
        m = 0.5 * (a + b)
        if m <= a or m >= b:  # interval at floating-point resolution
            break
        f_m = g2(m)
        if f_m == 0.0:
            return m
        if math.copysign(1.0, f_m) == math.copysign(1.0, f_a):
            a, f_a = m, f_m
        else:
            b = m
    return 0.5 * (a + b)
