"""Analytically solvable Lorentzian bath: residue amplitude and exact rates.

Extending the spectral support to the whole line (threshold effects
neglected), the resolvent has two poles

    a_pm = [Omega - i lam +- sqrt((Omega - i lam)^2 + 4 pi d0 lam)] / 2,
    Omega = omega0 - delta,

and the excited-state amplitude is a two-exponential combination of them.
This module grounds the cross-method acceptance tests: the exact repeated-
measurement rate and the closed-form overlap-integral rate both follow.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import AmplitudeUnderflowError, DegenerateRootsError, DomainError
from .filterfunc import DecayEstimate, Method, make_estimate
from .spectra import Lorentzian


@dataclass(frozen=True)
class LorentzianRoots:
    """Resolvent poles; Vieta: a+ + a- = Omega - i lam, a+ a- = -pi d0 lam."""

    a_plus: complex
    a_minus: complex
    omega_big: float  # detuning Omega = omega0 - delta


def roots(spec: Lorentzian, delta: float) -> LorentzianRoots:
    """Pole pair for the given transition frequency (principal square root)."""
    omega_big = spec.omega0 - delta
    b = complex(omega_big, -spec.lam)
    disc = b * b + 4.0 * math.pi * spec.d0 * spec.lam
    r = cmath.sqrt(disc)
    a_plus = (b + r) / 2.0
    a_minus = (b - r) / 2.0
    if abs(a_plus - a_minus) < 1e-12 * (abs(a_plus) + abs(a_minus)):
        raise DegenerateRootsError(
            "resolvent roots coincide (exceptional point); the confluent "
            "limit is not implemented")
    return LorentzianRoots(a_plus, a_minus, omega_big)


def amplitude(rts: LorentzianRoots, t: float) -> complex:
    """Excited-state amplitude (a+ e^{-i a- t} - a- e^{-i a+ t}) / (a+ - a-)."""
    ap, am = rts.a_plus, rts.a_minus
    return (ap * cmath.exp(-1j * am * t) - am * cmath.exp(-1j * ap * t)) / (ap - am)


def _gamma0(spec: Lorentzian, delta: float) -> float:
    return 2.0 * math.pi * spec.value(delta)


def gamma_exact(spec: Lorentzian, delta: float, tau: float) -> DecayEstimate:
    """Exact repeated-measurement rate -(2/tau) ln|alpha(tau)|."""
    if not tau > 0:
        raise DomainError("tau must be > 0")
    a = abs(amplitude(roots(spec, delta), tau))
    if a < 1e-300:
        raise AmplitudeUnderflowError(f"|alpha({tau})| underflowed")
    gamma = -2.0 / tau * math.log(a)
    return make_estimate(tau, gamma, _gamma0(spec, delta),
                         Method.EXACT_LORENTZIAN, 0.0)


def closed_form_lorentzian(spec: Lorentzian, delta: float,
                           tau: float) -> DecayEstimate:
    """Closed-form overlap-integral rate for the Lorentzian spectrum.

    gamma_eff = gamma0 [1 + (sin th - sin(th + Omega tau) e^{-lam tau}) / (lam tau)]
    with sin th = (Omega^2 - lam^2)/(Omega^2 + lam^2) and
    cos th = 2 Omega lam / (Omega^2 + lam^2).
    """
    if not tau > 0:
        raise DomainError("tau must be > 0")
    omega_big = spec.omega0 - delta
    lam = spec.lam
    # common denominator Omega^2 + lam^2 cancels inside atan2
    theta = math.atan2(omega_big**2 - lam**2, 2.0 * omega_big * lam)
    lt = lam * tau
    gamma0 = _gamma0(spec, delta)
    factor = 1.0 + (math.sin(theta)
                    - math.sin(theta + omega_big * tau) * math.exp(-lt)) / lt
    return make_estimate(tau, gamma0 * factor, gamma0,
                         Method.CLOSED_FORM_LORENTZIAN, 0.0)
