"""Spectral density models and the scalar quantities derived from them.

All frequencies are dimensionless in one user-chosen reference unit
(hbar = 1); rates share that unit and times carry its inverse.

Four bath models are supported:

    Lorentzian    G(w) = d0 lam^2 / ((w - omega0)^2 + lam^2)
    Hydrogenlike  G(w) = eta w / (1 + (w/omega_c)^2)^4
    PowerLaw      G(w) = a omega_c^(1-s) w^s exp(-w/omega_c)
    Tabulated     cubic-spline interpolation of (w, g) samples, 0 off-grid

Each model provides the value, analytic first/second derivatives, the total
spectral weight, and a few geometric hints (peak, cutoff, support) used by
the oscillatory quadrature and the validity diagnostics.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline

from .errors import DivergenceError, DomainError, InvalidModelError
from .gammainc import complete_gamma

_QUAD_RTOL = 1e-10  # derived scalar integrals are cheap; keep them tight


def panel_quad_to_inf(func, lo: float, spec: "SpectrumModel",
                      epsrel: float = 1e-12) -> tuple[float, float]:
    """Integrate func over [lo, inf) with geometrically doubling panels.

    A single adaptive pass over a huge or infinite interval can step right
    over a narrow spectral peak (reporting a tiny error for a wrong value);
    panels pinned to the peak scale make that impossible.  The remainder
    beyond the spectral support is handled by one infinite-bound pass over
    the then smooth, monotone integrand.
    """
    base = max(spec.peak_frequency(), 1e-6)
    upper = spec.support_upper(rel=1e-14)
    edges = [lo]
    x = base / 8.0
    while x <= lo:
        x *= 2.0
    while x < upper:
        edges.append(x)
        x *= 2.0
    if upper > edges[-1]:
        edges.append(upper)
    total = 0.0
    err = 0.0
    for a, b in zip(edges, edges[1:]):
        v, e = integrate.quad(func, a, b, epsrel=epsrel, limit=200)
        total += v
        err += e
    with warnings.catch_warnings():
        # the remainder is ~1e-14 of the total; QUADPACK's roundoff heuristics
        # on it are noise, and its value is cross-checked by the panel sweep
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        v, e = integrate.quad(func, edges[-1], np.inf, epsrel=1e-9, limit=200)
    return total + v, err + e


def _check_omega_nonneg(omega) -> None:
    if np.any(np.asarray(omega) < 0.0):
        raise DomainError("spectral densities are defined for omega >= 0")


def _check_omega_pos(omega) -> None:
    if np.any(np.asarray(omega) <= 0.0):
        raise DomainError("derivative queries require omega > 0")


class SpectrumModel:
    """Common interface of the spectral-density models."""

    def value(self, omega):
        raise NotImplementedError

    def second_derivative(self, omega):
        raise NotImplementedError

    def total_weight(self) -> float:
        """Integral of G defining the inverse squared Zeno time."""
        raise NotImplementedError

    def centroid(self) -> float:
        """Center of gravity int w G dw / int G dw."""
        raise NotImplementedError

    def cutoff(self) -> float | None:
        """Hard cutoff frequency if the model has one, else None."""
        return None

    def peak_frequency(self) -> float:
        """Location of the spectral maximum (lobe-summation guard)."""
        raise NotImplementedError

    def support_upper(self, rel: float = 1e-12) -> float:
        """Frequency above which G is negligible at relative level ``rel``."""
        raise NotImplementedError

    def scaled(self, factor: float) -> "SpectrumModel":
        """Copy with the overall coupling multiplied by ``factor``."""
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Lorentzian(SpectrumModel):
    """Finite-band cavity spectrum d0 lam^2 / ((w - omega0)^2 + lam^2)."""

    d0: float
    omega0: float
    lam: float

    def __post_init__(self):
        if not (self.d0 > 0 and self.omega0 > 0 and self.lam > 0):
            raise InvalidModelError("Lorentzian requires d0, omega0, lam > 0")

    def value(self, omega):
        _check_omega_nonneg(omega)
        x = np.asarray(omega, dtype=float) - self.omega0
        out = self.d0 * self.lam**2 / (x * x + self.lam**2)
        return float(out) if np.ndim(omega) == 0 else out

    def first_derivative(self, omega):
        _check_omega_pos(omega)
        x = np.asarray(omega, dtype=float) - self.omega0
        d = x * x + self.lam**2
        out = -2.0 * self.d0 * self.lam**2 * x / d**2
        return float(out) if np.ndim(omega) == 0 else out

    def second_derivative(self, omega):
        _check_omega_pos(omega)
        x = np.asarray(omega, dtype=float) - self.omega0
        d = x * x + self.lam**2
        out = 2.0 * self.d0 * self.lam**2 * (3.0 * x * x - self.lam**2) / d**3
        return float(out) if np.ndim(omega) == 0 else out

    def total_weight(self) -> float:
        # Full-line weight pi d0 lam: the analytically solvable Lorentzian
        # dynamics (resolvent roots, exponential kernel) live on the extended
        # frequency axis, and the short-time law of the exact solution is
        # governed by this weight, not by the [0, inf) restriction.
        return math.pi * self.d0 * self.lam

    def centroid(self) -> float:
        # symmetric center; the mean of the [0, inf)-restricted profile
        # diverges logarithmically and is not useful as a diagnostic
        return self.omega0

    def peak_frequency(self) -> float:
        return self.omega0

    def support_upper(self, rel: float = 1e-12) -> float:
        return self.omega0 + self.lam / math.sqrt(rel)

    def scaled(self, factor: float) -> "Lorentzian":
        return Lorentzian(self.d0 * factor, self.omega0, self.lam)

    def to_dict(self) -> dict:
        return {"type": "lorentzian", "d0": self.d0, "omega0": self.omega0,
                "lam": self.lam}


@dataclass(frozen=True)
class Hydrogenlike(SpectrumModel):
    """Hydrogenlike coupling spectrum eta w / (1 + (w/omega_c)^2)^4."""

    eta: float
    omega_c: float

    def __post_init__(self):
        if not (self.eta > 0 and self.omega_c > 0):
            raise InvalidModelError("Hydrogenlike requires eta, omega_c > 0")

    def value(self, omega):
        _check_omega_nonneg(omega)
        w = np.asarray(omega, dtype=float)
        out = self.eta * w / (1.0 + (w / self.omega_c) ** 2) ** 4
        return float(out) if np.ndim(omega) == 0 else out

    def first_derivative(self, omega):
        _check_omega_pos(omega)
        w = np.asarray(omega, dtype=float)
        wc2 = self.omega_c**2
        out = self.eta * self.omega_c**8 * (wc2 - 7.0 * w * w) / (wc2 + w * w) ** 5
        return float(out) if np.ndim(omega) == 0 else out

    def second_derivative(self, omega):
        _check_omega_pos(omega)
        w = np.asarray(omega, dtype=float)
        wc2 = self.omega_c**2
        out = (8.0 * self.eta * w * self.omega_c**8
               * (7.0 * w * w - 3.0 * wc2) / (wc2 + w * w) ** 6)
        return float(out) if np.ndim(omega) == 0 else out

    def total_weight(self) -> float:
        return self.eta * self.omega_c**2 / 6.0

    def centroid(self) -> float:
        # int u^2/(1+u^2)^4 du / int u/(1+u^2)^4 du = (pi/32) / (1/6)
        return 3.0 * math.pi / 16.0 * self.omega_c

    def cutoff(self) -> float | None:
        return self.omega_c

    def peak_frequency(self) -> float:
        return self.omega_c / math.sqrt(7.0)

    def support_upper(self, rel: float = 1e-12) -> float:
        # tail falls like (omega_c/w)^7 relative to the peak
        return self.omega_c * (3.0 / rel) ** (1.0 / 7.0)

    def scaled(self, factor: float) -> "Hydrogenlike":
        return Hydrogenlike(self.eta * factor, self.omega_c)

    def to_dict(self) -> dict:
        return {"type": "hydrogenlike", "eta": self.eta, "omega_c": self.omega_c}


@dataclass(frozen=True)
class PowerLaw(SpectrumModel):
    """Exponentially cut off power-law bath a omega_c^(1-s) w^s e^(-w/omega_c).

    The exponent s sorts environments into sub-Ohmic (s < 1), Ohmic (s = 1)
    and super-Ohmic (s > 1) families.
    """

    a: float
    s: float
    omega_c: float

    def __post_init__(self):
        if not (self.a > 0 and self.s > 0 and self.omega_c > 0):
            raise InvalidModelError("PowerLaw requires a, s, omega_c > 0")

    def value(self, omega):
        _check_omega_nonneg(omega)
        w = np.asarray(omega, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(
                w > 0.0,
                self.a * self.omega_c ** (1.0 - self.s)
                * w**self.s * np.exp(-w / self.omega_c),
                0.0,
            )
        return float(out) if np.ndim(omega) == 0 else out

    def first_derivative(self, omega):
        _check_omega_pos(omega)
        w = np.asarray(omega, dtype=float)
        pref = self.a * self.omega_c ** (1.0 - self.s) * np.exp(-w / self.omega_c)
        out = pref * (self.s * w ** (self.s - 1.0) - w**self.s / self.omega_c)
        return float(out) if np.ndim(omega) == 0 else out

    def second_derivative(self, omega):
        """Exact curvature, cutoff terms included.

        Differentiating the model directly gives

            G'' = a omega_c^(1-s) e^(-w/omega_c)
                  [s(s-1) w^(s-2) - 2 s w^(s-1)/omega_c + w^s/omega_c^2]

        whose large-omega_c limit is the familiar s(s-1) a omega_c^(1-s)
        w^(s-2) (see :func:`powerlaw_curvature_large_cutoff`).
        """
        _check_omega_pos(omega)
        w = np.asarray(omega, dtype=float)
        pref = self.a * self.omega_c ** (1.0 - self.s) * np.exp(-w / self.omega_c)
        out = pref * (self.s * (self.s - 1.0) * w ** (self.s - 2.0)
                      - 2.0 * self.s * w ** (self.s - 1.0) / self.omega_c
                      + w**self.s / self.omega_c**2)
        return float(out) if np.ndim(omega) == 0 else out

    def total_weight(self) -> float:
        return self.a * self.omega_c**2 * complete_gamma(self.s + 1.0)

    def centroid(self) -> float:
        # Gamma(s+2)/Gamma(s+1) = s+1
        return (self.s + 1.0) * self.omega_c

    def cutoff(self) -> float | None:
        return self.omega_c

    def peak_frequency(self) -> float:
        return self.s * self.omega_c

    def support_upper(self, rel: float = 1e-12) -> float:
        u = math.log(1.0 / rel)
        for _ in range(4):
            u = math.log(1.0 / rel) + self.s * math.log(max(u, 1.0))
        return self.omega_c * u

    def scaled(self, factor: float) -> "PowerLaw":
        return PowerLaw(self.a * factor, self.s, self.omega_c)

    def to_dict(self) -> dict:
        return {"type": "power_law", "a": self.a, "s": self.s,
                "omega_c": self.omega_c}


class Tabulated(SpectrumModel):
    """Cubic-spline interpolation of sampled (omega, g) pairs.

    The spline gives the smooth second derivative the classification
    criterion needs; raw finite differences on tabulated data are too noisy.
    Outside the grid the density is zero.
    """

    def __init__(self, points):
        pts = [(float(w), float(g)) for w, g in points]
        if len(pts) < 4:
            raise InvalidModelError("Tabulated needs at least 4 points")
        w = np.array([p[0] for p in pts])
        g = np.array([p[1] for p in pts])
        if np.any(np.diff(w) <= 0):
            raise InvalidModelError("Tabulated grid must be strictly increasing")
        if w[0] < 0:
            raise InvalidModelError("Tabulated grid must start at omega >= 0")
        if np.any(g < 0):
            raise InvalidModelError("Tabulated values must be non-negative")
        self._w = w
        self._g = g
        self._spline = CubicSpline(w, g)
        # G >= 0 is checked by sampling: a few percent of cubic overshoot is
        # normal near steep descents (clamped at evaluation); anything deeper
        # means the table itself is bad data
        dense = np.linspace(w[0], w[-1], 4097)
        floor = -0.05 * max(g.max(), 1e-300)
        if self._spline(dense).min() < floor:
            raise InvalidModelError("spline interpolant dips well below zero")

    @property
    def points(self):
        return list(zip(self._w.tolist(), self._g.tolist()))

    def __eq__(self, other):
        return (isinstance(other, Tabulated)
                and np.array_equal(self._w, other._w)
                and np.array_equal(self._g, other._g))

    def __repr__(self):
        return f"Tabulated({len(self._w)} points on [{self._w[0]}, {self._w[-1]}])"

    def _inside(self, w):
        return (w >= self._w[0]) & (w <= self._w[-1])

    def value(self, omega):
        _check_omega_nonneg(omega)
        w = np.asarray(omega, dtype=float)
        out = np.where(self._inside(w), np.maximum(self._spline(w), 0.0), 0.0)
        return float(out) if np.ndim(omega) == 0 else out

    def second_derivative(self, omega):
        _check_omega_pos(omega)
        w = np.asarray(omega, dtype=float)
        out = np.where(self._inside(w), self._spline(w, 2), 0.0)
        return float(out) if np.ndim(omega) == 0 else out

    def _check_decayed_tail(self, what: str) -> None:
        if self._g[-1] > 1e-6 * self._g.max():
            raise DivergenceError(
                f"{what}: tabulated spectrum does not decay at its upper edge; "
                "the untabulated tail is unknown")

    def total_weight(self) -> float:
        self._check_decayed_tail("total spectral weight")
        return float(self._spline.integrate(self._w[0], self._w[-1]))

    def centroid(self) -> float:
        weight = self.total_weight()
        if weight == 0.0:  # all-zero table: fall back to the grid center
            return 0.5 * float(self._w[0] + self._w[-1])
        num = integrate.quad(lambda w: w * self.value(w), self._w[0], self._w[-1],
                             epsrel=_QUAD_RTOL, limit=200)[0]
        return num / weight

    def peak_frequency(self) -> float:
        return float(self._w[np.argmax(self._g)])

    def support_upper(self, rel: float = 1e-12) -> float:
        return float(self._w[-1])

    def scaled(self, factor: float) -> "Tabulated":
        return Tabulated([(w, g * factor) for w, g in self.points])

    def to_dict(self) -> dict:
        return {"type": "tabulated", "points": [[w, g] for w, g in self.points]}


AnySpectrum = Union[Lorentzian, Hydrogenlike, PowerLaw, Tabulated]

_SPECTRUM_TYPES = {
    "lorentzian": (Lorentzian, ("d0", "omega0", "lam")),
    "hydrogenlike": (Hydrogenlike, ("eta", "omega_c")),
    "power_law": (PowerLaw, ("a", "s", "omega_c")),
}


def spectrum_from_dict(data: dict) -> SpectrumModel:
    """Build a model from its JSON object form (see ``to_dict``)."""
    try:
        kind = data["type"]
    except (KeyError, TypeError):
        raise InvalidModelError("spectrum object needs a 'type' field")
    if kind == "tabulated":
        if "points" not in data:
            raise InvalidModelError("tabulated spectrum needs 'points'")
        return Tabulated(data["points"])
    if kind not in _SPECTRUM_TYPES:
        raise InvalidModelError(f"unknown spectrum type {kind!r}")
    cls, fields = _SPECTRUM_TYPES[kind]
    missing = [f for f in fields if f not in data]
    if missing:
        raise InvalidModelError(f"{kind} spectrum missing fields {missing}")
    return cls(**{f: float(data[f]) for f in fields})


@dataclass(frozen=True)
class SystemConfig:
    """Transition frequency plus bath: everything the physics needs."""

    delta: float
    spectrum: SpectrumModel

    def __post_init__(self):
        if not self.delta > 0:
            raise InvalidModelError("transition frequency delta must be > 0")

    def with_delta(self, delta: float) -> "SystemConfig":
        return SystemConfig(delta, self.spectrum)

    def to_dict(self) -> dict:
        return {"delta": self.delta, "spectrum": self.spectrum.to_dict()}

    @staticmethod
    def from_dict(data: dict) -> "SystemConfig":
        return SystemConfig(float(data["delta"]),
                            spectrum_from_dict(data["spectrum"]))


# --- scalar physics quantities ----------------------------------------------

def evaluate(spectrum: SpectrumModel, omega) -> float:
    """G(omega); scalars in, scalar out (arrays broadcast)."""
    return spectrum.value(omega)


def second_derivative(spectrum: SpectrumModel, omega) -> float:
    """Analytic G''(omega) (spline curvature for Tabulated)."""
    return spectrum.second_derivative(omega)


def powerlaw_curvature_large_cutoff(spectrum: PowerLaw, omega: float) -> float:
    """Large-cutoff curvature s(s-1) a omega_c^(1-s) w^(s-2), as a diagnostic.

    This drops the cutoff terms of the exact ``second_derivative`` and is
    what makes the Ohmic case exactly flat.
    """
    if not isinstance(spectrum, PowerLaw):
        raise DomainError("large-cutoff curvature is defined for PowerLaw only")
    _check_omega_pos(omega)
    return (spectrum.s * (spectrum.s - 1.0) * spectrum.a
            * spectrum.omega_c ** (1.0 - spectrum.s) * omega ** (spectrum.s - 2.0))


def free_decay_rate(config: SystemConfig) -> float:
    """Fermi golden-rule rate gamma0 = 2 pi G(delta)."""
    return 2.0 * math.pi * evaluate(config.spectrum, config.delta)


def zeno_time(spectrum: SpectrumModel) -> float:
    """Initial quadratic-decay timescale (int G dw)^(-1/2)."""
    weight = spectrum.total_weight()
    if not (weight > 0.0 and math.isfinite(weight)):
        raise DivergenceError("spectral weight must be finite and positive")
    return 1.0 / math.sqrt(weight)


def linear_decay_rate(spectrum: SpectrumModel, tau: float) -> float:
    """Short-interval reference rate tau / tau_Z^2."""
    if tau < 0:
        raise DomainError("tau must be >= 0")
    return tau * spectrum.total_weight()


def lamb_shift(config: SystemConfig) -> float:
    """Level spacing corrected by counter-rotating terms.

    delta_1 = delta + int_0^inf G(w) / (w + delta) dw; always >= delta.
    """
    spec, delta = config.spectrum, config.delta
    if isinstance(spec, Tabulated):
        spec._check_decayed_tail("lamb shift")
        val, err = integrate.quad(lambda w: spec.value(w) / (w + delta),
                                  spec._w[0], spec.support_upper(),
                                  epsrel=_QUAD_RTOL, limit=400)
    else:
        val, err = panel_quad_to_inf(lambda w: spec.value(w) / (w + delta),
                                     0.0, spec, epsrel=_QUAD_RTOL)
    if not math.isfinite(val) or (abs(val) > 0 and err > 1e-4 * abs(val) + 1e-12):
        raise DivergenceError("lamb-shift integral failed to converge")
    return delta + val
