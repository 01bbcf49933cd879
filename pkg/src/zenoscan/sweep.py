"""Tau-sweep driver and the deterministic CSV / JSON serializations.

A sweep evaluates a set of decay-rate estimators over a grid of measurement
intervals.  Output is byte-deterministic for a fixed spec and version:
floats are printed with 17 significant digits, columns follow the method
enum order, rows ascend in tau, per-method failures leave empty cells and
are listed in a JSON sidecar instead of aborting the run.
"""

from __future__ import annotations

import json
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._version import __version__
from .criterion import classify, gamma_approx
from .errors import InvalidModelError, ModelMismatchError, ZenoscanError
from .filterfunc import (DEFAULT_SETTINGS, DecayEstimate, Method,
                         QuadratureSettings, gamma_minor_lobe_corrected,
                         gamma_ut, make_estimate)
from .lorentz import closed_form_lorentzian, gamma_exact
from .spectra import (Lorentzian, SystemConfig, free_decay_rate,
                      lamb_shift, linear_decay_rate)
from .volterra import VolterraSettings, gamma_from_survival

_LORENTZIAN_ONLY = (Method.EXACT_LORENTZIAN, Method.CLOSED_FORM_LORENTZIAN)


@dataclass(frozen=True)
class LogTauGrid:
    tau_min: float
    tau_max: float
    n: int

    def __post_init__(self):
        if not self.tau_min > 0:
            raise InvalidModelError("tau_min must be > 0")
        if not self.tau_max > self.tau_min:
            raise InvalidModelError("tau_max must exceed tau_min")
        if self.n < 2:
            raise InvalidModelError("log grid needs n >= 2")

    def values(self) -> list[float]:
        return list(np.geomspace(self.tau_min, self.tau_max, self.n))

    def to_dict(self) -> dict:
        return {"log": {"tau_min": self.tau_min, "tau_max": self.tau_max,
                        "n": self.n}}


@dataclass(frozen=True)
class ExplicitTauGrid:
    taus: tuple[float, ...]

    def __post_init__(self):
        if len(self.taus) == 0:
            raise InvalidModelError("tau list must be non-empty")
        if any(t <= 0 for t in self.taus):
            raise InvalidModelError("all tau values must be > 0")

    def values(self) -> list[float]:
        return sorted(self.taus)

    def to_dict(self) -> dict:
        return {"list": list(self.taus)}


def tau_grid_from_dict(data: dict):
    if "log" in data:
        g = data["log"]
        return LogTauGrid(float(g["tau_min"]), float(g["tau_max"]), int(g["n"]))
    if "list" in data:
        return ExplicitTauGrid(tuple(float(t) for t in data["list"]))
    raise InvalidModelError("tau grid needs a 'log' or 'list' entry")


@dataclass(frozen=True)
class SweepSpec:
    config: SystemConfig
    tau_grid: LogTauGrid | ExplicitTauGrid
    methods: tuple[Method, ...]
    quadrature: QuadratureSettings = DEFAULT_SETTINGS
    volterra: VolterraSettings | None = None
    apply_lamb_shift: bool = False

    def __post_init__(self):
        if not self.methods:
            raise InvalidModelError("at least one method is required")
        if not isinstance(self.config.spectrum, Lorentzian):
            bad = [m for m in self.methods if m in _LORENTZIAN_ONLY]
            if bad:
                raise ModelMismatchError(
                    f"{[m.value for m in bad]} allowed only for Lorentzian spectra")

    def ordered_methods(self) -> list[Method]:
        return [m for m in Method if m in self.methods]

    def to_dict(self) -> dict:
        doc = {
            "delta": self.config.delta,
            "spectrum": self.config.spectrum.to_dict(),
            "sweep": {
                "tau": self.tau_grid.to_dict(),
                "methods": [m.value for m in self.ordered_methods()],
                "apply_lamb_shift": self.apply_lamb_shift,
            },
            "settings": {"quadrature": self.quadrature.to_dict()},
        }
        if self.volterra is not None:
            doc["settings"]["volterra"] = self.volterra.to_dict()
        return doc

    @staticmethod
    def from_dict(doc: dict) -> "SweepSpec":
        config = SystemConfig.from_dict(doc)
        sweep = doc.get("sweep", {})
        if "tau" not in sweep:
            raise InvalidModelError("config is missing the sweep.tau grid")
        grid = tau_grid_from_dict(sweep["tau"])
        methods = tuple(Method(m) for m in sweep.get("methods", ["ut_quadrature"]))
        settings = doc.get("settings", {})
        quadrature = QuadratureSettings.from_dict(settings.get("quadrature", {}))
        volterra = None
        if "volterra" in settings:
            v = dict(settings["volterra"])
            v.setdefault("t_max", max(grid.values()))
            volterra = VolterraSettings.from_dict(v)
        return SweepSpec(config=config, tau_grid=grid, methods=methods,
                         quadrature=quadrature, volterra=volterra,
                         apply_lamb_shift=bool(sweep.get("apply_lamb_shift",
                                                         False)))


@dataclass(frozen=True)
class MethodFailure:
    code: str
    message: str


@dataclass
class SweepRow:
    tau: float
    delta_tau: float
    gamma0: float
    results: dict  # Method -> DecayEstimate | MethodFailure


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list[SweepRow]
    metadata: dict = field(default_factory=dict)


def _compute_estimate(method: Method, config: SystemConfig, tau: float,
                      spec: SweepSpec) -> DecayEstimate:
    spectrum, delta = config.spectrum, config.delta
    if method is Method.UT_QUADRATURE:
        return gamma_ut(config, tau, spec.quadrature)
    if method is Method.SECOND_DERIV_APPROX:
        return gamma_approx(config, tau)
    if method is Method.EXACT_LORENTZIAN:
        return gamma_exact(spectrum, delta, tau)
    if method is Method.CLOSED_FORM_LORENTZIAN:
        return closed_form_lorentzian(spectrum, delta, tau)
    if method is Method.LINEAR_ZENO:
        return make_estimate(tau, linear_decay_rate(spectrum, tau),
                             free_decay_rate(config), Method.LINEAR_ZENO)
    if method is Method.MINOR_LOBE_CORRECTED:
        return gamma_minor_lobe_corrected(config, tau, spec.quadrature)
    if method is Method.VOLTERRA_ORACLE:
        return gamma_from_survival(config, tau, spec.volterra)
    raise InvalidModelError(f"unhandled method {method}")


def _compute_row(config: SystemConfig, tau: float, spec: SweepSpec) -> SweepRow:
    results = {}
    for method in spec.ordered_methods():
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                results[method] = _compute_estimate(method, config, tau, spec)
        except ZenoscanError as exc:
            results[method] = MethodFailure(exc.code, str(exc))
    return SweepRow(tau, config.delta * tau, free_decay_rate(config), results)


def run_sweep(spec: SweepSpec, threads: int = 1) -> SweepResult:
    """Evaluate all requested methods over the tau grid.

    Grid points are independent; with threads > 1 they are computed by a
    worker pool and gathered back in grid order, so the output is identical
    to a serial run.
    """
    config = spec.config
    delta_effective = config.delta
    if spec.apply_lamb_shift:
        delta_effective = lamb_shift(config)
        config = config.with_delta(delta_effective)
    taus = spec.tau_grid.values()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda t: _compute_row(config, t, spec), taus))
    else:
        rows = [_compute_row(config, t, spec) for t in taus]
    metadata = {
        "tool": "zenoscan",
        "version": __version__,
        "spec": spec.to_dict(),
        "delta_effective": delta_effective,
        "classification": classify(config).to_dict(),
    }
    return SweepResult(spec, rows, metadata)


# --- serialization -----------------------------------------------------------

def _fmt(x: float | None) -> str:
    if x is None:
        return ""
    return format(float(x), ".17g")


def to_csv(result: SweepResult) -> str:
    """Delimited table: 17-significant-digit floats, '\\n' endings.

    Columns: tau, delta_tau, gamma0, then one (gamma, ratio, err) triple per
    requested method in enum order; failed cells stay empty.
    """
    methods = result.spec.ordered_methods()
    header = ["tau", "delta_tau", "gamma0"]
    for m in methods:
        header += [f"{m.value}_gamma", f"{m.value}_ratio", f"{m.value}_err"]
    lines = [",".join(header)]
    for row in result.rows:
        cells = [_fmt(row.tau), _fmt(row.delta_tau), _fmt(row.gamma0)]
        for m in methods:
            res = row.results[m]
            if isinstance(res, MethodFailure):
                cells += ["", "", ""]
            else:
                cells += [_fmt(res.gamma_eff), _fmt(res.ratio),
                          _fmt(res.err_estimate)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def to_json(result: SweepResult) -> str:
    """Structured form of the sweep with metadata and an error sidecar."""
    methods = result.spec.ordered_methods()
    rows = []
    errors = []
    for row in result.rows:
        entry = {"tau": row.tau, "delta_tau": row.delta_tau,
                 "gamma0": row.gamma0, "methods": {}}
        for m in methods:
            res = row.results[m]
            if isinstance(res, MethodFailure):
                entry["methods"][m.value] = None
                errors.append({"tau": row.tau, "method": m.value,
                               "code": res.code, "message": res.message})
            else:
                entry["methods"][m.value] = {
                    "gamma": res.gamma_eff, "ratio": res.ratio,
                    "err": res.err_estimate}
        rows.append(entry)
    doc = {"metadata": result.metadata, "rows": rows, "errors": errors}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
