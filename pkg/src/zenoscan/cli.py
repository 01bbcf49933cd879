"""Command-line front end.

Subcommands:

    sweep      tau sweep across decay-rate methods; CSV or JSON output
    classify   Zeno / anti-Zeno verdict (exit 10 = QZE, 11 = QAZE,
               12 = indeterminate)
    boundary   bisect the parameter value where G''(delta) changes sign
    oracle     Volterra-oracle estimates for a list of tau values
    zeno-time  initial quadratic-decay timescale of the spectrum

All commands read a single JSON config document with "spectrum" and
"delta" sections (sweeps additionally use "sweep" and "settings").
"""

from __future__ import annotations

import argparse
import json
import sys

from .criterion import Verdict, boundary_find, classify
from .errors import NoSignChangeError, ZenoscanError
from .filterfunc import Method
from .spectra import SystemConfig, linear_decay_rate, spectrum_from_dict, zeno_time
from .sweep import (ExplicitTauGrid, SweepSpec, run_sweep, tau_grid_from_dict,
                    to_csv, to_json)
from .volterra import VolterraSettings, recommended_dt

_CLASSIFY_EXIT = {Verdict.QZE: 10, Verdict.QAZE: 11, Verdict.INDETERMINATE: 12}


def _load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error_record(exc: Exception) -> str:
    code = getattr(exc, "code", "ERROR")
    return json.dumps({"error": {"code": code, "message": str(exc)}},
                      sort_keys=True)


def _build_sweep_spec(doc: dict, args) -> SweepSpec:
    doc = dict(doc)
    sweep = dict(doc.get("sweep", {}))
    settings = dict(doc.get("settings", {}))
    if args.methods:
        sweep["methods"] = [m.strip() for m in args.methods.split(",")]
    if args.apply_lamb_shift:
        sweep["apply_lamb_shift"] = True
    if args.rel_tol is not None:
        quadrature = dict(settings.get("quadrature", {}))
        quadrature["rel_tol"] = args.rel_tol
        settings["quadrature"] = quadrature
    if args.dt is not None:
        volterra = dict(settings.get("volterra", {}))
        volterra["dt"] = args.dt
        settings["volterra"] = volterra
    doc["sweep"] = sweep
    doc["settings"] = settings
    return SweepSpec.from_dict(doc)


def _cmd_sweep(args) -> int:
    spec = _build_sweep_spec(_load_config(args.config), args)
    result = run_sweep(spec, threads=args.threads)
    text = to_json(result) if args.format == "json" else to_csv(result)
    _emit(text, args.out)
    return 0


def _cmd_classify(args) -> int:
    config = SystemConfig.from_dict(_load_config(args.config))
    result = classify(config)
    doc = json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n"
    flags = ", ".join(w.value for w in result.validity.warnings) or "none"
    print(f"verdict: {result.verdict.value.upper()}   "
          f"G''(delta) = {result.g2:.6g}   gamma0 = {result.gamma0:.6g}   "
          f"validity warnings: {flags}")
    if args.out:
        _emit(doc, args.out)
    elif args.format == "json":
        sys.stdout.write(doc)
    return _CLASSIFY_EXIT[result.verdict]


def _spectrum_param_sweeper(doc: dict, param: str):
    base = SystemConfig.from_dict(doc)
    if param == "delta":
        return lambda p: SystemConfig(p, base.spectrum)
    spec_dict = base.spectrum.to_dict()
    if param not in spec_dict or param == "type":
        raise ZenoscanError(
            f"parameter {param!r} is not a field of the "
            f"{spec_dict['type']} spectrum")

    def make(p: float) -> SystemConfig:
        d = dict(spec_dict)
        d[param] = p
        return SystemConfig(base.delta, spectrum_from_dict(d))

    return make


def _cmd_boundary(args) -> int:
    doc = _load_config(args.config)
    bounds = doc.get("boundary", {})
    param = args.param or bounds.get("param")
    lo = args.min if args.min is not None else bounds.get("min")
    hi = args.max if args.max is not None else bounds.get("max")
    if param is None or lo is None or hi is None:
        raise ZenoscanError("boundary needs --param, --min and --max "
                            "(or a 'boundary' config section)")
    sweeper = _spectrum_param_sweeper(doc, param)
    try:
        root = boundary_find(sweeper, float(lo), float(hi))
    except NoSignChangeError as exc:
        sys.stderr.write(_error_record(exc) + "\n")
        return 3
    cfg = sweeper(root)
    out = {"param": param, "root": root,
           "g2_at_root": cfg.spectrum.second_derivative(cfg.delta)}
    print(f"G''(delta) sign change at {param} = {root:.12g}")
    _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_oracle(args) -> int:
    doc = _load_config(args.config)
    config = SystemConfig.from_dict(doc)
    if args.tau:
        taus = tuple(float(t) for t in args.tau.split(","))
        grid = ExplicitTauGrid(taus)
    elif "sweep" in doc and "tau" in doc["sweep"]:
        grid = tau_grid_from_dict(doc["sweep"]["tau"])
    else:
        raise ZenoscanError("oracle needs --tau or a sweep.tau grid")
    dt = args.dt if args.dt is not None else recommended_dt(config)
    volterra = VolterraSettings(dt=dt, t_max=max(grid.values()))
    spec = SweepSpec(config=config, tau_grid=grid,
                     methods=(Method.VOLTERRA_ORACLE,), volterra=volterra)
    result = run_sweep(spec, threads=args.threads)
    text = to_json(result) if args.format == "json" else to_csv(result)
    _emit(text, args.out)
    return 0


def _cmd_zeno_time(args) -> int:
    config = SystemConfig.from_dict(_load_config(args.config))
    tz = zeno_time(config.spectrum)
    out = {"zeno_time": tz,
           "spectral_weight": config.spectrum.total_weight(),
           "linear_rate_at_zeno_time": linear_decay_rate(config.spectrum, tz)}
    print(f"zeno time: {tz:.12g} (spectral weight {out['spectral_weight']:.12g})")
    _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", required=True, help="JSON config path")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zenoscan",
        description="Measurement-modified decay rates and Zeno/anti-Zeno "
                    "classification for a two-level system in a structured "
                    "bath.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="tau sweep across methods")
    _add_common(p)
    p.add_argument("--methods", default=None,
                   help="comma list, e.g. ut_quadrature,exact_lorentzian")
    p.add_argument("--apply-lamb-shift", action="store_true",
                   help="replace delta by the lamb-shifted spacing")
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("--dt", type=float, default=None,
                   help="volterra-oracle time step")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("classify", help="QZE / QAZE verdict")
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("boundary", help="bisect the G'' sign change")
    _add_common(p)
    p.add_argument("--param", default=None, help="swept parameter name "
                   "(a spectrum field or 'delta')")
    p.add_argument("--min", type=float, default=None)
    p.add_argument("--max", type=float, default=None)
    p.set_defaults(func=_cmd_boundary)

    p = sub.add_parser("oracle", help="Volterra-oracle estimates")
    _add_common(p)
    p.add_argument("--tau", default=None, help="comma list of tau values")
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("zeno-time", help="quadratic-decay timescale")
    _add_common(p)
    p.set_defaults(func=_cmd_zeno_time)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ZenoscanError as exc:
        sys.stderr.write(_error_record(exc) + "\n")
        return 2
    except OSError as exc:
        sys.stderr.write(_error_record(exc) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
