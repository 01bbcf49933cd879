import json
import subprocess
import sys

import pytest

FIG2A_CONFIG = {
    "delta": 10.0,
    "spectrum": {"type": "lorentzian", "d0": 0.01, "omega0": 10.0, "lam": 1.0},
    "sweep": {
        "tau": {"log": {"tau_min": 0.3, "tau_max": 5.0, "n": 14}},
        "methods": ["ut_quadrature", "second_deriv_approx",
                    "exact_lorentzian", "closed_form_lorentzian",
                    "linear_zeno"],
    },
}


def run_sweep_cli(config: dict, out_path, extra=()):
    """Produce a sweep CSV through the computation CLI (the only interface)."""
    cfg_path = out_path.parent / (out_path.stem + "_config.json")
    cfg_path.write_text(json.dumps(config))
    cmd = [sys.executable, "-m", "zenoscan", "sweep", "--config",
           str(cfg_path), "--out", str(out_path), *extra]
    subprocess.run(cmd, check=True, capture_output=True, text=True)
    return out_path


@pytest.fixture(scope="session")
def fig2a_csv(tmp_path_factory):
    out = tmp_path_factory.mktemp("sweeps") / "fig2a.csv"
    return run_sweep_cli(FIG2A_CONFIG, out)


@pytest.fixture(scope="session")
def hydro_csv(tmp_path_factory):
    config = {
        "delta": 1.0,
        "spectrum": {"type": "hydrogenlike", "eta": 1e-3, "omega_c": 4.0},
        "sweep": {"tau": {"log": {"tau_min": 6.0, "tau_max": 30.0, "n": 6}},
                  "methods": ["ut_quadrature", "second_deriv_approx",
                              "linear_zeno"]},
    }
    out = tmp_path_factory.mktemp("sweeps") / "hydro.csv"
    return run_sweep_cli(config, out)
