"""CSV loading and figure rendering.

The renderer draws ratio columns exactly as parsed (the arrays handed to
matplotlib are the parsed columns, unmodified), adds the gamma_eff = gamma0
horizontal reference and the delta*tau = 2 pi vertical marker, and writes
the image file.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import matplotlib.pyplot as plt
import numpy as np

from .styles import CURVE_STYLES, CurveStyle


class MissingColumnError(KeyError):
    """A requested method column is not in the CSV."""


@dataclass(frozen=True)
class PlotSpec:
    csv_paths: tuple[str, ...]
    methods: tuple[str, ...]
    out_path: str
    labels: tuple[str, ...] = ()     # one per csv when overlaying several
    y_range: tuple[float, float] | None = None
    x_range: tuple[float, float] | None = None
    ratio_reference: bool = True     # horizontal gamma_eff = gamma0 line
    practical_marker: bool = True    # vertical delta tau = 2 pi line
    title: str = ""

    def __post_init__(self):
        if not self.csv_paths:
            raise ValueError("at least one CSV path is required")
        if not self.methods:
            raise ValueError("no methods selected, nothing to draw")
        if self.labels and len(self.labels) != len(self.csv_paths):
            raise ValueError("labels must match csv_paths one-to-one")


def load_csv(path: str) -> dict[str, np.ndarray]:
    """Sweep table as column name -> float array (empty cells become nan)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty CSV")
        rows = [row for row in reader if row]
    cols = {}
    for i, name in enumerate(header):
        cols[name] = np.array(
            [float(r[i]) if r[i] != "" else math.nan for r in rows])
    return cols


def _ratio_column(cols: dict[str, np.ndarray], method: str,
                  path: str) -> np.ndarray:
    name = f"{method}_ratio"
    if name not in cols:
        raise MissingColumnError(
            f"{path} has no column {name!r}; available: {sorted(cols)}")
    return cols[name]


def render(spec: PlotSpec):
    """Draw the overlay and write ``spec.out_path``; returns the Figure.

    The x/y data attached to each curve are the parsed CSV arrays
    themselves, so nothing is rescaled or resampled.
    """
    tables = [load_csv(p) for p in spec.csv_paths]
    for table, path in zip(tables, spec.csv_paths):
        for method in spec.methods:
            _ratio_column(table, method, path)  # validate before drawing

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for idx, (table, path) in enumerate(zip(tables, spec.csv_paths)):
        prefix = f"{spec.labels[idx]}: " if spec.labels else ""
        for method in spec.methods:
            style = CURVE_STYLES.get(method, CurveStyle(method))
            ax.plot(table["delta_tau"], _ratio_column(table, method, path),
                    label=prefix + style.label, gid=f"{method}:{idx}",
                    **style.kwargs)

    if spec.ratio_reference:
        ax.axhline(1.0, color="gray", linestyle="--", linewidth=0.8,
                   gid="ratio-one")
    if spec.practical_marker:
        ax.axvline(2.0 * math.pi, color="gray", linestyle="--", linewidth=0.8,
                   gid="delta-tau-2pi")

    ax.set_xlabel(r"$\Delta\tau$")
    ax.set_ylabel(r"$\gamma_{\mathrm{eff}}/\gamma_0$")
    if spec.title:
        ax.set_title(spec.title)
    if spec.x_range:
        ax.set_xlim(*spec.x_range)
    if spec.y_range:
        ax.set_ylim(*spec.y_range)
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(spec.out_path, dpi=150)
    plt.close(fig)
    return fig
