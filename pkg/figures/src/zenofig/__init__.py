"""Batch plotting of measurement-modified decay-rate sweeps.

Reads the sweep CSV emitted by the zenoscan CLI (the only contract between
the two packages) and renders the ratio-vs-delta*tau overlays in the
conventional line styles.
"""

import matplotlib

matplotlib.use("Agg")

from .render import MissingColumnError, PlotSpec, load_csv, render
from .styles import STYLE_PRESETS, CurveStyle, preset

__all__ = ["MissingColumnError", "PlotSpec", "load_csv", "render",
           "STYLE_PRESETS", "CurveStyle", "preset"]
