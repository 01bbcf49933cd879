"""Curve styling presets for the bundled sweep configurations.

Conventions: the exact solution is a line with open circles, the overlap
quadrature a black solid line, the curvature approximation a blue dashed
line, the short-interval linear reference a red dot-dashed line, and the
minor-lobe-corrected estimate an orange dotted line.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CurveStyle:
    label: str
    kwargs: dict = field(default_factory=dict)


CURVE_STYLES = {
    "exact_lorentzian": CurveStyle(
        "exact", {"color": "black", "linestyle": "-", "linewidth": 0.8,
                  "marker": "o", "markerfacecolor": "none", "markersize": 4,
                  "markevery": 3}),
    "ut_quadrature": CurveStyle(
        "overlap quadrature", {"color": "black", "linestyle": "-",
                               "linewidth": 1.6}),
    "second_deriv_approx": CurveStyle(
        "curvature approx", {"color": "tab:blue", "linestyle": "--",
                             "linewidth": 1.4}),
    "linear_zeno": CurveStyle(
        "linear (zeno time)", {"color": "tab:red", "linestyle": "-.",
                               "linewidth": 1.4}),
    "minor_lobe_corrected": CurveStyle(
        "minor-lobe corrected", {"color": "tab:orange", "linestyle": ":",
                                 "linewidth": 1.8}),
    "volterra_oracle": CurveStyle(
        "volterra oracle", {"color": "tab:green", "linestyle": "-",
                            "linewidth": 1.0, "marker": "s",
                            "markerfacecolor": "none", "markersize": 3,
                            "markevery": 4}),
}

_LORENTZIAN_METHODS = ("exact_lorentzian", "ut_quadrature",
                       "second_deriv_approx", "linear_zeno")
_GENERIC_METHODS = ("ut_quadrature", "second_deriv_approx", "linear_zeno")
_CORRECTED_METHODS = _GENERIC_METHODS + ("minor_lobe_corrected",)

# per-figure method selection and y-axis windows (x always spans the data)
STYLE_PRESETS = {
    "fig2a": (_LORENTZIAN_METHODS, (0.0, 1.2)),
    "fig2b": (_LORENTZIAN_METHODS, (0.0, 1.7)),
    "fig3a": (_GENERIC_METHODS, (0.0, 1.2)),
    "fig3b": (_GENERIC_METHODS, (0.0, 1.7)),
    "fig4a": (_GENERIC_METHODS, (0.0, 1.2)),
    "fig4b": (_GENERIC_METHODS, (0.0, 1.7)),
    "fig8a": (_CORRECTED_METHODS, (0.0, 2.0)),
    "fig8b": (_CORRECTED_METHODS, (0.0, 3.0)),
    "fig8c": (_CORRECTED_METHODS, (0.0, 20.0)),
}


def preset(name: str):
    """(methods, y_range) for a named figure preset."""
    if name not in STYLE_PRESETS:
        raise KeyError(f"unknown style preset {name!r}; choose from "
                       f"{sorted(STYLE_PRESETS)}")
    return STYLE_PRESETS[name]
