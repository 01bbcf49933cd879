"""Measurement-modified decay of a two-level system in a structured bath.

Public surface: spectral models, the filter-function quadrature, the
curvature-sign Zeno/anti-Zeno classifier, the exact Lorentzian solution,
the Volterra amplitude oracle, incomplete-gamma helpers, and the sweep
driver behind the CLI.
"""

from ._version import __version__
from .criterion import (Trend, ValidityReport, ValidityWarning, Verdict,
                        ZenoClassification, boundary_find, classify,
                        gamma_approx, monotonicity_sign, validity_check)
from .errors import (AmplitudeUnderflowError, DegenerateRootsError,
                     DivergenceError, DomainError, InvalidModelError,
                     ModelMismatchError, NonConvergedError, NoSignChangeError,
                     PoleOrderError, PracticalRegimeWarning,
                     StepTooCoarseError, ZenoscanError)
from .filterfunc import (DecayEstimate, FilterParams, Method,
                         QuadratureSettings, TailPolicy, filter_value,
                         gamma1_main_lobe, gamma1_minor_lobes,
                         gamma_minor_lobe_corrected, gamma_ut,
                         main_lobe_fraction)
from .gammainc import complete_gamma, upper_incomplete_gamma
from .lorentz import (LorentzianRoots, amplitude, closed_form_lorentzian,
                      gamma_exact, roots)
from .spectra import (Hydrogenlike, Lorentzian, PowerLaw, SpectrumModel,
                      SystemConfig, Tabulated, evaluate, free_decay_rate,
                      lamb_shift, linear_decay_rate,
                      powerlaw_curvature_large_cutoff, second_derivative,
                      spectrum_from_dict, zeno_time)
from .sweep import (ExplicitTauGrid, LogTauGrid, SweepResult, SweepSpec,
                    run_sweep, to_csv, to_json)
from .volterra import (KernelMode, KernelSpec, VolterraSettings,
                       evolve_amplitude, gamma_from_survival, kernel,
                       recommended_dt)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
