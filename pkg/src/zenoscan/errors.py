"""Exception and warning types shared across the package.

Every error carries a short machine-readable ``code`` used by the CLI when
recording per-row method failures.
"""


class ZenoscanError(Exception):
    """Base class for all package errors."""

    code = "ERROR"


class DomainError(ZenoscanError, ValueError):
    """An argument lies outside an operation's mathematical domain."""

    code = "DOMAIN"


class InvalidModelError(ZenoscanError, ValueError):
    """Spectral-model or configuration parameters violate an invariant."""

    code = "INVALID_MODEL"


class DivergenceError(ZenoscanError):
    """A spectral integral does not converge (or cannot be trusted to)."""

    code = "DIVERGENCE"


class NonConvergedError(ZenoscanError):
    """An adaptive quadrature or lobe sum failed to meet its tolerance."""

    code = "NON_CONVERGED"


class ModelMismatchError(ZenoscanError, TypeError):
    """An operation restricted to one spectral model got another."""

    code = "MODEL_MISMATCH"


class NoSignChangeError(ZenoscanError, ValueError):
    """Bisection endpoints have the same sign."""

    code = "NO_SIGN_CHANGE"


class DegenerateRootsError(ZenoscanError):
    """The two Lorentzian resolvent roots coincide (exceptional point)."""

    code = "DEGENERATE_ROOTS"


class AmplitudeUnderflowError(ZenoscanError):
    """|alpha(tau)| underflowed; the survival log-rate is meaningless."""

    code = "AMPLITUDE_UNDERFLOW"


class StepTooCoarseError(ZenoscanError):
    """Volterra time step failed the dt vs dt/2 Richardson comparison."""

    code = "STEP_TOO_COARSE"


class PoleOrderError(ZenoscanError, ValueError):
    """Incomplete gamma order hit a pole (0, -1, -2, ...)."""

    code = "POLE_ORDER"


class PracticalRegimeWarning(UserWarning):
    """Measurement interval below the practical bound 2*pi/delta.

    Results are still returned; asymptotic-in-1/tau formulas are unreliable
    there and the lower minor-lobe domain may be empty.
    """
