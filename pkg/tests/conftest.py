import math

import pytest

import zenoscan as z

# fig2a/fig2b config-preset parameters, in units of the Lorentzian halfwidth
FIG2_SPEC = z.Lorentzian(d0=0.01, omega0=10.0, lam=1.0)


@pytest.fixture
def fig2a():
    """Resonant Lorentzian system (delta = omega0 = 10 lam)."""
    return z.SystemConfig(10.0, FIG2_SPEC)


@pytest.fixture
def fig2b():
    """Detuned Lorentzian system (Omega = 2 lam)."""
    return z.SystemConfig(8.0, FIG2_SPEC)


@pytest.fixture
def hydro4():
    """Hydrogenlike bath with cutoff at 4 delta (QZE side)."""
    return z.SystemConfig(1.0, z.Hydrogenlike(eta=1e-3, omega_c=4.0))


@pytest.fixture
def hydro1():
    """Hydrogenlike bath with cutoff at delta (QAZE side)."""
    return z.SystemConfig(1.0, z.Hydrogenlike(eta=1e-3, omega_c=1.0))


def powerlaw(s: float, a: float = 1e-3, omega_c: float = 10.0) -> z.SystemConfig:
    return z.SystemConfig(1.0, z.PowerLaw(a=a, s=s, omega_c=omega_c))


TWO_PI = 2.0 * math.pi
