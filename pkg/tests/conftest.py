import pytest

from darkport import ErrorBudget, TimeGrid, make_gaussian
from darkport.schemes import domega_from_dlambda, omega_from_wavelength


@pytest.fixture
def unit_grid():
    """Default grid for a sigma = 1 s pulse (2^14 samples, +/- 16 sigma)."""
    return TimeGrid.for_pulse(1.0)


@pytest.fixture
def unit_gaussian(unit_grid):
    return make_gaussian(1.0, unit_grid)


@pytest.fixture
def bench_budget():
    """Titanium-sapphire style bench: 5 fs pulse at 700 nm, 10 ps detector,
    5 pm spectrometer."""
    return ErrorBudget(
        epsilon=0.01,
        delta_t=10e-12,
        delta_omega=domega_from_dlambda(700e-9, 5e-12),
        omega_carrier=omega_from_wavelength(700e-9),
        sigma=5e-15,
        n_photons=1000.0,
    )
