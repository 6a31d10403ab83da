"""darkport: simulate and compare three readouts of a small longitudinal
phase delay — dark-port weak measurements with real (time-domain) or
imaginary (frequency-domain) weak values, and two-port interferometry.
"""

from .errors import (
    ApproximationOutOfRange,
    DarkportError,
    DegenerateOverlap,
    DomainError,
    EmptySpectrum,
    GridMismatch,
    GridTooNarrow,
    NotGaussian,
    ParseError,
    ShearNotOnGrid,
    ValidationError,
)
from .polarization import (
    OBSERVABLE,
    DichotomicObservable,
    PolarizationState,
    WeakValueResult,
    antidiagonal,
    diagonal,
    horizontal,
    inner_product,
    preset_imag_wv,
    preset_real_wv,
    rotate_analyzer,
    vertical,
    weak_value,
)
from .pointer import (
    Envelope,
    Spectrum,
    TimeGrid,
    centroid,
    centroid_t,
    dft_spectrum,
    envelope_to_csv,
    l2_distance,
    make_gaussian,
    postselect_envelope,
    spectrum_to_csv,
    translate,
    weak_approx_envelope,
)
from .schemes import (
    C_LIGHT,
    ComparisonReport,
    ErrorBudget,
    SchemeOutcome,
    compare_schemes,
    domega_from_dlambda,
    measure_shift_prefactor,
    omega_from_wavelength,
    run_imag_wv_scheme,
    run_interferometry,
    run_real_wv_scheme,
    tau_min_imag,
    tau_min_interf,
    tau_min_real,
)
from .dic import (
    DicImage,
    PhaseProfile,
    dic_image,
    jones_chain_oracle,
    read_phase_profile,
    write_dic_image,
)

__version__ = "0.1.0"

__all__ = [
    "ApproximationOutOfRange",
    "C_LIGHT",
    "ComparisonReport",
    "DarkportError",
    "DegenerateOverlap",
    "DichotomicObservable",
    "DicImage",
    "DomainError",
    "EmptySpectrum",
    "Envelope",
    "ErrorBudget",
    "GridMismatch",
    "GridTooNarrow",
    "NotGaussian",
    "OBSERVABLE",
    "ParseError",
    "PhaseProfile",
    "PolarizationState",
    "SchemeOutcome",
    "ShearNotOnGrid",
    "Spectrum",
    "TimeGrid",
    "ValidationError",
    "WeakValueResult",
    "antidiagonal",
    "centroid",
    "centroid_t",
    "compare_schemes",
    "dft_spectrum",
    "diagonal",
    "dic_image",
    "domega_from_dlambda",
    "envelope_to_csv",
    "horizontal",
    "inner_product",
    "jones_chain_oracle",
    "l2_distance",
    "make_gaussian",
    "measure_shift_prefactor",
    "omega_from_wavelength",
    "postselect_envelope",
    "preset_imag_wv",
    "preset_real_wv",
    "read_phase_profile",
    "rotate_analyzer",
    "run_imag_wv_scheme",
    "run_interferometry",
    "run_real_wv_scheme",
    "spectrum_to_csv",
    "tau_min_imag",
    "tau_min_interf",
    "tau_min_real",
    "translate",
    "vertical",
    "weak_approx_envelope",
    "weak_value",
    "write_dic_image",
]
