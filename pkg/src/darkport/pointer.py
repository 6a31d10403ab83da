"""Sampled pointer envelopes on a uniform time grid: Gaussian construction,
translation, exact post-selected superposition, the linearized weak-response
pointer, spectra via FFT, and moment estimators.

Sign conventions (fixed here, used everywhere downstream):

* the +1 eigenstate |H> pairs with the advanced envelope g(t + tau), the -1
  eigenstate |V> with g(t - tau);
* ``translate(env, tau)`` returns g(t + tau), which moves the intensity
  centroid by -tau;
* the forward transform kernel is exp(-i w t) (numpy FFT convention), so the
  dark-port spectrum of the imaginary-weak-value pair comes out as
  sin^2(w tau - phi) |g(w)|^2 and its centroid sits at negative w for
  positive tau and phi;
* the linearized weak response displaces the Gaussian argument by the complex
  amount tau * a_w: a time shift of -tau*Re[a_w] in the centroid and a
  spectral amplitude weighting exp(-tau * Im[a_w] * w).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    ApproximationOutOfRange,
    DomainError,
    EmptySpectrum,
    GridMismatch,
    GridTooNarrow,
    NotGaussian,
)
from .polarization import PolarizationState

#: Default sampling of a pulse: 2^14 points across +/- 16 sigma. Oversampled
#: x2 beyond the 8-sigma coverage rule so spectral leakage stays below 1e-10
#: of the peak.
DEFAULT_SAMPLES = 2 ** 14
DEFAULT_SPAN_SIGMAS = 16.0

#: Envelopes must keep 8 sigma of clearance on both sides of their center.
COVERAGE_SIGMAS = 8.0

#: Below this total mass a port is declared dark and moments are undefined.
MASS_FLOOR = 1e-12

#: Fraction of probability tolerated within the wrap-around strip when a
#: non-Gaussian envelope is translated through the FFT phase ramp.
EDGE_MASS_FLOOR = 1e-12


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid: t_i = t_start + i * dt for i in [0, n_samples)."""

    t_start: float
    dt: float
    n_samples: int

    def __post_init__(self):
        if self.dt <= 0.0:
            raise DomainError(f"dt must be positive, got {self.dt!r}")
        if self.n_samples < 16:
            raise DomainError(
                f"n_samples must be >= 16, got {self.n_samples!r}"
            )

    @property
    def t_end(self) -> float:
        return self.t_start + (self.n_samples - 1) * self.dt

    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.n_samples)

    @classmethod
    def for_pulse(
        cls,
        sigma: float,
        center: float = 0.0,
        n_samples: int = DEFAULT_SAMPLES,
        span_sigmas: float = DEFAULT_SPAN_SIGMAS,
    ) -> "TimeGrid":
        """Grid spanning center +/- span_sigmas * sigma."""
        if sigma <= 0.0:
            raise DomainError(f"sigma must be positive, got {sigma!r}")
        if span_sigmas < COVERAGE_SIGMAS:
            raise DomainError(
                f"span_sigmas must be >= {COVERAGE_SIGMAS}, got {span_sigmas!r}"
            )
        half = span_sigmas * sigma
        dt = 2.0 * half / n_samples
        return cls(t_start=center - half, dt=dt, n_samples=n_samples)


@dataclass(frozen=True)
class Envelope:
    """Complex pointer amplitude on a time grid.

    Units: amps in s^{-1/2}, so sum(|amps|^2) * dt is a probability.
    `sigma_meta`/`center_meta` are set only when the amplitudes are exactly
    the canonical unit-norm Gaussian built by `make_gaussian`; operations
    that scale or superpose envelopes drop them.
    """

    grid: TimeGrid
    amps: np.ndarray
    sigma_meta: float | None = None
    center_meta: float | None = None

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (self.grid.n_samples,):
            raise DomainError(
                f"amps shape {amps.shape} does not match grid length "
                f"{self.grid.n_samples}"
            )
        object.__setattr__(self, "amps", amps)

    def total_probability(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2) * self.grid.dt)


@dataclass(frozen=True)
class Spectrum:
    """Real intensity density on a uniform angular-frequency grid (units s)."""

    w_start: float
    dw: float
    vals: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.vals, dtype=float)
        object.__setattr__(self, "vals", vals)

    def omegas(self) -> np.ndarray:
        return self.w_start + self.dw * np.arange(len(self.vals))

    def total_probability(self) -> float:
        return float(np.sum(self.vals) * self.dw)


def _check_coverage(grid: TimeGrid, sigma: float, center: float) -> None:
    lo = center - COVERAGE_SIGMAS * sigma
    hi = center + COVERAGE_SIGMAS * sigma
    if grid.t_start > lo or grid.t_end < hi:
        raise GridTooNarrow(
            f"grid [{grid.t_start:.3e}, {grid.t_end:.3e}] does not cover "
            f"[{lo:.3e}, {hi:.3e}] (center {center:.3e}, sigma {sigma:.3e})"
        )


def make_gaussian(sigma: float, grid: TimeGrid, center: float = 0.0) -> Envelope:
    """Unit-norm Gaussian pointer g(t) = C exp(-((t - center)/(2 sigma))^2).

    C is fixed numerically so that sum(|g|^2) dt = 1 on this grid.
    """
    if sigma <= 0.0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    _check_coverage(grid, sigma, center)
    t = grid.times()
    raw = np.exp(-(((t - center) / (2.0 * sigma)) ** 2))
    norm = math.sqrt(float(np.sum(raw * raw)) * grid.dt)
    amps = (raw / norm).astype(complex)
    return Envelope(grid=grid, amps=amps, sigma_meta=sigma, center_meta=center)


def translate(env: Envelope, tau: float) -> Envelope:
    """Envelope resampled as g(t + tau).

    Gaussian envelopes are rebuilt from the analytic form; anything else is
    shifted by a discrete Fourier phase ramp (band-limited interpolation),
    guarded against wrap-around.
    """
    if tau == 0.0:
        return env
    if env.sigma_meta is not None:
        return make_gaussian(
            env.sigma_meta, env.grid, env.center_meta - tau
        )
    n, dt = env.grid.n_samples, env.grid.dt
    k = min(int(math.ceil(abs(tau) / dt)), n)
    intens = np.abs(env.amps) ** 2
    total = float(np.sum(intens))
    edge = float(np.sum(intens[:k]) + np.sum(intens[-k:])) if k else 0.0
    if total > 0.0 and edge > EDGE_MASS_FLOOR * total:
        raise GridTooNarrow(
            f"translating by {tau:.3e} would wrap {edge / total:.2e} of the "
            "envelope probability around the grid"
        )
    w = 2.0 * np.pi * np.fft.fftfreq(n, d=dt)
    shifted = np.fft.ifft(np.fft.fft(env.amps) * np.exp(1j * w * tau))
    return Envelope(grid=env.grid, amps=shifted)


def postselect_envelope(
    pre: PolarizationState,
    post: PolarizationState,
    env: Envelope,
    tau: float,
) -> Envelope:
    """Exact dark/bright-port pointer after post-selection.

    f(t) = (mu* alpha) g(t + tau) + (nu* beta) g(t - tau), not renormalized:
    its total probability is the post-selection success probability for this
    tau (|<post|pre>|^2 at tau = 0).
    """
    c_plus = np.conj(post.amp_h) * pre.amp_h
    c_minus = np.conj(post.amp_v) * pre.amp_v
    g_plus = translate(env, +tau)
    g_minus = translate(env, -tau)
    amps = c_plus * g_plus.amps + c_minus * g_minus.amps
    return Envelope(grid=env.grid, amps=amps)


def weak_approx_envelope(
    a_w: complex,
    env: Envelope,
    tau: float,
    overlap: complex = 1.0,
) -> Envelope:
    """Linearized weak-response pointer: overlap * g(t + tau * a_w).

    Valid only for analytically Gaussian envelopes, where the complex
    displacement of the argument is unambiguous. `overlap` carries the
    <post|pre> prefactor, so total probability ~ |overlap|^2 for small tau.
    """
    if env.sigma_meta is None:
        raise NotGaussian(
            "weak_approx_envelope needs an analytically Gaussian envelope"
        )
    sigma, center = env.sigma_meta, env.center_meta
    if abs(tau * a_w) >= sigma / 2.0:
        raise ApproximationOutOfRange(
            f"|tau * a_w| = {abs(tau * a_w):.3e} >= sigma/2 = {sigma / 2:.3e}"
        )
    t = env.grid.times()
    raw = np.exp(-(((t - center) / (2.0 * sigma)) ** 2))
    norm = math.sqrt(float(np.sum(raw * raw)) * env.grid.dt)
    displaced = np.exp(-(((t - center + tau * a_w) / (2.0 * sigma)) ** 2))
    amps = complex(overlap) * displaced / norm
    return Envelope(grid=env.grid, amps=amps)


def dft_spectrum(env: Envelope) -> Spectrum:
    """Intensity spectrum |g(w)|^2 / (2 pi) with g(w) = int g(t) e^{-iwt} dt.

    Scaled so the spectral total probability equals the time-domain one
    (Parseval); the frequency axis is the baseband envelope axis centered at
    zero — the optical carrier is handled by the scheme layer.
    """
    n, dt = env.grid.n_samples, env.grid.dt
    transform = np.fft.fft(env.amps)
    vals = (dt ** 2 / (2.0 * np.pi)) * np.abs(transform) ** 2
    w = 2.0 * np.pi * np.fft.fftshift(np.fft.fftfreq(n, d=dt))
    dw = 2.0 * np.pi / (n * dt)
    return Spectrum(w_start=float(w[0]), dw=dw, vals=np.fft.fftshift(vals))


def centroid(s: Spectrum) -> float:
    """First spectral moment int w F dw / int F dw (trapezoid rule).

    Raises EmptySpectrum when the total mass is below MASS_FLOOR: the port
    is fully dark and no shift can be read out.
    """
    w = s.omegas()
    mass = float(np.trapezoid(s.vals, dx=s.dw))
    if mass <= MASS_FLOOR:
        raise EmptySpectrum(f"spectral mass {mass:.3e} <= {MASS_FLOOR:.0e}")
    return float(np.trapezoid(w * s.vals, dx=s.dw) / mass)


def centroid_t(env: Envelope) -> float:
    """Intensity-weighted mean arrival time of the envelope."""
    t = env.grid.times()
    intens = np.abs(env.amps) ** 2
    mass = float(np.trapezoid(intens, dx=env.grid.dt))
    if mass <= MASS_FLOOR:
        raise EmptySpectrum(f"envelope mass {mass:.3e} <= {MASS_FLOOR:.0e}")
    return float(np.trapezoid(t * intens, dx=env.grid.dt) / mass)


def l2_distance(a: Envelope, b: Envelope) -> float:
    """sqrt(sum |a - b|^2 dt); both envelopes must share a grid."""
    if a.grid != b.grid:
        raise GridMismatch(f"grids differ: {a.grid} vs {b.grid}")
    return float(
        math.sqrt(np.sum(np.abs(a.amps - b.amps) ** 2) * a.grid.dt)
    )


# ---------------------------------------------------------------------------
# CSV emission (plot-ready data files)
# ---------------------------------------------------------------------------

def envelope_to_csv(env: Envelope, path: str | Path) -> None:
    """Write (t, re, im) rows in SI units."""
    t = env.grid.times()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "re", "im"])
        for ti, ai in zip(t, env.amps):
            writer.writerow(
                [repr(float(ti)), repr(float(ai.real)), repr(float(ai.imag))]
            )


def spectrum_to_csv(s: Spectrum, path: str | Path) -> None:
    """Write (omega, value) rows in SI units."""
    w = s.omegas()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["omega", "value"])
        for wi, vi in zip(w, s.vals):
            writer.writerow([repr(float(wi)), repr(float(vi))])
