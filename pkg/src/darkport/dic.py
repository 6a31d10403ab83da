"""Differential interference contrast imaging as a 1-D crossed-polarizer
chain: 45-degree pre-selection, sheared dual-beam phase sampling,
recombination, and projection on a (slightly offset) 135-degree analyzer.

Scalar-beam model: no diffraction, each lateral position is independent.
With crossed polarizers the image is a dark port — a uniform sample gives
zero intensity and small local phase differences light it up quadratically,
intensity ~ (dphi/2)^2.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, ShearNotOnGrid

#: Analyzer offsets beyond this leave the crossed-polarizer (dark port)
#: regime the model is meant for.
MAX_ANALYZER_OFFSET = 0.3

#: Tolerance (in pixel units) for deciding that a shear sits on the grid.
SHEAR_PIXEL_TOL = 1e-9


@dataclass(frozen=True)
class PhaseProfile:
    """Sample-induced optical phase at each lateral position (rad)."""

    x_start: float
    dx: float
    phases: np.ndarray

    def __post_init__(self):
        if self.dx <= 0.0:
            raise DomainError(f"dx must be positive, got {self.dx!r}")
        phases = np.asarray(self.phases, dtype=float)
        if not np.all(np.isfinite(phases)):
            raise DomainError("phases must be finite")
        object.__setattr__(self, "phases", phases)

    def positions(self) -> np.ndarray:
        return self.x_start + self.dx * np.arange(len(self.phases))


@dataclass(frozen=True)
class DicImage:
    """Normalized intensity image on the profile's lateral grid.

    `valid` marks pixels whose shear partner fell inside the grid; invalid
    pixels carry intensity 0.
    """

    x_start: float
    dx: float
    intensity: np.ndarray
    valid: np.ndarray

    def positions(self) -> np.ndarray:
        return self.x_start + self.dx * np.arange(len(self.intensity))


def jones_chain_oracle(
    phase_a: float, phase_b: float, analyzer_offset: float = 0.0
) -> float:
    """Intensity of the full polarizer/phase/analyzer chain at one pixel.

    45-degree input state, diagonal phase element diag(e^{i phase_a},
    e^{i phase_b}), projection on the analyzer at 135 degrees +
    analyzer_offset; returns the squared modulus. No small-angle shortcuts.
    """
    state = np.array(
        [np.exp(1j * phase_a), np.exp(1j * phase_b)], dtype=complex
    ) / math.sqrt(2.0)
    angle = 3.0 * math.pi / 4.0 + analyzer_offset
    analyzer = np.array([math.cos(angle), math.sin(angle)], dtype=complex)
    return float(abs(np.vdot(analyzer, state)) ** 2)


def dic_image(
    profile: PhaseProfile, shear: float, analyzer_offset: float = 0.0
) -> DicImage:
    """Image the phase profile with dual beams sheared by `shear` meters.

    The horizontal beam samples x, the vertical one x + shear; shear must be
    an integer multiple of the lateral spacing. Pixels whose partner falls
    off-grid are flagged invalid and emit zero.
    """
    if abs(analyzer_offset) >= MAX_ANALYZER_OFFSET:
        raise DomainError(
            f"analyzer_offset must satisfy |offset| < {MAX_ANALYZER_OFFSET}, "
            f"got {analyzer_offset!r}"
        )
    shear_px_float = shear / profile.dx
    shear_px = round(shear_px_float)
    if abs(shear_px_float - shear_px) > SHEAR_PIXEL_TOL:
        raise ShearNotOnGrid(
            f"shear {shear!r} is {shear_px_float:.6f} pixels; it must be an "
            f"integer multiple of dx = {profile.dx!r}"
        )
    n = len(profile.phases)
    phase_a = profile.phases
    partner = np.arange(n) + shear_px
    valid = (partner >= 0) & (partner < n)
    phase_b = np.where(valid, profile.phases[np.clip(partner, 0, n - 1)], 0.0)

    # same chain as jones_chain_oracle, vectorized over pixels
    angle = 3.0 * math.pi / 4.0 + analyzer_offset
    ca, sa = math.cos(angle), math.sin(angle)
    amp = (ca * np.exp(1j * phase_a) + sa * np.exp(1j * phase_b)) / math.sqrt(2.0)
    intensity = np.where(valid, np.abs(amp) ** 2, 0.0)
    return DicImage(
        x_start=profile.x_start,
        dx=profile.dx,
        intensity=intensity,
        valid=valid,
    )


# ---------------------------------------------------------------------------
# CSV interchange
# ---------------------------------------------------------------------------

def read_phase_profile(path: str | Path) -> PhaseProfile:
    """Load a (x, phase) CSV; positions must be uniformly spaced."""
    xs: list[float] = []
    phases: list[float] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DomainError(f"{path}: empty phase-profile CSV")
        for row in reader:
            if not row:
                continue
            xs.append(float(row[0]))
            phases.append(float(row[1]))
    if len(xs) < 2:
        raise DomainError(f"{path}: need at least 2 samples")
    x = np.asarray(xs)
    steps = np.diff(x)
    dx = float(steps[0])
    if dx <= 0.0 or not np.allclose(steps, dx, rtol=1e-9, atol=0.0):
        raise DomainError(f"{path}: positions must be uniformly increasing")
    return PhaseProfile(x_start=float(x[0]), dx=dx, phases=np.asarray(phases))


def write_dic_image(image: DicImage, path: str | Path) -> None:
    """Write (x, intensity, valid) rows; valid encoded as 0/1."""
    x = image.positions()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "intensity", "valid"])
        for xi, ii, vi in zip(x, image.intensity, image.valid):
            writer.writerow([repr(float(xi)), repr(float(ii)), int(vi)])
