"""Two-level polarization algebra: states, the dichotomic observable, weak
values and the preset pre/post-selection pairs used by the readout schemes.

Basis convention (used by every module): index 0 = |H> with eigenvalue +1,
index 1 = |V> with eigenvalue -1. Global phase is never canonicalized; all
observable quantities are phase-invariant by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateOverlap, DomainError

# Below this overlap magnitude the pre/post pair is treated as orthogonal
# and the weak value reported as undefined.
OVERLAP_FLOOR = 1e-12


@dataclass(frozen=True)
class PolarizationState:
    """Normalized two-component complex amplitude vector in the H/V basis.

    Amplitudes are normalized at construction; a zero vector is rejected.
    """

    amp_h: complex
    amp_v: complex

    def __post_init__(self):
        h, v = complex(self.amp_h), complex(self.amp_v)
        norm = math.hypot(abs(h), abs(v))
        if norm < OVERLAP_FLOOR:
            raise DomainError("polarization state must be a nonzero vector")
        object.__setattr__(self, "amp_h", h / norm)
        object.__setattr__(self, "amp_v", v / norm)

    def as_array(self) -> np.ndarray:
        return np.array([self.amp_h, self.amp_v], dtype=complex)


def horizontal() -> PolarizationState:
    return PolarizationState(1.0, 0.0)


def vertical() -> PolarizationState:
    return PolarizationState(0.0, 1.0)


def diagonal() -> PolarizationState:
    """45-degree linear polarization, (|H> + |V>)/sqrt(2)."""
    return PolarizationState(1.0, 1.0)


def antidiagonal() -> PolarizationState:
    """135-degree linear polarization, (|H> - |V>)/sqrt(2)."""
    return PolarizationState(1.0, -1.0)


@dataclass(frozen=True)
class DichotomicObservable:
    """Observable diagonal in the H/V basis: A|H> = +|H>, A|V> = -|V>."""

    eig_plus: float = 1.0
    eig_minus: float = -1.0

    def matrix(self) -> np.ndarray:
        return np.diag([complex(self.eig_plus), complex(self.eig_minus)])


#: The birefringence observable all schemes couple to.
OBSERVABLE = DichotomicObservable()


@dataclass(frozen=True)
class WeakValueResult:
    """Weak value together with the post-selection bookkeeping.

    `p_postselect` equals |overlap|^2 — the success probability of the
    post-selection.
    """

    a_w: complex
    overlap: complex
    p_postselect: float


def inner_product(bra: PolarizationState, ket: PolarizationState) -> complex:
    """<bra|ket>, conjugate-linear in the bra argument."""
    return complex(
        bra.amp_h.conjugate() * ket.amp_h + bra.amp_v.conjugate() * ket.amp_v
    )


def weak_value(
    pre: PolarizationState,
    post: PolarizationState,
    obs: DichotomicObservable = OBSERVABLE,
) -> WeakValueResult:
    """Weak value <post|A|pre> / <post|pre> between pre- and post-selection.

    Raises DegenerateOverlap when the pair is orthogonal within
    OVERLAP_FLOOR, where the ratio is undefined.
    """
    overlap = inner_product(post, pre)
    if abs(overlap) <= OVERLAP_FLOOR:
        raise DegenerateOverlap(
            f"|<post|pre>| = {abs(overlap):.3e} <= {OVERLAP_FLOOR:.0e}"
        )
    numerator = (
        post.amp_h.conjugate() * obs.eig_plus * pre.amp_h
        + post.amp_v.conjugate() * obs.eig_minus * pre.amp_v
    )
    a_w = numerator / overlap
    return WeakValueResult(
        a_w=complex(a_w),
        overlap=complex(overlap),
        p_postselect=float(abs(overlap) ** 2),
    )


def preset_real_wv(delta: float) -> tuple[PolarizationState, PolarizationState]:
    """Pre/post pair for the time-domain (real weak value) scheme.

    pre = (|H> + |V>)/sqrt(2); post is the crossed analyzer rotated by
    `delta`, cos(pi/4 + delta)|H> - sin(pi/4 + delta)|V>. The weak value is
    purely real, A_w = -cot(delta), and p = sin^2(delta).
    """
    if delta == 0.0 or not abs(delta) < math.pi / 2:
        raise DomainError(
            f"delta must satisfy 0 < |delta| < pi/2, got {delta!r}"
        )
    pre = diagonal()
    theta = math.pi / 4 + delta
    post = PolarizationState(math.cos(theta), -math.sin(theta))
    return pre, post


def preset_imag_wv(phi: float) -> tuple[PolarizationState, PolarizationState]:
    """Pre/post pair for the frequency-domain (imaginary weak value) scheme.

    pre = (|H> + i|V>)/sqrt(2); post = (i e^{i phi}|H> + e^{-i phi}|V>)/sqrt(2).
    The weak value is purely imaginary, A_w = i cot(phi), and p = sin^2(phi).
    """
    if phi == 0.0 or not abs(phi) <= math.pi / 2:
        raise DomainError(f"phi must satisfy 0 < |phi| <= pi/2, got {phi!r}")
    pre = PolarizationState(1.0, 1.0j)
    post = PolarizationState(
        1.0j * np.exp(1.0j * phi), np.exp(-1.0j * phi)
    )
    return pre, post


def rotate_analyzer(
    state: PolarizationState, epsilon: float
) -> PolarizationState:
    """Rotate a state by the angle `epsilon` in the H/V plane.

    Models an angular misalignment of a polarizing beam splitter; norm is
    preserved.
    """
    c, s = math.cos(epsilon), math.sin(epsilon)
    return PolarizationState(
        c * state.amp_h - s * state.amp_v,
        s * state.amp_h + c * state.amp_v,
    )
