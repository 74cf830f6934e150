"""Gaussian beam spot radii on the cavity mirrors and on the gain module.

The fundamental-mode radii on the two end mirrors follow from the round-trip
matrix entries; the gain-module radius is the mirror-1 spot propagated over
the short mirror-to-gain gap with the usual Gaussian divergence law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnstableCavityError
from .ray_matrix import CavityGeometry, TransferMatrix, is_stable, round_trip_bcrb, round_trip_original


@dataclass(frozen=True)
class SpotRadii:
    """Beam spot radii [m] on mirror 1, mirror 2, and the gain module."""

    omega1: float
    omega2: float
    omega3: float


def mirror_spot_radii(m: TransferMatrix, wavelength: float) -> tuple[float, float]:
    """Spot radii (omega1, omega2) on the end mirrors from a round-trip matrix.

    omega1^4 = -(lambda/pi)^2 * b^2 d / (a (a d - 1)) and the mirror-2 form
    with a, d swapped.  Both radicands are positive strictly inside the
    stability region; a nonpositive radicand (boundary operation included)
    raises rather than being clamped, naming the spot that failed.
    """
    if wavelength <= 0:
        raise ValueError(f"wavelength must be > 0, got {wavelength!r}")
    if not is_stable(m):
        raise UnstableCavityError(f"round trip unstable: a*d = {m.a * m.d!r} outside (0, 1)")
    scale = (wavelength / math.pi) ** 2
    excess = m.a * m.d - 1.0  # negative inside the stability region
    rad1 = -scale * m.b * m.b * m.d / (m.a * excess)
    rad2 = -scale * m.b * m.b * m.a / (m.d * excess)
    if rad1 <= 0:
        raise UnstableCavityError(f"omega1 radicand nonpositive ({rad1!r}); cavity at or beyond stability boundary")
    if rad2 <= 0:
        raise UnstableCavityError(f"omega2 radicand nonpositive ({rad2!r}); cavity at or beyond stability boundary")
    return rad1 ** 0.25, rad2 ** 0.25


def propagate_spot(omega1: float, rho1: float, L1: float, wavelength: float) -> float:
    """Spot radius after propagating a distance L1 from mirror 1.

    omega3^2 = omega1^2 [(1 + L1/rho1)^2 + (L1 lambda / (pi omega1^2))^2];
    exact identity omega3 == omega1 at L1 = 0.
    """
    if omega1 <= 0:
        raise ValueError(f"omega1 must be > 0, got {omega1!r}")
    if wavelength <= 0:
        raise ValueError(f"wavelength must be > 0, got {wavelength!r}")
    if L1 < 0:
        raise ValueError(f"L1 must be >= 0, got {L1!r}")
    geometric = 1.0 + L1 / rho1
    diffractive = L1 * wavelength / (math.pi * omega1 * omega1)
    return omega1 * math.sqrt(geometric * geometric + diffractive * diffractive)


def cavity_spot_radii(g: CavityGeometry, system: str = "bcrb") -> SpotRadii:
    """All three spot radii for a geometry, for either cavity layout."""
    if system == "bcrb":
        m = round_trip_bcrb(g)
    elif system == "original":
        m = round_trip_original(g)
    else:
        raise ValueError(f"system must be 'bcrb' or 'original', got {system!r}")
    omega1, omega2 = mirror_spot_radii(m, g.wavelength)
    omega3 = propagate_spot(omega1, g.rho1, g.L1, g.wavelength)
    return SpotRadii(omega1, omega2, omega3)
