"""Paraxial ABCD matrices for the resonant-beam cavity.

Element matrices follow the sign convention in which a curved mirror of
curvature radius rho contributes -1/rho to the C entry (signed rho, so the
transmitter mirror of the reference design carries rho1 = -0.880 m).  The
telescope pair is the traversal sequence displacement(+f1), magnifier(M),
displacement(-f2) with f2 = M * f1, the overlapping-focus form that
cancels to the bare magnifier when M = 1.

All functions are pure; values are plain floats and freely shareable
between threads.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import InvalidElementError, SingularConfigurationError

log = logging.getLogger(__name__)


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InvalidElementError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class RayVector:
    """Transverse ray state: offset from the axis [m] and paraxial slope [rad]."""

    position: float
    slope: float


@dataclass(frozen=True)
class TransferMatrix:
    """2x2 ray transfer matrix [[a, b], [c, d]]; b in m, c in 1/m.

    Matrices built from validated elements have finite entries and unit
    determinant up to rounding; the container itself stays unchecked so
    that downstream guards (e.g. the NaN branch of is_stable) are honest.
    """

    a: float
    b: float
    c: float
    d: float

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        return TransferMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @staticmethod
    def identity() -> "TransferMatrix":
        return TransferMatrix(1.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class Mirror:
    """Curved mirror; curvature_radius is signed and nonzero [m]."""

    curvature_radius: float


@dataclass(frozen=True)
class ThinLens:
    """Thin lens (or the lens-like gain module); focal_length nonzero [m]."""

    focal_length: float


@dataclass(frozen=True)
class FreeSpace:
    """Free-space gap of nonnegative length [m]."""

    length: float


@dataclass(frozen=True)
class Magnifier:
    """Ideal beam compressor/expander with magnification M > 0."""

    magnification: float


OpticalElement = Union[Mirror, ThinLens, FreeSpace, Magnifier]


def displacement(offset: float) -> TransferMatrix:
    """[[1, offset], [0, 1]].

    Shared form for free-space gaps and for the telescope lens matrices,
    which carry signed offsets +f1 / -f2.
    """
    _require_finite("offset", offset)
    return TransferMatrix(1.0, offset, 0.0, 1.0)


def element_matrix(e: OpticalElement) -> TransferMatrix:
    """Transfer matrix of a single optical element."""
    if isinstance(e, Mirror):
        if e.curvature_radius == 0 or not math.isfinite(e.curvature_radius):
            raise InvalidElementError(f"mirror curvature radius must be finite and nonzero, got {e.curvature_radius!r}")
        return TransferMatrix(1.0, 0.0, -1.0 / e.curvature_radius, 1.0)
    if isinstance(e, ThinLens):
        if e.focal_length == 0 or not math.isfinite(e.focal_length):
            raise InvalidElementError(f"lens focal length must be finite and nonzero, got {e.focal_length!r}")
        return TransferMatrix(1.0, 0.0, -1.0 / e.focal_length, 1.0)
    if isinstance(e, FreeSpace):
        if e.length < 0 or not math.isfinite(e.length):
            raise InvalidElementError(f"free-space length must be finite and >= 0, got {e.length!r}")
        return displacement(e.length)
    if isinstance(e, Magnifier):
        if not (e.magnification > 0) or not math.isfinite(e.magnification):
            raise InvalidElementError(f"magnification must be finite and > 0, got {e.magnification!r}")
        return TransferMatrix(e.magnification, 0.0, 0.0, 1.0 / e.magnification)
    raise InvalidElementError(f"unknown optical element {e!r}")


def apply(m: TransferMatrix, r: RayVector) -> RayVector:
    """Propagate a ray through one matrix."""
    return RayVector(m.a * r.position + m.b * r.slope, m.c * r.position + m.d * r.slope)


def compose(matrices: Iterable[TransferMatrix]) -> TransferMatrix:
    """Product of matrices given in propagation order (first traversed first).

    The last-traversed matrix ends up leftmost in the product, so the result
    acts on a ray the same way as applying each matrix in sequence.
    """
    result = None
    for m in matrices:
        result = m if result is None else m @ result
    if result is None:
        raise ValueError("compose() requires at least one matrix")
    return result


@dataclass(frozen=True)
class CavityGeometry:
    """Full parameter set of the beam-compression cavity.

    Lengths in meters.  rho1/rho2 are signed mirror curvature radii; near-flat
    mirrors are represented by a large finite |rho| (>= 1e9 m), never by a
    special case.  The telescope is described by the concave-lens focal
    magnitude f1 and the magnification M; the convex focal length is f2 = M*f1.
    Defaults are the desk-scale reference design.
    """

    rho1: float = -0.880          # transmitter mirror curvature [m]
    rho2: float = 10.0            # receiver mirror curvature [m]
    f_gain: float = 0.880         # lens-like focal length of the gain module [m]
    f1: float = 0.010             # telescope concave-lens focal magnitude [m]
    magnification: float = 3.5    # telescope magnification M = f2/f1
    L1: float = 1e-3              # mirror-to-gain-module gap [m]; "adjacent"
    L2: float = 0.100             # gain-module-to-telescope gap [m]
    d: float = 2.6                # transmission distance (telescope to receiver mirror) [m]
    aperture_gain: float = 1.5e-3  # gain-module aperture radius [m]
    aperture_tim: float = 10e-3    # telescope aperture radius [m]
    wavelength: float = 1064e-9    # resonant-beam wavelength [m]

    def __post_init__(self):
        for name in ("rho1", "rho2", "f_gain", "f1", "magnification", "L1", "L2",
                     "d", "aperture_gain", "aperture_tim", "wavelength"):
            _require_finite(name, getattr(self, name))
        if self.rho1 == 0 or self.rho2 == 0:
            raise InvalidElementError("mirror curvature radii must be nonzero (use |rho| >= 1e9 for near-flat)")
        for name in ("f_gain", "f1", "magnification", "d", "aperture_gain", "aperture_tim", "wavelength"):
            if getattr(self, name) <= 0:
                raise InvalidElementError(f"{name} must be > 0, got {getattr(self, name)!r}")
        # L1 = 0 (mirror flush with gain module) and L2 = 0 are physically
        # meaningful degenerate placements, so only negative gaps are rejected.
        for name in ("L1", "L2"):
            if getattr(self, name) < 0:
                raise InvalidElementError(f"{name} must be >= 0, got {getattr(self, name)!r}")

    @property
    def f2(self) -> float:
        """Convex-lens focal length, tied to f1 by the magnification."""
        return self.f1 * self.magnification


def bcrb_elements(g: CavityGeometry) -> list[TransferMatrix]:
    """The nine single-pass element matrices, in propagation order."""
    return [
        element_matrix(Mirror(g.rho1)),
        displacement(g.L1),
        element_matrix(ThinLens(g.f_gain)),
        displacement(g.L2),
        displacement(g.f1),
        element_matrix(Magnifier(g.magnification)),
        displacement(-g.f2),
        displacement(g.d),
        element_matrix(Mirror(g.rho2)),
    ]


def round_trip_bcrb(g: CavityGeometry) -> TransferMatrix:
    """Round-trip matrix of the beam-compression cavity (canonical form).

    Composes mirror / gap / gain lens / telescope / gap / mirror in
    propagation order; the product is unimodular up to rounding.
    """
    return compose(bcrb_elements(g))


def round_trip_closed_form(g: CavityGeometry) -> TransferMatrix:
    """Closed-form evaluation of the same round trip.

    Cross-check for round_trip_bcrb: the expanded element expressions, using
    the shifted gaps L2' = L2 + f1 and L3' = d - f2.  The C entry is recovered
    from unimodularity, so B = 0 is a singular configuration here.
    """
    m = g.magnification
    l2p = g.L2 + g.f1
    l3p = g.d - g.f2
    h = m * l2p + l3p / m
    gain_term = m - h / g.f_gain
    b1 = g.L1 * gain_term + h
    a1 = gain_term - b1 / g.rho1
    d1 = 1.0 / m - g.L1 / (g.f_gain * m) - b1 / g.rho2
    if b1 == 0.0:
        raise SingularConfigurationError("closed-form C entry undefined: B = 0 for this geometry")
    c1 = (a1 * d1 - 1.0) / b1
    return TransferMatrix(a1, b1, c1, d1)


def round_trip_original(g: CavityGeometry) -> TransferMatrix:
    """Round-trip matrix of the baseline cavity without the telescope.

    The gain module faces the receiver mirror across a single gap L2 + d;
    telescope fields of the geometry are ignored.
    """
    return compose([
        element_matrix(Mirror(g.rho1)),
        displacement(g.L1),
        element_matrix(ThinLens(g.f_gain)),
        displacement(g.L2 + g.d),
        element_matrix(Mirror(g.rho2)),
    ])


def is_stable(m: TransferMatrix) -> bool:
    """Stability test 0 < a*d < 1 (strict) on a round-trip matrix."""
    product = m.a * m.d
    if math.isnan(product):
        log.warning("stability test saw NaN: a=%r d=%r", m.a, m.d)
        return False
    return 0.0 < product < 1.0
