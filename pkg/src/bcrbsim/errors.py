"""Exception types shared across the simulator."""


class BeamSimError(Exception):
    """Base class for all simulator-specific errors."""


class InvalidElementError(BeamSimError, ValueError):
    """Optical element parameters violate the element's invariants."""


class SingularConfigurationError(BeamSimError):
    """Cavity configuration where a matrix element needed for division is zero."""


class UnstableCavityError(BeamSimError):
    """Round-trip matrix outside the stability region, or a spot-size radicand is nonpositive."""


class NoStableRegionError(BeamSimError):
    """A boundary search found no stable operating point in the requested range."""


class InfeasibleSearchError(BeamSimError):
    """A search or calibration target cannot be met anywhere in the allowed domain."""


class ScenarioError(BeamSimError, ValueError):
    """Scenario file failed to parse or violates a parameter invariant."""
