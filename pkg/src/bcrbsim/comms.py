"""Data branch: detector signal level, noise variances, spectral efficiency.

P_data = gamma (1 - mu) P_beam mixes responsivity [A/W] with optical power;
it is used consistently as a model-internal signal level, feeding the shot
noise and the half-log capacity expression without a unit conversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

ELECTRON_CHARGE = 1.602e-19   # C
BOLTZMANN = 1.38e-23          # J/K


@dataclass(frozen=True)
class ReceiverParams:
    """APD / noise constants; defaults are the reference receiver at 300 K."""

    responsivity: float = 0.6              # APD optical-to-electrical responsivity gamma [A/W]
    split_ratio: float = 0.5               # share mu of beam power routed to the PV branch
    electron_charge: float = ELECTRON_CHARGE
    background_current: float = 5.1e-3     # background current [A]
    bandwidth: float = 811.7e6             # receiver bandwidth [Hz]
    boltzmann: float = BOLTZMANN
    temperature: float = 300.0             # background temperature [K]
    load_resistance: float = 1e4           # load resistor [ohm]

    def __post_init__(self):
        if not 0.0 <= self.split_ratio <= 1.0:
            raise ValueError(f"split_ratio must be in [0, 1], got {self.split_ratio!r}")
        for name in ("responsivity", "electron_charge", "bandwidth", "boltzmann", "load_resistance"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)!r}")
        # zero is meaningful for these two: dark background, cold limit
        for name in ("background_current", "temperature"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)!r}")


def data_signal(p_beam: float, r: ReceiverParams) -> float:
    """Signal level at the APD: gamma (1 - mu) P_beam."""
    if p_beam < 0:
        raise ValueError(f"beam power must be >= 0, got {p_beam!r}")
    return r.responsivity * (1.0 - r.split_ratio) * p_beam


def shot_noise(p_data: float, r: ReceiverParams) -> float:
    """Shot-noise variance 2 q (P_data + I_bg) B."""
    if p_data < 0:
        raise ValueError(f"signal level must be >= 0, got {p_data!r}")
    return 2.0 * r.electron_charge * (p_data + r.background_current) * r.bandwidth


def thermal_noise(r: ReceiverParams) -> float:
    """Thermal-noise variance 4 K T B / R_L; independent of the signal."""
    return 4.0 * r.boltzmann * r.temperature * r.bandwidth / r.load_resistance


def total_noise(p_data: float, r: ReceiverParams) -> float:
    """Shot plus thermal noise variance."""
    return shot_noise(p_data, r) + thermal_noise(r)


def spectral_efficiency(p_data: float, n2_total: float, log_base: float = 2.0) -> float:
    """Half-log capacity figure: 0.5 * log_base(1 + P_data^2 e / (2 pi n2_total)).

    Base 2 yields bit/s/Hz; the base is a reporting choice and is carried in
    dataset metadata.
    """
    if n2_total <= 0:
        raise ValueError(f"total noise must be > 0, got {n2_total!r}")
    if p_data < 0:
        raise ValueError(f"signal level must be >= 0, got {p_data!r}")
    if log_base <= 1.0:
        raise ValueError(f"log base must be > 1, got {log_base!r}")
    snr_like = p_data * p_data * math.e / (2.0 * math.pi * n2_total)
    return 0.5 * math.log1p(snr_like) / math.log(log_base)
