"""Scenario files: the full parameter set for one simulated link.

The on-disk format is JSON with lengths in millimeters for optical elements,
meters for the transmission distance d, and nanometers for the wavelength;
everything is converted to SI meters on load.  Missing keys fall back to the
desk-scale reference design; unknown keys are a warning by default and an
error in strict mode.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, replace
from decimal import Decimal
from pathlib import Path

from .comms import ReceiverParams
from .errors import ScenarioError
from .link_budget import LinkBudgetParams
from .ray_matrix import CavityGeometry

LOSS_SCALE_SOURCES = ("calibrated", "explicit")


@dataclass(frozen=True)
class ModelChoices:
    """Reporting/calibration switches that are not physical parameters."""

    log_base: float = 2.0            # base of the spectral-efficiency logarithm
    n_source: str = "calibrated"     # aperture-loss scale: fit to the anchor, or taken from link.loss_scale
    clamp_negative_power: bool = True

    def __post_init__(self):
        if self.log_base <= 1.0:
            raise ValueError(f"log_base must be > 1, got {self.log_base!r}")
        if self.n_source not in LOSS_SCALE_SOURCES:
            raise ValueError(f"N_source must be one of {LOSS_SCALE_SOURCES}, got {self.n_source!r}")


@dataclass(frozen=True)
class Scenario:
    """Geometry, power model, receiver, and model choices for one run."""

    geometry: CavityGeometry
    link: LinkBudgetParams
    receiver: ReceiverParams
    model_choices: ModelChoices
    pump_input_power: float = 210.0   # default pump electrical input [W]

    def __post_init__(self):
        if self.pump_input_power < 0:
            raise ValueError(f"pump_input_power must be >= 0, got {self.pump_input_power!r}")


def default_scenario() -> Scenario:
    """The reference desk-scale scenario (all dataclass defaults)."""
    return Scenario(
        geometry=CavityGeometry(),
        link=LinkBudgetParams(),
        receiver=ReceiverParams(),
        model_choices=ModelChoices(),
    )


def _shift_decimal(value: float, places: int) -> float:
    # Scale by a power of ten in decimal space so that mm <-> m conversions
    # of round config numbers survive a save/load round trip bit-exactly.
    return float(Decimal(repr(value)).scaleb(places))


def _mm_to_m(v: float) -> float:
    return _shift_decimal(v, -3)


def _m_to_mm(v: float) -> float:
    return _shift_decimal(v, 3)


def _nm_to_m(v: float) -> float:
    return _shift_decimal(v, -9)


def _m_to_nm(v: float) -> float:
    return _shift_decimal(v, 9)


# JSON key -> (dataclass field, converter to SI)
_GEOMETRY_KEYS = {
    "rho1_mm": ("rho1", _mm_to_m),
    "rho2_mm": ("rho2", _mm_to_m),
    "f_gain_mm": ("f_gain", _mm_to_m),
    "f1_mm": ("f1", _mm_to_m),
    "magnification": ("magnification", float),
    "L1_mm": ("L1", _mm_to_m),
    "L2_mm": ("L2", _mm_to_m),
    "d_m": ("d", float),
    "aperture_gain_mm": ("aperture_gain", _mm_to_m),
    "aperture_tim_mm": ("aperture_tim", _mm_to_m),
}

_LINK_KEYS = {
    "reflectivity": "reflectivity",
    "conversion_efficiency": "conversion_efficiency",
    "intercept_w": "intercept",
    "loss_scale": "loss_scale",
    "pv_slope": "pv_slope",
    "pv_intercept_w": "pv_intercept",
}

_RECEIVER_KEYS = {
    "responsivity_a_per_w": "responsivity",
    "split_ratio": "split_ratio",
    "electron_charge_c": "electron_charge",
    "background_current_a": "background_current",
    "bandwidth_hz": "bandwidth",
    "boltzmann_j_per_k": "boltzmann",
    "temperature_k": "temperature",
    "load_resistance_ohm": "load_resistance",
}

_MODEL_KEYS = ("log_base", "lambda_nm", "N_source", "clamp_negative_power")
_TOP_KEYS = ("geometry", "link", "receiver", "model_choices", "pump_input_power_w")


def _complain(message: str, strict: bool) -> None:
    if strict:
        raise ScenarioError(message)
    warnings.warn(message, stacklevel=3)


def _number(path: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{path}: expected a number, got {value!r}")
    if not math.isfinite(float(value)):
        raise ScenarioError(f"{path}: must be finite, got {value!r}")
    return float(value)


def _section(raw: dict, name: str) -> dict:
    section = raw.get(name, {})
    if not isinstance(section, dict):
        raise ScenarioError(f"{name}: expected an object, got {type(section).__name__}")
    return section


def scenario_from_dict(raw: dict, strict: bool = False) -> Scenario:
    """Build a validated Scenario from parsed JSON (external units)."""
    if not isinstance(raw, dict):
        raise ScenarioError(f"scenario root must be an object, got {type(raw).__name__}")
    for key in raw:
        if key not in _TOP_KEYS:
            _complain(f"unknown scenario key {key!r}", strict)

    base = default_scenario()

    geom_kwargs = {}
    section = _section(raw, "geometry")
    for key, value in section.items():
        if key not in _GEOMETRY_KEYS:
            _complain(f"unknown key geometry.{key!r}", strict)
            continue
        field, convert = _GEOMETRY_KEYS[key]
        geom_kwargs[field] = convert(_number(f"geometry.{key}", value))

    model_kwargs = {}
    section = _section(raw, "model_choices")
    for key, value in section.items():
        if key not in _MODEL_KEYS:
            _complain(f"unknown key model_choices.{key!r}", strict)
            continue
        if key == "log_base":
            model_kwargs["log_base"] = _number("model_choices.log_base", value)
        elif key == "lambda_nm":
            geom_kwargs["wavelength"] = _nm_to_m(_number("model_choices.lambda_nm", value))
        elif key == "N_source":
            if not isinstance(value, str):
                raise ScenarioError(f"model_choices.N_source: expected a string, got {value!r}")
            model_kwargs["n_source"] = value
        elif key == "clamp_negative_power":
            if not isinstance(value, bool):
                raise ScenarioError(f"model_choices.clamp_negative_power: expected a boolean, got {value!r}")
            model_kwargs["clamp_negative_power"] = value

    link_kwargs = {}
    section = _section(raw, "link")
    for key, value in section.items():
        if key not in _LINK_KEYS:
            _complain(f"unknown key link.{key!r}", strict)
            continue
        link_kwargs[_LINK_KEYS[key]] = _number(f"link.{key}", value)

    recv_kwargs = {}
    section = _section(raw, "receiver")
    for key, value in section.items():
        if key not in _RECEIVER_KEYS:
            _complain(f"unknown key receiver.{key!r}", strict)
            continue
        recv_kwargs[_RECEIVER_KEYS[key]] = _number(f"receiver.{key}", value)

    pump = base.pump_input_power
    if "pump_input_power_w" in raw:
        pump = _number("pump_input_power_w", raw["pump_input_power_w"])

    try:
        geometry = replace(base.geometry, **geom_kwargs)
    except ValueError as exc:
        raise ScenarioError(f"geometry: {exc}") from exc
    try:
        link = replace(base.link, **link_kwargs)
    except ValueError as exc:
        raise ScenarioError(f"link: {exc}") from exc
    try:
        receiver = replace(base.receiver, **recv_kwargs)
    except ValueError as exc:
        raise ScenarioError(f"receiver: {exc}") from exc
    try:
        model = replace(base.model_choices, **model_kwargs)
    except ValueError as exc:
        raise ScenarioError(f"model_choices: {exc}") from exc
    try:
        return Scenario(geometry=geometry, link=link, receiver=receiver,
                        model_choices=model, pump_input_power=pump)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def scenario_to_dict(s: Scenario) -> dict:
    """External-unit dict representation (inverse of scenario_from_dict)."""
    g, link, r, m = s.geometry, s.link, s.receiver, s.model_choices
    return {
        "geometry": {
            "rho1_mm": _m_to_mm(g.rho1),
            "rho2_mm": _m_to_mm(g.rho2),
            "f_gain_mm": _m_to_mm(g.f_gain),
            "f1_mm": _m_to_mm(g.f1),
            "magnification": g.magnification,
            "L1_mm": _m_to_mm(g.L1),
            "L2_mm": _m_to_mm(g.L2),
            "d_m": g.d,
            "aperture_gain_mm": _m_to_mm(g.aperture_gain),
            "aperture_tim_mm": _m_to_mm(g.aperture_tim),
        },
        "link": {
            "reflectivity": link.reflectivity,
            "conversion_efficiency": link.conversion_efficiency,
            "intercept_w": link.intercept,
            "loss_scale": link.loss_scale,
            "pv_slope": link.pv_slope,
            "pv_intercept_w": link.pv_intercept,
        },
        "receiver": {
            "responsivity_a_per_w": r.responsivity,
            "split_ratio": r.split_ratio,
            "electron_charge_c": r.electron_charge,
            "background_current_a": r.background_current,
            "bandwidth_hz": r.bandwidth,
            "boltzmann_j_per_k": r.boltzmann,
            "temperature_k": r.temperature,
            "load_resistance_ohm": r.load_resistance,
        },
        "pump_input_power_w": s.pump_input_power,
        "model_choices": {
            "log_base": m.log_base,
            "lambda_nm": _m_to_nm(g.wavelength),
            "N_source": m.n_source,
            "clamp_negative_power": m.clamp_negative_power,
        },
    }


def load_scenario(path, strict: bool = False) -> Scenario:
    """Load and validate a scenario file; empty file means all defaults."""
    text = Path(path).read_text(encoding="utf-8")
    if text.strip() == "":
        raw = {}
    else:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"{path}: not valid JSON ({exc})") from exc
    return scenario_from_dict(raw, strict=strict)


def save_scenario(s: Scenario, path) -> None:
    """Write a scenario as JSON in external units; load_scenario inverts it."""
    Path(path).write_text(json.dumps(scenario_to_dict(s), indent=2) + "\n", encoding="utf-8")
