"""Boundary searches, loss-model calibration, and figure dataset generation.

The stability boundary in distance is located by a fixed-stride scan followed
by bisection; disconnected stability bands are reported, not silently merged.
The aperture-loss scale factor N is pinned by inverting the beam-power model
at a reference measurement of the telescope-free system (5 W external beam at
3 m with 210 W pump input).

generate_figure() produces the built-in studies fig6..fig13 as plain,
deterministic column/row datasets; identical inputs give bit-identical
datasets.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .comms import data_signal, shot_noise, spectral_efficiency, thermal_noise, total_noise
from .errors import InfeasibleSearchError, NoStableRegionError, UnstableCavityError
from .gaussian_beam import cavity_spot_radii
from .link_budget import LinkBudgetParams, beam_power, effective_aperture, pv_output, transmission_loss
from .ray_matrix import CavityGeometry, is_stable, round_trip_bcrb, round_trip_original
from .scenario import Scenario, default_scenario, scenario_to_dict

log = logging.getLogger(__name__)

# Reference measurement pinning the loss scale: the telescope-free system
# delivers 5 W external beam power at 3 m for 210 W pump input.
ANCHOR_DISTANCE = 3.0       # m
ANCHOR_BEAM_POWER = 5.0     # W
ANCHOR_INPUT_POWER = 210.0  # W

FIGURE_IDS = ("fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13")

SCAN_STRIDE = 0.1           # m, fixed stride of the pre-bisection stability scan
DISTANCE_TOLERANCE = 1e-3   # m, bisection tolerance for distance boundaries
RHO2_REL_TOLERANCE = 1e-6   # relative bisection tolerance for curvature boundaries


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional sweep request; the scenario supplies all fixed values."""

    variable: str
    lo: float
    hi: float
    samples: int
    system: str = "bcrb"

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"sweep range must satisfy lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if self.samples < 2:
            raise ValueError(f"samples must be >= 2, got {self.samples!r}")
        if self.system not in ("bcrb", "original"):
            raise ValueError(f"system must be 'bcrb' or 'original', got {self.system!r}")


@dataclass(frozen=True)
class FigureDataset:
    """Columnar sweep result with a reproducibility metadata snapshot."""

    figure_id: str
    columns: tuple[str, ...]        # header names with units in brackets
    rows: tuple[tuple[float, ...], ...]
    metadata: dict

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"row width {len(row)} != column count {len(self.columns)}")

    def column(self, name: str) -> list[float]:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]


def _stable_at(g: CavityGeometry, d: float, system: str = "bcrb") -> bool:
    probe = round_trip_bcrb if system == "bcrb" else round_trip_original
    return is_stable(probe(replace(g, d=d)))


def _scan_grid(d_hi: float, stride: float) -> list[float]:
    points = [i * stride for i in range(1, int(d_hi / stride) + 1)]
    if not points or points[-1] < d_hi:
        points.append(d_hi)
    return points


def scan_stability_bands(g: CavityGeometry, d_hi: float, stride: float = SCAN_STRIDE,
                         system: str = "bcrb") -> list[tuple[float, float]]:
    """Stable intervals of d in (0, d_hi] at scan resolution.

    Returns (first_stable_sample, last_stable_sample) per band; band edges are
    grid points, refined later by bisection where needed.
    """
    if d_hi <= 0:
        raise ValueError(f"d_hi must be > 0, got {d_hi!r}")
    if stride <= 0:
        raise ValueError(f"stride must be > 0, got {stride!r}")
    points = _scan_grid(d_hi, stride)
    bands: list[tuple[float, float]] = []
    open_start = None
    last_stable = None
    for d in points:
        if _stable_at(g, d, system):
            if open_start is None:
                open_start = d
            last_stable = d
        elif open_start is not None:
            bands.append((open_start, last_stable))
            open_start = None
    if open_start is not None:
        bands.append((open_start, last_stable))
    return bands


def max_stable_distance(g: CavityGeometry, d_hi: float,
                        stride: float = SCAN_STRIDE, tol: float = DISTANCE_TOLERANCE,
                        system: str = "bcrb") -> float:
    """Largest stable distance of the band containing the smallest stable d.

    Scans with a fixed stride, then bisects the stable->unstable transition to
    within tol; returns d_hi itself when the first band extends to it.  More
    than one band is reported with a warning.
    """
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol!r}")
    if d_hi <= 0:
        raise ValueError(f"d_hi must be > 0, got {d_hi!r}")
    if stride <= 0:
        raise ValueError(f"stride must be > 0, got {stride!r}")
    points = _scan_grid(d_hi, stride)
    flags = [_stable_at(g, d, system) for d in points]
    band_count = sum(1 for i, f in enumerate(flags) if f and (i == 0 or not flags[i - 1]))
    if band_count == 0:
        raise NoStableRegionError(f"no stable distance found in (0, {d_hi}] m at stride {stride} m")
    if band_count > 1:
        log.warning("found %d stability bands in (0, %g] m; returning the upper edge of the first",
                    band_count, d_hi)
    first = flags.index(True)
    end = first
    while end + 1 < len(points) and flags[end + 1]:
        end += 1
    if end == len(points) - 1:
        return points[-1]
    lo, hi = points[end], points[end + 1]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _stable_at(g, mid, system):
            lo = mid
        else:
            hi = mid
    return lo


def required_rho2(g: CavityGeometry, d: float, rho2_hi: float,
                  samples: int = 200, rel_tol: float = RHO2_REL_TOLERANCE) -> float:
    """Smallest receiver-mirror curvature radius that stabilizes distance d.

    Scans rho2 in (0, rho2_hi], then bisects the unstable->stable transition
    to the requested relative precision.
    """
    if rho2_hi <= 0:
        raise ValueError(f"rho2_hi must be > 0, got {rho2_hi!r}")
    base = replace(g, d=d)
    grid = [rho2_hi * (i + 1) / samples for i in range(samples)]
    first_stable = None
    for i, rho2 in enumerate(grid):
        if is_stable(round_trip_bcrb(replace(base, rho2=rho2))):
            first_stable = i
            break
    if first_stable is None:
        raise InfeasibleSearchError(
            f"no rho2 in (0, {rho2_hi}] m stabilizes d = {d} m (scanned {samples} points)")
    hi = grid[first_stable]
    lo = grid[first_stable - 1] if first_stable > 0 else hi / samples
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if is_stable(round_trip_bcrb(replace(base, rho2=mid))):
            hi = mid
        else:
            lo = mid
    return hi


def max_spot_over_range(g: CavityGeometry, d_lo: float, d_hi: float, samples: int = 201) -> float:
    """Maximum gain-module spot radius over a dense sample of [d_lo, d_hi]."""
    if d_lo <= 0:
        raise ValueError(f"d_lo must be > 0, got {d_lo!r}")
    if d_hi < d_lo:
        raise ValueError(f"need d_lo <= d_hi, got [{d_lo!r}, {d_hi!r}]")
    if d_lo == d_hi:
        grid = [d_lo]
    else:
        grid = list(np.linspace(d_lo, d_hi, max(samples, 2)))
    best = -math.inf
    for d in grid:
        try:
            spots = cavity_spot_radii(replace(g, d=float(d)), "bcrb")
        except UnstableCavityError as exc:
            raise UnstableCavityError(f"cavity unstable at d = {float(d):g} m inside [{d_lo:g}, {d_hi:g}] m") from exc
        if spots.omega3 > best:
            best = spots.omega3
    return best


def calibrate_loss_scale(anchor_d: float, anchor_beam_power: float, p_in: float,
                         aperture: float, wavelength: float, p: LinkBudgetParams) -> float:
    """Loss scale N that reproduces a measured beam power at a known distance.

    Inverts the beam-power expression for the aperture loss delta_t* at the
    anchor, then divides out the geometric exponential.  An anchor power at or
    above the zero-loss value needs delta_t* <= 0 and is infeasible.
    """
    if anchor_d <= 0:
        raise ValueError(f"anchor distance must be > 0, got {anchor_d!r}")
    if p_in <= 0:
        raise ValueError(f"anchor input power must be > 0, got {p_in!r}")
    if aperture <= 0 or wavelength <= 0:
        raise ValueError("aperture and wavelength must be > 0")
    net = anchor_beam_power - p.intercept
    if net <= 0:
        raise InfeasibleSearchError(
            f"anchor beam power {anchor_beam_power!r} W is unreachable for intercept {p.intercept!r} W")
    r = p.reflectivity
    slope = 2.0 * (1.0 - r) * p.conversion_efficiency / (1.0 + r)
    delta_star = slope * p_in / net + math.log(r)
    if delta_star <= 0:
        raise InfeasibleSearchError(
            f"anchor requires aperture loss {delta_star:g} <= 0; beam power too high to calibrate against")
    return delta_star / math.exp(-2.0 * math.pi * aperture * aperture / (wavelength * anchor_d))


def resolve_link_params(s: Scenario) -> LinkBudgetParams:
    """Link parameters with the loss scale resolved per the scenario's N_source."""
    if s.model_choices.n_source == "explicit":
        return s.link
    n = calibrate_loss_scale(ANCHOR_DISTANCE, ANCHOR_BEAM_POWER, ANCHOR_INPUT_POWER,
                             s.geometry.aperture_gain, s.geometry.wavelength, s.link)
    return replace(s.link, loss_scale=n)


def operating_point(s: Scenario, system: str = "bcrb",
                    d: Optional[float] = None, p_in: Optional[float] = None,
                    mu: Optional[float] = None,
                    link: Optional[LinkBudgetParams] = None) -> dict:
    """Evaluate the full model chain at one distance; fixed key order.

    Spot radii are NaN when the cavity is unstable at this distance.  The
    power/comms chain does not depend on the cavity matrix and is always
    evaluated; stages downstream of the beam power see it floored at 0.
    """
    if system not in ("bcrb", "original"):
        raise ValueError(f"system must be 'bcrb' or 'original', got {system!r}")
    g = s.geometry if d is None else replace(s.geometry, d=d)
    if p_in is None:
        p_in = s.pump_input_power
    if mu is None:
        mu = s.receiver.split_ratio
    if link is None:
        link = resolve_link_params(s)
    clamp = s.model_choices.clamp_negative_power

    m = round_trip_bcrb(g) if system == "bcrb" else round_trip_original(g)
    stable = is_stable(m)
    if stable:
        spots = cavity_spot_radii(g, system)
        omega1, omega2, omega3 = spots.omega1, spots.omega2, spots.omega3
    else:
        omega1 = omega2 = omega3 = math.nan

    delta_t = transmission_loss(g.d, effective_aperture(g, system), g.wavelength, link.loss_scale)
    p_beam = beam_power(p_in, delta_t, link, clamp=clamp)
    p_beam_floor = max(p_beam, 0.0)
    p_out = pv_output(p_beam_floor, mu, link, clamp=clamp)
    receiver = replace(s.receiver, split_ratio=mu)
    p_data = data_signal(p_beam_floor, receiver)
    n2_shot = shot_noise(p_data, receiver)
    n2_thermal = thermal_noise(receiver)
    n2_total = total_noise(p_data, receiver)
    c_tilde = spectral_efficiency(p_data, n2_total, s.model_choices.log_base)

    return {
        "d": g.d,
        "p_in": p_in,
        "mu": mu,
        "stable": stable,
        "stability_product": m.a * m.d,
        "omega1": omega1,
        "omega2": omega2,
        "omega3": omega3,
        "delta_t": delta_t,
        "beam_power": p_beam,
        "pv_output": p_out,
        "data_signal": p_data,
        "shot_noise": n2_shot,
        "thermal_noise": n2_thermal,
        "total_noise": n2_total,
        "spectral_efficiency": c_tilde,
    }


def _scenario_metadata(s: Scenario, link: LinkBudgetParams) -> dict:
    meta: dict = {}
    ext = scenario_to_dict(s)
    for section in ("geometry", "link", "receiver"):
        for key, value in ext[section].items():
            meta[f"{section}.{key}"] = value
    meta["pump_input_power_w"] = ext["pump_input_power_w"]
    for key, value in ext["model_choices"].items():
        meta[f"model.{key}"] = value
    meta["model.loss_scale_effective"] = link.loss_scale
    return meta


def _dataset(figure_id: str, s: Scenario, link: LinkBudgetParams,
             columns: Sequence[str], rows: list[tuple[float, ...]], extra_meta: dict) -> FigureDataset:
    meta = {"figure_id": figure_id}
    meta.update(extra_meta)
    meta.update(_scenario_metadata(s, link))
    return FigureDataset(figure_id=figure_id, columns=tuple(columns),
                         rows=tuple(tuple(row) for row in rows), metadata=meta)


def _fmt(value: float) -> str:
    return f"{value:g}"


def _fig6(s: Scenario, link: LinkBudgetParams) -> FigureDataset:
    # Spot radius on the gain module and beam power vs distance, both systems.
    grid = np.linspace(1.5, 6.0, 91)
    p_in = s.pump_input_power
    rows = []
    for d in grid:
        g = replace(s.geometry, d=float(d))
        row = [float(d)]
        for system in ("bcrb", "original"):
            row.append(cavity_spot_radii(g, system).omega3)
        for system in ("bcrb", "original"):
            delta = transmission_loss(g.d, effective_aperture(g, system), g.wavelength, link.loss_scale)
            row.append(beam_power(p_in, delta, link, clamp=s.model_choices.clamp_negative_power))
        rows.append(tuple(row))
    columns = ["d [m]", "omega3_bcrb [m]", "omega3_original [m]",
               "beam_power_bcrb [W]", "beam_power_original [W]"]
    return _dataset("fig6", s, link, columns, rows,
                    {"sweep.variable": "d", "sweep.lo_m": 1.5, "sweep.hi_m": 6.0,
                     "sweep.samples": len(grid), "sweep.p_in_w": p_in})


def _fig7(s: Scenario, link: LinkBudgetParams) -> FigureDataset:
    # Beam power and pump-to-beam efficiency vs input power at the reference distance.
    grid = np.linspace(150.0, 300.0, 151)
    g = s.geometry
    rows = []
    for p_in in grid:
        row = [float(p_in)]
        powers = {}
        for system in ("bcrb", "original"):
            delta = transmission_loss(g.d, effective_aperture(g, system), g.wavelength, link.loss_scale)
            powers[system] = beam_power(float(p_in), delta, link, clamp=s.model_choices.clamp_negative_power)
            row.append(powers[system])
        row.append(powers["bcrb"] / float(p_in))
        row.append(powers["original"] / float(p_in))
        rows.append(tuple(row))
    columns = ["P_in [W]", "beam_power_bcrb [W]", "beam_power_original [W]",
               "efficiency_bcrb [-]", "efficiency_original [-]"]
    return _dataset("fig7", s, link, columns, rows,
                    {"sweep.variable": "P_in", "sweep.lo_w": 150.0, "sweep.hi_w": 300.0,
                     "sweep.samples": len(grid), "sweep.d_m": g.d})


def _fig8(s: Scenario, link: LinkBudgetParams,
          m_values: Sequence[float], d_hi: float = 60.0) -> FigureDataset:
    # Maximum stable distance vs receiver-mirror curvature, one series per magnification.
    grid = np.linspace(5.0, 50.0, 10)
    rows = []
    for rho2 in grid:
        row = [float(rho2)]
        for m in m_values:
            g = replace(s.geometry, rho2=float(rho2), magnification=float(m))
            row.append(max_stable_distance(g, d_hi))
        rows.append(tuple(row))
    columns = ["rho2 [m]"] + [f"d_max_M{_fmt(m)} [m]" for m in m_values]
    return _dataset("fig8", s, link, columns, rows,
                    {"sweep.variable": "rho2", "sweep.lo_m": 5.0, "sweep.hi_m": 50.0,
                     "sweep.samples": len(grid), "sweep.d_hi_m": d_hi,
                     "series.magnification": ", ".join(_fmt(m) for m in m_values)})


def _fig9(s: Scenario, link: LinkBudgetParams,
          d_values: Sequence[float], rho2_hi: float = 80.0) -> FigureDataset:
    # Required receiver-mirror curvature vs magnification, one series per distance.
    grid = np.linspace(1.5, 6.0, 19)
    rows = []
    for m in grid:
        g = replace(s.geometry, magnification=float(m))
        row = [float(m)]
        for d in d_values:
            row.append(required_rho2(g, float(d), rho2_hi))
        rows.append(tuple(row))
    columns = ["M [-]"] + [f"rho2_min_d{_fmt(d)} [m]" for d in d_values]
    return _dataset("fig9", s, link, columns, rows,
                    {"sweep.variable": "M", "sweep.lo": 1.5, "sweep.hi": 6.0,
                     "sweep.samples": len(grid), "sweep.rho2_hi_m": rho2_hi,
                     "series.d_m": ", ".join(_fmt(d) for d in d_values)})


def _fig10(s: Scenario, link: LinkBudgetParams,
           d_values: Sequence[float], rho2: float = 50.0, d_lo: float = 1.0) -> FigureDataset:
    # Worst-case gain-module spot radius vs magnification, one series per distance cap.
    # rho2 defaults to a large value so every distance range stays stable.
    grid = np.linspace(2.0, 5.0, 16)
    rows = []
    for m in grid:
        g = replace(s.geometry, magnification=float(m), rho2=rho2)
        row = [float(m)]
        for d in d_values:
            row.append(max_spot_over_range(g, d_lo, float(d)))
        rows.append(tuple(row))
    columns = ["M [-]"] + [f"omega3_max_d{_fmt(d)} [m]" for d in d_values]
    return _dataset("fig10", s, link, columns, rows,
                    {"sweep.variable": "M", "sweep.lo": 2.0, "sweep.hi": 5.0,
                     "sweep.samples": len(grid), "sweep.rho2_m": rho2, "sweep.d_lo_m": d_lo,
                     "series.d_hi_m": ", ".join(_fmt(d) for d in d_values)})


def _distance_grid() -> np.ndarray:
    return np.linspace(1.0, 250.0, 250)


def _fig11(s: Scenario, link: LinkBudgetParams, p_in_values: Sequence[float]) -> FigureDataset:
    # PV output vs distance at full power split, one series per input power.
    rows = []
    clamp = s.model_choices.clamp_negative_power
    for d in _distance_grid():
        g = replace(s.geometry, d=float(d))
        delta = transmission_loss(g.d, effective_aperture(g, "bcrb"), g.wavelength, link.loss_scale)
        row = [float(d)]
        for p_in in p_in_values:
            p_beam = beam_power(float(p_in), delta, link, clamp=clamp)
            row.append(pv_output(max(p_beam, 0.0), 1.0, link, clamp=clamp))
        rows.append(tuple(row))
    columns = ["d [m]"] + [f"P_out_Pin{_fmt(p)} [W]" for p in p_in_values]
    return _dataset("fig11", s, link, columns, rows,
                    {"sweep.variable": "d", "sweep.lo_m": 1.0, "sweep.hi_m": 250.0,
                     "sweep.samples": 250, "sweep.mu": 1.0,
                     "series.p_in_w": ", ".join(_fmt(p) for p in p_in_values)})


def _spectral_efficiency_rows(s: Scenario, link: LinkBudgetParams,
                              series: Sequence[tuple[float, float]]) -> list[tuple[float, ...]]:
    # series: (p_in, mu) pairs, one output column each.
    rows = []
    clamp = s.model_choices.clamp_negative_power
    for d in _distance_grid():
        g = replace(s.geometry, d=float(d))
        delta = transmission_loss(g.d, effective_aperture(g, "bcrb"), g.wavelength, link.loss_scale)
        row = [float(d)]
        for p_in, mu in series:
            p_beam = max(beam_power(p_in, delta, link, clamp=clamp), 0.0)
            receiver = replace(s.receiver, split_ratio=mu)
            p_data = data_signal(p_beam, receiver)
            row.append(spectral_efficiency(p_data, total_noise(p_data, receiver), s.model_choices.log_base))
        rows.append(tuple(row))
    return rows


def _fig12(s: Scenario, link: LinkBudgetParams, mu_values: Sequence[float]) -> FigureDataset:
    # Spectral efficiency vs distance, one series per power split ratio.
    p_in = 200.0
    rows = _spectral_efficiency_rows(s, link, [(p_in, mu) for mu in mu_values])
    columns = ["d [m]"] + [f"spectral_efficiency_mu{_fmt(mu)} [bit/s/Hz]" for mu in mu_values]
    return _dataset("fig12", s, link, columns, rows,
                    {"sweep.variable": "d", "sweep.lo_m": 1.0, "sweep.hi_m": 250.0,
                     "sweep.samples": 250, "sweep.p_in_w": p_in,
                     "series.mu": ", ".join(_fmt(mu) for mu in mu_values)})


def _fig13(s: Scenario, link: LinkBudgetParams, p_in_values: Sequence[float]) -> FigureDataset:
    # Spectral efficiency vs distance, one series per input power.
    mu = 0.9
    rows = _spectral_efficiency_rows(s, link, [(p_in, mu) for p_in in p_in_values])
    columns = ["d [m]"] + [f"spectral_efficiency_Pin{_fmt(p)} [bit/s/Hz]" for p in p_in_values]
    return _dataset("fig13", s, link, columns, rows,
                    {"sweep.variable": "d", "sweep.lo_m": 1.0, "sweep.hi_m": 250.0,
                     "sweep.samples": 250, "sweep.mu": mu,
                     "series.p_in_w": ", ".join(_fmt(p) for p in p_in_values)})


def generate_figure(figure_id: str, s: Optional[Scenario] = None, *,
                    m_values: Sequence[float] = (2.5, 3.5, 5.0),
                    d_values: Sequence[float] = (10.0, 20.0, 30.0, 40.0),
                    p_in_values: Sequence[float] = (200.0, 225.0, 250.0),
                    mu_values: Sequence[float] = (0.01, 0.1, 0.5, 0.9, 0.99)) -> FigureDataset:
    """Generate one built-in figure dataset (fig6..fig13) for a scenario."""
    if figure_id not in FIGURE_IDS:
        raise ValueError(f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}")
    if s is None:
        s = default_scenario()
    link = resolve_link_params(s)
    builders: dict[str, Callable[[], FigureDataset]] = {
        "fig6": lambda: _fig6(s, link),
        "fig7": lambda: _fig7(s, link),
        "fig8": lambda: _fig8(s, link, m_values),
        "fig9": lambda: _fig9(s, link, d_values),
        "fig10": lambda: _fig10(s, link, d_values),
        "fig11": lambda: _fig11(s, link, p_in_values),
        "fig12": lambda: _fig12(s, link, mu_values),
        "fig13": lambda: _fig13(s, link, p_in_values),
    }
    return builders[figure_id]()


_SWEEP_UNITS = {
    "d": "m", "p_in": "W", "mu": "-", "rho1": "m", "rho2": "m", "f_gain": "m",
    "f1": "m", "magnification": "-", "L1": "m", "L2": "m", "loss_scale": "-",
    "wavelength": "m",
}

_POINT_COLUMNS = (
    ("stable", "-"), ("stability_product", "-"), ("omega1", "m"), ("omega2", "m"),
    ("omega3", "m"), ("delta_t", "-"), ("beam_power", "W"), ("pv_output", "W"),
    ("data_signal", "a.u."), ("shot_noise", "a.u.^2"), ("thermal_noise", "a.u.^2"),
    ("total_noise", "a.u.^2"), ("spectral_efficiency", "bit/s/Hz"),
)


def run_sweep(spec: SweepSpec, s: Optional[Scenario] = None) -> FigureDataset:
    """Sweep one scalar parameter, evaluating the full chain at each point."""
    if s is None:
        s = default_scenario()
    if spec.variable not in _SWEEP_UNITS:
        raise ValueError(f"unknown sweep variable {spec.variable!r}; expected one of {sorted(_SWEEP_UNITS)}")
    link = resolve_link_params(s)
    grid = np.linspace(spec.lo, spec.hi, spec.samples)
    rows = []
    for value in grid:
        value = float(value)
        point_scenario = s
        kwargs = {}
        if spec.variable == "d":
            kwargs["d"] = value
        elif spec.variable == "p_in":
            kwargs["p_in"] = value
        elif spec.variable == "mu":
            kwargs["mu"] = value
        elif spec.variable == "loss_scale":
            kwargs["link"] = replace(link, loss_scale=value)
        else:
            geometry = replace(s.geometry, **{spec.variable: value})
            point_scenario = replace(s, geometry=geometry)
        point = operating_point(point_scenario, spec.system, link=kwargs.pop("link", link), **kwargs)
        rows.append(tuple([value] + [float(point[name]) for name, _ in _POINT_COLUMNS]))
    columns = [f"{spec.variable} [{_SWEEP_UNITS[spec.variable]}]"] + \
              [f"{name} [{unit}]" for name, unit in _POINT_COLUMNS]
    extra = {"sweep.variable": spec.variable, "sweep.lo": spec.lo, "sweep.hi": spec.hi,
             "sweep.samples": spec.samples, "sweep.system": spec.system}
    return _dataset(f"sweep_{spec.variable}", s, link, columns, rows, extra)
