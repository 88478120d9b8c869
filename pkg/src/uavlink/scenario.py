"""Sweep engine: weather conditions crossed with an experiment grid.

Loop order is iteration (outer), weather condition (middle), grid point
(inner). Randomness only enters through ground-node placement in ``grid``
mode, seeded per iteration from the master seed, so results do not depend
on how many workers evaluate the grid.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .channel import ChannelParams, LinkGeometry, path_loss, weather_excess
from .coverage import CoverageProblem, altitude_grid, coverage_radius
from .errors import DomainError, ModelError, SweepError
from .radio import (
    LinkSet,
    RadioConfig,
    channel_gain,
    energy_efficiency,
    noise_power,
    sinr,
    spectral_efficiency,
)
from .weather import (
    FogParams,
    RainParams,
    SnowParams,
    WeatherSpec,
    rain_coefficients,
    resolve,
    wavelength_cm,
)

EXPERIMENTS = ("f4", "f5", "f6", "grid")
ATTENUATION_MODES = ("parametric", "preset", "both")

# Table-coefficient stand-ins for the parametric conditions in preset mode.
# Snow has no tabulated coefficient and stays parametric.
PRESET_EQUIVALENTS = {
    "parametric-rain": "moderate rain",
    "parametric-fog": "moderate fog",
}


@dataclass(frozen=True)
class CoverageSettings:
    pl_max: float = 110.0  # dB; example budget, not a measured value
    h_min: float = 10.0  # m
    h_max: float = 1000.0  # m
    tolerance: float = 1e-3  # m
    grid_step: float = 1.0  # m

    def __post_init__(self):
        # delegate the shared checks
        self.problem(ChannelParams(), 0.0)
        if not self.grid_step > 0:
            raise DomainError(f"grid_step must be > 0 m, got {self.grid_step!r}")

    def problem(self, channel: ChannelParams, gamma: float) -> CoverageProblem:
        return CoverageProblem(
            channel=channel,
            gamma=gamma,
            pl_max=self.pl_max,
            altitude_range=(self.h_min, self.h_max),
            tolerance=self.tolerance,
        )


def linear_grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    """``start, start + step, ...`` not exceeding ``stop`` (inclusive)."""
    n = math.floor((stop - start) / step + 1e-9)
    return tuple(float(start + i * step) for i in range(n + 1))


def experiment_preset(kind: str) -> dict:
    """ScenarioConfig field overrides reproducing one of the figure sweeps.

    ``f4`` holds the slant distance at 1000 m while the elevation angle runs
    over 0..90 degrees; that geometry is a choice of this package.
    """
    if kind == "f4":
        return {"experiment": "f4", "angles": linear_grid(0, 90, 1), "slant_distance": 1000.0}
    if kind == "f5":
        return {"experiment": "f5", "distances": linear_grid(100, 1000, 100), "altitude": 120.0}
    if kind == "f6":
        cov = CoverageSettings()
        return {
            "experiment": "f6",
            "altitudes": tuple(altitude_grid(cov.h_min, cov.h_max, 10.0)),
            "coverage": cov,
        }
    raise DomainError(f"unknown experiment preset {kind!r}; expected f4, f5 or f6")


def default_weather(freq: float = 28.0) -> tuple[WeatherSpec, ...]:
    """Medium rain (12.5 mm/h), medium fog (0.05 g/m^3) and 5 mm/h snow."""
    k, alpha = rain_coefficients(freq)
    return (
        WeatherSpec.rain(RainParams(12.5, k, alpha)),
        WeatherSpec.fog(FogParams(0.05)),
        WeatherSpec.snow(SnowParams(5.0, wavelength_cm(freq))),
    )


def with_attenuation_mode(weather: tuple[WeatherSpec, ...], mode: str) -> tuple[WeatherSpec, ...]:
    """Swap (``preset``) or extend (``both``) parametric rain/fog with table presets."""
    if mode not in ATTENUATION_MODES:
        raise DomainError(f"unknown attenuation mode {mode!r}; expected {ATTENUATION_MODES}")
    if mode == "parametric":
        return tuple(weather)
    presets = [
        WeatherSpec.preset(PRESET_EQUIVALENTS[w.mode]) if w.mode in PRESET_EQUIVALENTS else w
        for w in weather
    ]
    if mode == "preset":
        return tuple(presets)
    extra = [p for w, p in zip(weather, presets) if p is not w]
    return tuple(weather) + tuple(extra)


def _strictly_increasing(xs) -> bool:
    return all(b > a for a, b in zip(xs, xs[1:]))


@dataclass(frozen=True)
class ScenarioConfig:
    weather_list: tuple[WeatherSpec, ...] = field(default_factory=default_weather)
    channel: ChannelParams = field(default_factory=ChannelParams)
    radio: RadioConfig = field(default_factory=RadioConfig)
    coverage: CoverageSettings = field(default_factory=CoverageSettings)
    experiment: str = "grid"
    angles: tuple[float, ...] = experiment_preset("f4")["angles"]
    distances: tuple[float, ...] = experiment_preset("f5")["distances"]
    altitudes: tuple[float, ...] = experiment_preset("f6")["altitudes"]
    altitude: float = 120.0  # m, UAV altitude for f5 and grid
    slant_distance: float = 1000.0  # m, fixed in f4
    n_nodes: int = 10
    placement_radius: float = 1000.0  # m
    iterations: int = 1
    master_seed: int = 0
    interferers: tuple[tuple[float, float], ...] = ()  # (power W, path loss dB)
    extra_interferer: Optional[tuple[float, float]] = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise DomainError(f"unknown experiment {self.experiment!r}; expected {EXPERIMENTS}")
        if not self.weather_list:
            raise DomainError("weather_list is empty")
        for name in ("angles", "distances", "altitudes"):
            grid = getattr(self, name)
            if not grid or not _strictly_increasing(grid):
                raise DomainError(f"{name} grid must be non-empty and strictly increasing")
        if not all(0 <= a <= 90 for a in self.angles):
            raise DomainError("angles must lie in [0, 90] deg")
        if self.iterations < 1:
            raise DomainError(f"iterations must be >= 1, got {self.iterations!r}")
        if self.n_nodes < 0:
            raise DomainError(f"n_nodes must be >= 0, got {self.n_nodes!r}")
        if not self.placement_radius > 0:
            raise DomainError(f"placement_radius must be > 0 m, got {self.placement_radius!r}")
        if not self.slant_distance > 0:
            raise DomainError(f"slant_distance must be > 0 m, got {self.slant_distance!r}")
        if not self.altitude >= 0:
            raise DomainError(f"altitude must be >= 0 m, got {self.altitude!r}")
        if not 0 <= self.master_seed < 2 ** 64:
            raise DomainError("master_seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class SweepRow:
    iteration: int
    weather: str
    angle_deg: float
    ground_distance_m: float
    altitude_m: float
    gamma_db_km: float
    path_loss_db: float
    weather_excess_db: float
    sinr_linear: float
    spectral_eff: float
    ee_bits_per_joule: float
    coverage_radius_m: Optional[float] = None


def point_seed(master_seed: int, index: int) -> int:
    """64-bit seed for sweep point ``index``, mixed by numpy's SeedSequence."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])


def place_ground_nodes(seed: int, n: int, radius: float) -> list[tuple[float, float]]:
    """``n`` points uniform on a disc of ``radius`` m centred under the UAV."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n!r}")
    if not radius > 0:
        raise DomainError(f"radius must be > 0 m, got {radius!r}")
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    phi = rng.random(n) * 2.0 * math.pi
    rho = radius * np.sqrt(u)
    return [(float(x), float(y)) for x, y in zip(rho * np.cos(phi), rho * np.sin(phi))]


class _Evaluator:
    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg
        self.noise = noise_power(cfg.radio.noise_psd, cfg.radio.bandwidth)
        self.interferers = tuple((p, channel_gain(pl)) for p, pl in cfg.interferers)
        self.extra = None
        if cfg.extra_interferer is not None:
            p, pl = cfg.extra_interferer
            self.extra = (p, channel_gain(pl))

    def row(self, t: int, label: str, gamma: float, geom: LinkGeometry,
            angle: float, radius: Optional[float]) -> SweepRow:
        cfg = self.cfg
        pl = path_loss(geom, cfg.channel, gamma)
        links = LinkSet((cfg.radio.tx_power, channel_gain(pl)), self.interferers, self.extra)
        s = sinr(links, self.noise)
        return SweepRow(
            iteration=t,
            weather=label,
            angle_deg=angle,
            ground_distance_m=geom.ground_distance,
            altitude_m=geom.altitude,
            gamma_db_km=gamma,
            path_loss_db=pl,
            weather_excess_db=weather_excess(geom, gamma),
            sinr_linear=s,
            spectral_eff=spectral_efficiency(s),
            ee_bits_per_joule=energy_efficiency(cfg.radio, s),
            coverage_radius_m=radius,
        )


def _grid_points(cfg: ScenarioConfig, t: int):
    """Grid points of iteration ``t`` as (description, geometry-builder args)."""
    if cfg.experiment == "f4":
        return [("angle", a) for a in cfg.angles]
    if cfg.experiment == "f5":
        return [("distance", r) for r in cfg.distances]
    if cfg.experiment == "f6":
        return [("altitude", h) for h in cfg.altitudes]
    nodes = place_ground_nodes(point_seed(cfg.master_seed, t), cfg.n_nodes, cfg.placement_radius)
    return [("distance", math.hypot(x, y)) for x, y in nodes]


def _evaluate_point(ev: _Evaluator, t: int, spec: WeatherSpec, gamma: float,
                    kind: str, value: float, fixed_radius) -> SweepRow:
    cfg = ev.cfg
    if cfg.experiment == "f4":
        geom = LinkGeometry.from_elevation(value, cfg.slant_distance)
        return ev.row(t, spec.label, gamma, geom, value, None)
    if cfg.experiment == "f6":
        prob = cfg.coverage.problem(cfg.channel, gamma)
        r = coverage_radius(value, prob)
        if r is None:
            # no coverage: report the link straight below the UAV
            geom = LinkGeometry(value, 0.0 if value > 0 else prob.tolerance)
            r = 0.0
        else:
            geom = LinkGeometry(value, r)
        return ev.row(t, spec.label, gamma, geom, geom.elevation_deg, r)
    geom = LinkGeometry(cfg.altitude, value)
    return ev.row(t, spec.label, gamma, geom, geom.elevation_deg, fixed_radius)


def run_sweep(cfg: ScenarioConfig, workers: int = 1) -> list[SweepRow]:
    """Evaluate every (iteration, weather, grid point) of ``cfg`` in loop order."""
    ev = _Evaluator(cfg)
    gammas = []
    for spec in cfg.weather_list:
        try:
            gammas.append(resolve(spec, cfg.channel.freq))
        except ModelError as exc:
            raise SweepError(f"weather {spec.label!r}: {exc}") from exc

    radii = [None] * len(gammas)
    if cfg.experiment == "grid":
        for i, (spec, gamma) in enumerate(zip(cfg.weather_list, gammas)):
            try:
                r = coverage_radius(cfg.altitude, cfg.coverage.problem(cfg.channel, gamma))
            except ModelError as exc:
                raise SweepError(f"weather {spec.label!r}, coverage at "
                                 f"altitude={cfg.altitude:g} m: {exc}") from exc
            radii[i] = 0.0 if r is None else r

    tasks = []
    for t in range(1, cfg.iterations + 1):
        points = _grid_points(cfg, t)
        for i, spec in enumerate(cfg.weather_list):
            for kind, value in points:
                tasks.append((t, spec, gammas[i], kind, value, radii[i]))

    def work(task):
        t, spec, gamma, kind, value, radius = task
        try:
            return _evaluate_point(ev, t, spec, gamma, kind, value, radius)
        except ModelError as exc:
            raise SweepError(
                f"iteration {t}, weather {spec.label!r}, {kind}={value!r}: {exc}"
            ) from exc

    if workers <= 1:
        return [work(task) for task in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(work, tasks))


def configure(cfg: ScenarioConfig, experiment: Optional[str] = None,
              mode: str = "parametric", seed: Optional[int] = None) -> ScenarioConfig:
    """Apply CLI-level choices (experiment, attenuation mode, seed) to ``cfg``."""
    changes = {"weather_list": with_attenuation_mode(cfg.weather_list, mode)}
    if experiment is not None:
        changes["experiment"] = experiment
    if seed is not None:
        changes["master_seed"] = seed
    return replace(cfg, **changes)
