"""Sectioned ``key = value`` configuration for sweeps.

Every key is optional; missing keys fall back to the urban 28 GHz parameter
set (see README). Unknown sections or keys are rejected. Grids accept either
a comma-separated list or ``start:stop:step`` (stop inclusive).
"""
from __future__ import annotations

import configparser
from pathlib import Path

from .channel import ChannelParams
from .errors import ConfigError, ModelError
from .radio import RadioConfig
from .scenario import CoverageSettings, ScenarioConfig, linear_grid
from .weather import (
    PRESETS,
    FogParams,
    RainParams,
    SnowParams,
    WeatherSpec,
    rain_coefficients,
    wavelength_cm,
)

SCHEMA = {
    "channel": ("a", "b", "eta_los", "eta_nlos", "frequency", "beta"),
    "radio": ("bandwidth", "noise_psd", "tx_power", "hops", "interferers", "extra_interferer"),
    "weather.rain": ("rate", "k", "alpha"),
    "weather.fog": ("density", "temperature"),
    "weather.snow": ("rate", "wavelength"),
    "coverage": ("pl_max", "h_min", "h_max", "tolerance", "grid_step"),
    "sweep": ("experiment", "weather", "angles", "distances", "altitudes", "altitude",
              "slant_distance", "n_nodes", "placement_radius", "iterations", "seed"),
}

PARAMETRIC_NAMES = ("rain", "fog", "snow")


class _Section:
    def __init__(self, name: str, items: dict[str, str]):
        self.name = name
        self.items = items

    def _raw(self, key):
        return self.items.get(key)

    def error(self, key: str, msg: str) -> ConfigError:
        return ConfigError(f"[{self.name}] {key}: {msg}")

    def float(self, key: str, default):
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            return float(raw)
        except ValueError:
            raise self.error(key, f"expected a number, got {raw!r}") from None

    def int(self, key: str, default):
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            raise self.error(key, f"expected an integer, got {raw!r}") from None

    def str(self, key: str, default):
        raw = self._raw(key)
        return default if raw is None else raw

    def grid(self, key: str, default):
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            if ":" in raw:
                start, stop, step = (float(x) for x in raw.split(":"))
                if not step > 0:
                    raise ValueError
                return linear_grid(start, stop, step)
            return tuple(float(x) for x in raw.split(","))
        except ValueError:
            raise self.error(key, f"expected 'start:stop:step' or a comma list, got {raw!r}") from None

    def pairs(self, key: str, default):
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            return tuple(_pair(item) for item in raw.split(",") if item.strip())
        except ValueError:
            raise self.error(key, f"expected 'power_w:loss_db' items, got {raw!r}") from None


def _pair(text: str) -> tuple[float, float]:
    p, loss = text.split(":")
    return (float(p), float(loss))


def _build(section: _Section, factory, **kwargs):
    try:
        return factory(**kwargs)
    except ModelError as exc:
        raise ConfigError(f"[{section.name}] {exc}") from None


def parse_config(text: str) -> ScenarioConfig:
    """Validated ScenarioConfig from configuration text."""
    parser = configparser.ConfigParser(
        delimiters=("=",),
        comment_prefixes=("#",),
        inline_comment_prefixes=("#",),
        interpolation=None,
        default_section="\0defaults",
    )
    try:
        parser.read_string(text)
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError(f"line {exc.lineno}: key outside of a [section]") from None
    except configparser.DuplicateSectionError as exc:
        raise ConfigError(f"line {exc.lineno}: duplicate section [{exc.section}]") from None
    except configparser.DuplicateOptionError as exc:
        raise ConfigError(f"line {exc.lineno}: duplicate key {exc.option!r}") from None
    except configparser.ParsingError as exc:
        lineno, line = exc.errors[0]
        raise ConfigError(f"line {lineno}: syntax error near {line!r}") from None

    sections = {}
    for name in parser.sections():
        if name not in SCHEMA:
            raise ConfigError(f"unknown section [{name}]; expected one of {sorted(SCHEMA)}")
        items = dict(parser.items(name))
        for key in items:
            if key not in SCHEMA[name]:
                raise ConfigError(f"[{name}] unknown key {key!r}; expected one of {SCHEMA[name]}")
        sections[name] = items
    sec = {name: _Section(name, sections.get(name, {})) for name in SCHEMA}

    c = sec["channel"]
    base = ChannelParams()
    channel = _build(
        c, ChannelParams,
        a=c.float("a", base.a), b=c.float("b", base.b),
        eta_los=c.float("eta_los", base.eta_los), eta_nlos=c.float("eta_nlos", base.eta_nlos),
        freq=c.float("frequency", base.freq), beta=c.float("beta", base.beta),
    )

    r = sec["radio"]
    rbase = RadioConfig()
    radio = _build(
        r, RadioConfig,
        bandwidth=r.float("bandwidth", rbase.bandwidth),
        noise_psd=r.float("noise_psd", rbase.noise_psd),
        tx_power=r.float("tx_power", rbase.tx_power),
        hops=r.int("hops", rbase.hops),
    )
    interferers = r.pairs("interferers", ())
    extra = r.pairs("extra_interferer", None)
    if extra is not None:
        if len(extra) != 1:
            raise r.error("extra_interferer", "expected exactly one 'power_w:loss_db' item")
        extra = extra[0]
    for p, _ in interferers + ((extra,) if extra else ()):
        if not p > 0:
            raise ConfigError(f"[radio] interferer power must be > 0 W, got {p!r}")

    cv = sec["coverage"]
    cbase = CoverageSettings()
    coverage = _build(
        cv, CoverageSettings,
        pl_max=cv.float("pl_max", cbase.pl_max),
        h_min=cv.float("h_min", cbase.h_min),
        h_max=cv.float("h_max", cbase.h_max),
        tolerance=cv.float("tolerance", cbase.tolerance),
        grid_step=cv.float("grid_step", cbase.grid_step),
    )

    s = sec["sweep"]
    names = [w.strip() for w in s.str("weather", ",".join(PARAMETRIC_NAMES)).split(",")]
    weather = tuple(_weather_spec(name, sec, channel.freq) for name in names)

    sbase = ScenarioConfig()
    return _build(
        s, ScenarioConfig,
        weather_list=weather,
        channel=channel,
        radio=radio,
        coverage=coverage,
        experiment=s.str("experiment", sbase.experiment),
        angles=s.grid("angles", sbase.angles),
        distances=s.grid("distances", sbase.distances),
        altitudes=s.grid("altitudes", sbase.altitudes),
        altitude=s.float("altitude", sbase.altitude),
        slant_distance=s.float("slant_distance", sbase.slant_distance),
        n_nodes=s.int("n_nodes", sbase.n_nodes),
        placement_radius=s.float("placement_radius", sbase.placement_radius),
        iterations=s.int("iterations", sbase.iterations),
        master_seed=s.int("seed", sbase.master_seed),
        interferers=interferers,
        extra_interferer=extra,
    )


def _weather_spec(name: str, sec: dict, freq: float) -> WeatherSpec:
    if name == "rain":
        w = sec["weather.rain"]
        k = w.float("k", None)
        alpha = w.float("alpha", None)
        if k is None or alpha is None:
            try:
                dk, dalpha = rain_coefficients(freq)
            except ModelError as exc:
                raise w.error("k", str(exc)) from None
            k = dk if k is None else k
            alpha = dalpha if alpha is None else alpha
        params = _build(w, RainParams, rate=w.float("rate", 12.5), k=k, alpha=alpha)
        return WeatherSpec.rain(params)
    if name == "fog":
        w = sec["weather.fog"]
        params = _build(w, FogParams, density=w.float("density", 0.05),
                        temperature=w.float("temperature", 293.15))
        return WeatherSpec.fog(params)
    if name == "snow":
        w = sec["weather.snow"]
        lam = w.float("wavelength", None)
        params = _build(w, SnowParams, rate=w.float("rate", 5.0),
                        wavelength=wavelength_cm(freq) if lam is None else lam)
        return WeatherSpec.snow(params)
    if name == "clear":
        return WeatherSpec.clear()
    if name in PRESETS:
        return WeatherSpec.preset(name)
    valid = PARAMETRIC_NAMES + ("clear",) + tuple(PRESETS)
    raise ConfigError(f"[sweep] weather: unknown condition {name!r}; valid: {', '.join(valid)}")


def load_config(path) -> ScenarioConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read config {str(path)!r}: {exc}") from None
    return parse_config(text)


def _fmt_grid(grid) -> str:
    return ", ".join(repr(float(x)) for x in grid)


def dump_config(cfg: ScenarioConfig) -> str:
    """Serialise ``cfg`` so that ``parse_config(dump_config(cfg)) == cfg``.

    Only weather conditions expressible in the file format round-trip
    (default labels, one parameter set per parametric model).
    """
    ch, rd, cv = cfg.channel, cfg.radio, cfg.coverage
    lines = [
        "[channel]",
        f"a = {ch.a!r}", f"b = {ch.b!r}", f"eta_los = {ch.eta_los!r}",
        f"eta_nlos = {ch.eta_nlos!r}", f"frequency = {ch.freq!r}", f"beta = {ch.beta!r}",
        "",
        "[radio]",
        f"bandwidth = {rd.bandwidth!r}", f"noise_psd = {rd.noise_psd!r}",
        f"tx_power = {rd.tx_power!r}", f"hops = {rd.hops!r}",
    ]
    if cfg.interferers:
        lines.append("interferers = " + ", ".join(f"{p!r}:{l!r}" for p, l in cfg.interferers))
    if cfg.extra_interferer is not None:
        p, l = cfg.extra_interferer
        lines.append(f"extra_interferer = {p!r}:{l!r}")

    names = []
    for w in cfg.weather_list:
        if w.mode == "preset":
            names.append(w.preset_name)
        elif w.mode == "clear":
            names.append("clear")
        else:
            kind = w.mode.split("-", 1)[1]
            names.append(kind)
            lines += ["", f"[weather.{kind}]"]
            p = w.params
            if kind == "rain":
                lines += [f"rate = {p.rate!r}", f"k = {p.k!r}", f"alpha = {p.alpha!r}"]
            elif kind == "fog":
                lines += [f"density = {p.density!r}", f"temperature = {p.temperature!r}"]
            else:
                lines += [f"rate = {p.rate!r}", f"wavelength = {p.wavelength!r}"]

    lines += [
        "",
        "[coverage]",
        f"pl_max = {cv.pl_max!r}", f"h_min = {cv.h_min!r}", f"h_max = {cv.h_max!r}",
        f"tolerance = {cv.tolerance!r}", f"grid_step = {cv.grid_step!r}",
        "",
        "[sweep]",
        f"experiment = {cfg.experiment}",
        f"weather = {', '.join(names)}",
        f"angles = {_fmt_grid(cfg.angles)}",
        f"distances = {_fmt_grid(cfg.distances)}",
        f"altitudes = {_fmt_grid(cfg.altitudes)}",
        f"altitude = {cfg.altitude!r}",
        f"slant_distance = {cfg.slant_distance!r}",
        f"n_nodes = {cfg.n_nodes!r}",
        f"placement_radius = {cfg.placement_radius!r}",
        f"iterations = {cfg.iterations!r}",
        f"seed = {cfg.master_seed!r}",
    ]
    return "\n".join(lines) + "\n"
