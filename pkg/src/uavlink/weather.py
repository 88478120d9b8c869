"""Specific attenuation (dB/km) of rain, fog and snow.

Units are fixed at this boundary: frequency in GHz, wavelength in cm,
rain/snow rates in mm/h, liquid-water density in g/m^3, output in dB/km.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import DomainError, UnknownPresetError

SPEED_OF_LIGHT = 299_792_458.0  # m/s

DEFAULT_FOG_TEMPERATURE = 293.15  # K

# Power-law rain coefficients (k, alpha) per carrier frequency in GHz.
# Horizontal-polarisation values of ITU-R P.838-3; other frequencies need
# explicit k and alpha.
RAIN_COEFFICIENTS = {
    28.0: (0.2051, 0.9679),
    60.0: (0.8606, 0.7656),
}

# Fixed weather attenuation coefficients in dB/km, keyed by condition label.
PRESETS = {
    "clear air": 0.43,
    "haze": 4.2,
    "moderate rain": 5.8,
    "heavy rain": 9.2,
    "light fog": 20.0,
    "moderate fog": 42.2,
    "heavy fog": 125.0,
}


def wavelength_cm(freq_ghz: float) -> float:
    """Free-space wavelength in cm for a frequency in GHz."""
    if not freq_ghz > 0:
        raise DomainError(f"frequency must be positive, got {freq_ghz!r} GHz")
    return SPEED_OF_LIGHT / (freq_ghz * 1e9) * 100.0


def ghz_to_hz(freq_ghz: float) -> float:
    return freq_ghz * 1e9


def rain_coefficients(freq_ghz: float) -> tuple[float, float]:
    """Default ``(k, alpha)`` for a tabulated carrier frequency."""
    try:
        return RAIN_COEFFICIENTS[float(freq_ghz)]
    except KeyError:
        known = ", ".join(f"{f:g}" for f in sorted(RAIN_COEFFICIENTS))
        raise DomainError(
            f"no default rain coefficients at {freq_ghz:g} GHz "
            f"(tabulated: {known} GHz); give k and alpha explicitly"
        ) from None


@dataclass(frozen=True)
class RainParams:
    rate: float
    k: float = RAIN_COEFFICIENTS[28.0][0]
    alpha: float = RAIN_COEFFICIENTS[28.0][1]

    def __post_init__(self):
        if not self.rate >= 0:
            raise DomainError(f"rain rate must be >= 0 mm/h, got {self.rate!r}")
        if not self.k > 0:
            raise DomainError(f"rain coefficient k must be > 0, got {self.k!r}")
        if not self.alpha > 0:
            raise DomainError(f"rain exponent alpha must be > 0, got {self.alpha!r}")


@dataclass(frozen=True)
class FogParams:
    density: float
    temperature: float = DEFAULT_FOG_TEMPERATURE

    def __post_init__(self):
        if not self.density >= 0:
            raise DomainError(f"fog density must be >= 0 g/m^3, got {self.density!r}")
        if not self.temperature > 0:
            raise DomainError(f"temperature must be > 0 K, got {self.temperature!r}")


@dataclass(frozen=True)
class SnowParams:
    rate: float
    wavelength: float

    def __post_init__(self):
        if not self.rate >= 0:
            raise DomainError(f"snowfall rate must be >= 0 mm/h, got {self.rate!r}")
        if not self.wavelength > 0:
            raise DomainError(f"wavelength must be > 0 cm, got {self.wavelength!r}")


@dataclass(frozen=True)
class Permittivity:
    """Complex permittivity of liquid water, ``eps' - j eps''``."""

    real_part: float
    imag_part: float
    eta: float
    eps0: float
    fp: float
    fs: float


def rain_attenuation(p: RainParams) -> float:
    """Power-law rain attenuation ``k * R**alpha``."""
    if p.rate == 0:
        return 0.0
    return p.k * p.rate ** p.alpha


def water_permittivity(freq: float, temp: float) -> Permittivity:
    """Double-Debye permittivity of water at ``freq`` GHz and ``temp`` K.

    Relaxation frequencies ``fp`` and ``fs`` depend on temperature only.
    """
    if not freq > 0:
        raise DomainError(f"frequency must be positive, got {freq!r} GHz")
    if not temp > 0:
        raise DomainError(f"temperature must be positive, got {temp!r} K")

    theta1 = 300.0 / temp - 1.0
    eps0 = 77.66 + 103.3 * theta1
    eps1 = 0.0671 * eps0
    eps2 = 3.52
    fp = 20.20 - 146.0 * theta1 + 316.0 * theta1 ** 2
    fs = 39.8 * fp

    dp = 1.0 + (freq / fp) ** 2
    ds = 1.0 + (freq / fs) ** 2
    imag = freq * (eps0 - eps1) / (fp * dp) + freq * (eps1 - eps2) / (fs * ds)
    real = (eps0 - eps1) / dp + (eps1 - eps2) / ds + eps2
    return Permittivity(
        real_part=real,
        imag_part=imag,
        eta=(2.0 + real) / imag,
        eps0=eps0,
        fp=fp,
        fs=fs,
    )


def fog_coefficient(freq: float, temp: float) -> float:
    """Fog attenuation per unit liquid-water density, (dB/km)/(g/m^3)."""
    eps = water_permittivity(freq, temp)
    return 0.819 * freq / (eps.imag_part * (1.0 + eps.eta ** 2))


def fog_attenuation(p: FogParams, freq: float) -> float:
    return fog_coefficient(freq, p.temperature) * p.density


def snow_attenuation(p: SnowParams) -> float:
    rs, lam = p.rate, p.wavelength
    return 0.00349 * rs ** 1.6 / lam ** 4 + 0.00224 * rs / lam


def preset_attenuation(name: str) -> float:
    try:
        return PRESETS[name]
    except KeyError:
        valid = ", ".join(repr(k) for k in PRESETS)
        raise UnknownPresetError(f"unknown weather preset {name!r}; valid labels: {valid}") from None


WeatherParams = Union[RainParams, FogParams, SnowParams]

_MODE_PARAMS = {
    "parametric-rain": RainParams,
    "parametric-fog": FogParams,
    "parametric-snow": SnowParams,
}
MODES = ("parametric-rain", "parametric-fog", "parametric-snow", "preset", "clear")


@dataclass(frozen=True)
class WeatherSpec:
    """One weather condition: a parametric model, a preset label, or clear sky.

    ``label`` names the condition in sweep output; it defaults to a short name
    derived from the mode.
    """

    mode: str
    params: Optional[WeatherParams] = None
    preset_name: Optional[str] = None
    label: str = ""

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"unknown weather mode {self.mode!r}; expected one of {MODES}")
        if self.mode in _MODE_PARAMS:
            if not isinstance(self.params, _MODE_PARAMS[self.mode]):
                raise DomainError(
                    f"mode {self.mode!r} needs {_MODE_PARAMS[self.mode].__name__}, "
                    f"got {type(self.params).__name__}"
                )
            if self.preset_name is not None:
                raise DomainError("preset_name is only allowed in preset mode")
        else:
            if self.params is not None:
                raise DomainError(f"mode {self.mode!r} takes no model parameters")
            if self.mode == "preset":
                preset_attenuation(self.preset_name)
            elif self.preset_name is not None:
                raise DomainError("preset_name is only allowed in preset mode")
        if not self.label:
            if self.mode == "preset":
                default = self.preset_name
            else:
                default = self.mode.rsplit("-", 1)[-1]
            object.__setattr__(self, "label", default)

    @classmethod
    def rain(cls, params: RainParams, label: str = "") -> "WeatherSpec":
        return cls("parametric-rain", params, label=label)

    @classmethod
    def fog(cls, params: FogParams, label: str = "") -> "WeatherSpec":
        return cls("parametric-fog", params, label=label)

    @classmethod
    def snow(cls, params: SnowParams, label: str = "") -> "WeatherSpec":
        return cls("parametric-snow", params, label=label)

    @classmethod
    def preset(cls, name: str, label: str = "") -> "WeatherSpec":
        return cls("preset", preset_name=name, label=label)

    @classmethod
    def clear(cls, label: str = "") -> "WeatherSpec":
        return cls("clear", label=label)


def resolve(spec: WeatherSpec, freq: float) -> float:
    """Specific attenuation in dB/km of ``spec`` at ``freq`` GHz.

    ``clear`` contributes nothing here; the clear-air term is carried by the
    channel's atmospheric attenuation instead.
    """
    if spec.mode == "clear":
        return 0.0
    if spec.mode == "preset":
        return preset_attenuation(spec.preset_name)
    if spec.mode == "parametric-rain":
        return rain_attenuation(spec.params)
    if spec.mode == "parametric-fog":
        return fog_attenuation(spec.params, freq)
    return snow_attenuation(spec.params)
