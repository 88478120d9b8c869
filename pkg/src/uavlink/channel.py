"""Air-to-ground geometry, LoS probability and composite path loss."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, GeometryError
from .weather import SPEED_OF_LIGHT, ghz_to_hz

# 20*log10(4*pi/c), the frequency/distance independent part of FSPL.
_FSPL_CONST = 20.0 * math.log10(4.0 * math.pi / SPEED_OF_LIGHT)


@dataclass(frozen=True)
class ChannelParams:
    """Urban A2G environment. Defaults are the 28 GHz urban parameter set."""

    a: float = 9.61
    b: float = 0.16
    eta_los: float = 1.0  # dB
    eta_nlos: float = 20.0  # dB
    freq: float = 28.0  # GHz
    beta: float = 0.43  # dB/km, atmospheric (clear-air) attenuation

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"a must be > 0, got {self.a!r}")
        if not self.b > 0:
            raise DomainError(f"b must be > 0, got {self.b!r}")
        if not self.eta_nlos >= self.eta_los:
            raise DomainError(
                f"eta_nlos ({self.eta_nlos!r}) must be >= eta_los ({self.eta_los!r})"
            )
        if not self.freq > 0:
            raise DomainError(f"freq must be > 0 GHz, got {self.freq!r}")
        if not self.beta >= 0:
            raise DomainError(f"beta must be >= 0 dB/km, got {self.beta!r}")

    @property
    def los_excess_swing(self) -> float:
        """Weight of the LoS probability in the path loss, ``eta_los - eta_nlos``."""
        return self.eta_los - self.eta_nlos

    @property
    def intercept(self) -> float:
        """``20*log10(4*pi*f/c) + eta_nlos`` with f in Hz."""
        return _FSPL_CONST + 20.0 * math.log10(ghz_to_hz(self.freq)) + self.eta_nlos


def elevation_angle(h: float, r: float) -> float:
    """Elevation of the UAV seen from the ground node, degrees in [0, 90]."""
    if h < 0 or r < 0:
        raise GeometryError(f"altitude and ground distance must be >= 0, got h={h!r}, r={r!r}")
    if h == 0 and r == 0:
        raise GeometryError("UAV and ground node coincide (h = r = 0)")
    return math.degrees(math.atan2(h, r))


@dataclass(frozen=True)
class LinkGeometry:
    altitude: float  # m
    ground_distance: float  # m

    def __post_init__(self):
        # validates sign and the both-zero case
        elevation_angle(self.altitude, self.ground_distance)

    @classmethod
    def from_elevation(cls, elevation_deg: float, slant_distance: float) -> "LinkGeometry":
        """Geometry with a given elevation angle and slant distance."""
        if not 0 <= elevation_deg <= 90:
            raise DomainError(f"elevation must lie in [0, 90] deg, got {elevation_deg!r}")
        if not slant_distance > 0:
            raise GeometryError(f"slant distance must be > 0 m, got {slant_distance!r}")
        # exact endpoints; cos(pi/2) is not exactly zero in floating point
        if elevation_deg == 90:
            return cls(slant_distance, 0.0)
        if elevation_deg == 0:
            return cls(0.0, slant_distance)
        rad = math.radians(elevation_deg)
        return cls(slant_distance * math.sin(rad), slant_distance * math.cos(rad))

    @property
    def slant_distance(self) -> float:
        return math.hypot(self.altitude, self.ground_distance)

    @property
    def elevation_deg(self) -> float:
        return elevation_angle(self.altitude, self.ground_distance)


def los_probability(theta: float, a: float, b: float) -> float:
    """Sigmoid LoS probability at elevation ``theta`` degrees.

    Only ``b < 0`` is rejected so that ``b = 0`` (angle-independent) stays
    usable for analysis.
    """
    if not 0 <= theta <= 90:
        raise DomainError(f"elevation must lie in [0, 90] deg, got {theta!r}")
    if not a > 0 or b < 0:
        raise DomainError(f"need a > 0 and b >= 0, got a={a!r}, b={b!r}")
    return 1.0 / (1.0 + a * math.exp(-b * (theta - a)))


def weather_excess(geom: LinkGeometry, gamma: float) -> float:
    """Excess loss in dB from ``gamma`` dB/km over the slant path."""
    return gamma * geom.slant_distance / 1000.0


def path_loss(geom: LinkGeometry, ch: ChannelParams, gamma: float = 0.0) -> float:
    """Mean A2G path loss in dB including atmospheric and weather terms.

    The LoS/NLoS mixture is ``A*P_LoS + 20*log10(d) + B`` which equals FSPL
    plus ``eta_los`` at P_LoS = 1 and FSPL plus ``eta_nlos`` at P_LoS = 0.
    """
    if not gamma >= 0:
        raise DomainError(f"specific attenuation must be >= 0 dB/km, got {gamma!r}")
    d = geom.slant_distance
    if d == 0:
        raise GeometryError("zero slant distance")
    p_los = los_probability(geom.elevation_deg, ch.a, ch.b)
    return (
        ch.los_excess_swing * p_los
        + 20.0 * math.log10(d)
        + ch.intercept
        + (ch.beta + gamma) * d / 1000.0
    )
