"""Weather-aware UAV-to-ground propagation, coverage and link-budget sweeps."""
from .channel import ChannelParams, LinkGeometry, elevation_angle, los_probability, path_loss
from .coverage import CoverageProblem, CoverageSolution, coverage_radius, optimal_altitude
from .errors import (
    ConfigError,
    DomainError,
    GeometryError,
    InfeasibleError,
    ModelError,
    SolverError,
    SweepError,
    UnknownPresetError,
)
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
    Permittivity,
    RainParams,
    SnowParams,
    WeatherSpec,
    fog_attenuation,
    preset_attenuation,
    rain_attenuation,
    resolve,
    snow_attenuation,
    water_permittivity,
)

__version__ = "0.1.0"
