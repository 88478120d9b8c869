"""SINR, spectral efficiency and energy efficiency of the UAV downlink."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError

Link = tuple[float, float]  # (transmit power in W, linear channel gain)


@dataclass(frozen=True)
class RadioConfig:
    bandwidth: float = 5e6  # Hz
    noise_psd: float = -174.0  # dBm/Hz
    tx_power: float = 5.0  # W
    hops: int = 1

    def __post_init__(self):
        if not self.bandwidth > 0:
            raise DomainError(f"bandwidth must be > 0 Hz, got {self.bandwidth!r}")
        if not self.tx_power > 0:
            raise DomainError(f"tx_power must be > 0 W, got {self.tx_power!r}")
        if isinstance(self.hops, bool) or not isinstance(self.hops, int) or self.hops < 1:
            raise DomainError(f"hops must be an integer >= 1, got {self.hops!r}")
        if not math.isfinite(self.noise_psd):
            raise DomainError(f"noise_psd must be finite, got {self.noise_psd!r}")


def _check_link(link: Link, what: str) -> None:
    p, g = link
    if not p > 0:
        raise DomainError(f"{what} power must be > 0 W, got {p!r}")
    if not g >= 0:
        raise DomainError(f"{what} gain must be >= 0, got {g!r}")


@dataclass(frozen=True)
class LinkSet:
    """Serving link plus co-channel interferers.

    ``extra_interferer`` is one additional distinguished interferer (for
    instance a neighbouring UAV) kept apart from the ``interferers`` sum.
    """

    serving: Link
    interferers: tuple[Link, ...] = field(default_factory=tuple)
    extra_interferer: Optional[Link] = None

    def __post_init__(self):
        object.__setattr__(self, "interferers", tuple(tuple(i) for i in self.interferers))
        _check_link(self.serving, "serving")
        for i, link in enumerate(self.interferers):
            _check_link(link, f"interferer {i}")
        if self.extra_interferer is not None:
            _check_link(self.extra_interferer, "extra interferer")


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def channel_gain(pl_db: float) -> float:
    """Linear power gain of a link with ``pl_db`` dB path loss."""
    return 10.0 ** (-pl_db / 10.0)


def noise_power(psd: float, bandwidth: float) -> float:
    """Thermal noise power in W over ``bandwidth`` Hz at ``psd`` dBm/Hz."""
    if not bandwidth > 0:
        raise DomainError(f"bandwidth must be > 0 Hz, got {bandwidth!r}")
    return dbm_to_watts(psd + 10.0 * math.log10(bandwidth))


def sinr(links: LinkSet, noise_w: float) -> float:
    if not noise_w > 0:
        raise DomainError(f"noise power must be > 0 W, got {noise_w!r}")
    p, g = links.serving
    interference = sum(pm * gm for pm, gm in links.interferers)
    if links.extra_interferer is not None:
        pj, gj = links.extra_interferer
        interference += pj * gj
    return p * g / (interference + noise_w)


def spectral_efficiency(sinr: float) -> float:
    """Shannon spectral efficiency in bit/s/Hz."""
    if not sinr >= 0:
        raise DomainError(f"SINR must be >= 0, got {sinr!r}")
    return math.log2(1.0 + sinr)


def energy_efficiency(cfg: RadioConfig, sinr: float) -> float:
    """Delivered bits per joule: ``B*log2(1+SINR) / (P_tx * hops)``."""
    return cfg.bandwidth * spectral_efficiency(sinr) / (cfg.tx_power * cfg.hops)
