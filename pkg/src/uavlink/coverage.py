"""Largest coverage radius under a path-loss budget, and the best altitude.

The radius at altitude ``h`` is the largest ground distance ``r`` with
``path_loss(h, r) <= pl_max``. Path loss grows with ``r`` at fixed ``h``
whenever ``eta_nlos >= eta_los``, so bisection on a bracket is enough.
``scan_coverage_radius`` is the fallback for callers whose channel breaks
that ordering (``coverage_radius`` raises SolverError there).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .channel import ChannelParams, LinkGeometry, path_loss
from .errors import DomainError, InfeasibleError, SolverError

DEFAULT_TOLERANCE = 1e-3  # m
DEFAULT_GRID_STEP = 1.0  # m
MAX_RADIUS = 100e3  # m, upper end of the radius bracket

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CoverageProblem:
    channel: ChannelParams
    gamma: float  # dB/km
    pl_max: float  # dB
    altitude_range: tuple[float, float]  # m
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        h_min, h_max = self.altitude_range
        if not self.pl_max > 0:
            raise DomainError(f"pl_max must be > 0 dB, got {self.pl_max!r}")
        if not 0 <= h_min <= h_max:
            raise DomainError(f"need 0 <= h_min <= h_max, got {self.altitude_range!r}")
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be > 0 m, got {self.tolerance!r}")
        if not self.gamma >= 0:
            raise DomainError(f"gamma must be >= 0 dB/km, got {self.gamma!r}")

    def loss(self, h: float, r: float) -> float:
        return path_loss(LinkGeometry(h, r), self.channel, self.gamma)


@dataclass(frozen=True)
class CoverageSolution:
    altitude: float
    radius: float
    path_loss_at_edge: float

    @property
    def elevation_deg(self) -> float:
        """Elevation angle of the cell edge seen from the ground."""
        return math.degrees(math.atan2(self.altitude, self.radius))


def _inner_radius(h: float, prob: CoverageProblem) -> float:
    # r -> 0+ is singular only at ground level
    return 0.0 if h > 0 else prob.tolerance


def scan_coverage_radius(h: float, prob: CoverageProblem, step: float = 0.1,
                         r_max: float = MAX_RADIUS) -> Optional[float]:
    """Largest ``r`` on a uniform ``step`` grid with ``loss <= pl_max``.

    Makes no monotonicity assumption; cost is ``r_max / step`` evaluations.
    """
    r0 = _inner_radius(h, prob)
    best = None
    n = int(math.floor((r_max - r0) / step))
    for i in range(n + 1):
        r = r0 + i * step
        if prob.loss(h, r) <= prob.pl_max:
            best = r
    return best


def coverage_radius(h: float, prob: CoverageProblem) -> Optional[float]:
    """Largest ground distance served at altitude ``h``; ``None`` if infeasible.

    Bracket by doubling from the tolerance up to ``MAX_RADIUS``, then bisect
    keeping ``loss(lo) <= pl_max < loss(hi)`` until ``hi - lo <= tolerance``.
    Raises SolverError when the sampled losses are not increasing.
    """
    h_min, h_max = prob.altitude_range
    if not h_min <= h <= h_max:
        raise DomainError(f"altitude {h!r} outside range {prob.altitude_range!r}")

    lo = _inner_radius(h, prob)
    pl_lo = prob.loss(h, lo)
    if pl_lo > prob.pl_max:
        return None

    hi = max(prob.tolerance, lo)
    pl_prev = pl_lo
    while True:
        pl_hi = prob.loss(h, hi)
        if pl_hi < pl_prev:
            raise SolverError(
                f"path loss decreases between r={lo:g} m and r={hi:g} m at h={h:g} m"
            )
        if pl_hi > prob.pl_max:
            break
        lo, pl_prev = hi, pl_hi
        if hi >= MAX_RADIUS:
            raise SolverError(
                f"budget {prob.pl_max:g} dB still met at the {MAX_RADIUS:g} m bracket limit"
            )
        hi = min(2.0 * hi, MAX_RADIUS)

    while hi - lo > prob.tolerance:
        mid = 0.5 * (lo + hi)
        if prob.loss(h, mid) <= prob.pl_max:
            lo = mid
        else:
            hi = mid
    return lo


def _radius_or_minus_one(h: float, prob: CoverageProblem) -> float:
    r = coverage_radius(h, prob)
    return -1.0 if r is None else r


def _golden_max(f, a: float, b: float, tol: float) -> float:
    """Argmax of a unimodal ``f`` on ``[a, b]`` to within ``tol``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return c if fc >= fd else d


def altitude_grid(h_min: float, h_max: float, step: float) -> list[float]:
    """``h_min, h_min + step, ...`` up to and including ``h_max``."""
    if h_max == h_min:
        return [h_min]
    n = int(math.floor((h_max - h_min) / step + 1e-9))
    grid = [h_min + i * step for i in range(n + 1)]
    if h_max - grid[-1] > 1e-9 * max(1.0, h_max):
        grid.append(h_max)
    return grid


def optimal_altitude(prob: CoverageProblem,
                     grid_step: float = DEFAULT_GRID_STEP) -> CoverageSolution:
    """Altitude maximising the coverage radius.

    Grid search (ties go to the lowest altitude) followed by golden-section
    refinement between the neighbours of the grid argmax.
    """
    h_min, h_max = prob.altitude_range
    if h_max > h_min and not 0 < grid_step < h_max - h_min:
        raise DomainError(
            f"grid_step must be in (0, {h_max - h_min:g}) m, got {grid_step!r}"
        )
    grid = altitude_grid(h_min, h_max, grid_step)
    radii = [_radius_or_minus_one(h, prob) for h in grid]
    k = max(range(len(grid)), key=lambda i: (radii[i], -grid[i]))
    if radii[k] < 0:
        raise InfeasibleError(
            f"no altitude in [{h_min:g}, {h_max:g}] m meets the {prob.pl_max:g} dB budget"
        )

    best_h, best_r = grid[k], radii[k]
    if len(grid) > 1:
        a = grid[max(k - 1, 0)]
        b = grid[min(k + 1, len(grid) - 1)]
        h_ref = _golden_max(lambda h: _radius_or_minus_one(h, prob), a, b, prob.tolerance)
        r_ref = _radius_or_minus_one(h_ref, prob)
        if r_ref > best_r:
            best_h, best_r = h_ref, r_ref
    return CoverageSolution(best_h, best_r, prob.loss(best_h, best_r))
