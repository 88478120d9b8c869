import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from uavlink.channel import ChannelParams, LinkGeometry, path_loss
from uavlink.coverage import (
    CoverageProblem,
    altitude_grid,
    coverage_radius,
    optimal_altitude,
    scan_coverage_radius,
)
from uavlink.errors import DomainError, InfeasibleError

URBAN = ChannelParams()
PL_120_120 = 107.671696047140914053  # mpmath, see test_channel
PL_NADIR_120 = 104.026649018985801812  # mpmath, h=120, r=0.1


def problem(pl_max, gamma=0.0, channel=URBAN, h_range=(0.0, 2000.0), tol=1e-3):
    return CoverageProblem(channel, gamma, pl_max, h_range, tol)


def random_problems(n, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        ch = ChannelParams(freq=rng.choice([28.0, 60.0]), beta=rng.choice([0.0, 0.43]))
        h = rng.uniform(5.0, 500.0)
        gamma = rng.choice([0.0, rng.uniform(0.0, 130.0)])
        nadir = path_loss(LinkGeometry(h, 0.0), ch, gamma)
        out.append((h, problem(nadir + rng.uniform(0.1, 25.0), gamma, ch)))
    return out


def test_inverse_of_worked_example():
    r = coverage_radius(120.0, problem(PL_120_120))
    assert r == pytest.approx(120.0, abs=2e-3)


def test_infeasible_budget():
    assert PL_NADIR_120 > 100.0
    assert coverage_radius(120.0, problem(100.0)) is None


def test_altitude_outside_range():
    with pytest.raises(DomainError):
        coverage_radius(50.0, problem(110.0, h_range=(100.0, 200.0)))


def test_problem_validation():
    with pytest.raises(DomainError):
        problem(0.0)
    with pytest.raises(DomainError):
        problem(110.0, h_range=(200.0, 100.0))
    with pytest.raises(DomainError):
        problem(110.0, tol=0.0)


def test_edge_conditions_on_random_problems():
    for h, prob in random_problems(100, seed=1):
        r = coverage_radius(h, prob)
        assert r is not None and r >= 0
        assert prob.loss(h, r) <= prob.pl_max
        assert prob.loss(h, r + 2 * prob.tolerance) > prob.pl_max


def _scan_oracle(h, prob, step=0.1):
    # exhaustive grid scan, no monotonicity assumed within the scanned span
    best = None
    i = 0
    while True:
        r = i * step
        if r == 0 and h == 0:
            r = prob.tolerance
        pl = path_loss(LinkGeometry(h, r), prob.channel, prob.gamma)
        if pl <= prob.pl_max:
            best = r
        elif best is not None and pl > prob.pl_max + 40.0:
            return best
        i += 1


def test_bisection_matches_scan_oracle():
    for h, prob in random_problems(20, seed=2):
        r = coverage_radius(h, prob)
        assert abs(r - _scan_oracle(h, prob)) <= 0.1 + prob.tolerance


def test_scan_fallback_matches_bisection():
    h, prob = 120.0, problem(110.0)
    r_scan = scan_coverage_radius(h, prob, step=0.05, r_max=1000.0)
    assert abs(coverage_radius(h, prob) - r_scan) <= 0.05 + prob.tolerance


@settings(max_examples=60, deadline=None)
@given(st.floats(5.0, 500.0), st.floats(0.0, 130.0), st.floats(0.0, 30.0), st.floats(0.0, 30.0))
def test_budget_monotonicity(h, gamma, extra1, extra2):
    nadir = path_loss(LinkGeometry(h, 0.0), URBAN, gamma)
    lo, hi = sorted((nadir + extra1, nadir + extra2))
    r_lo = coverage_radius(h, problem(lo, gamma))
    r_hi = coverage_radius(h, problem(hi, gamma))
    if r_lo is not None:
        assert r_hi is not None and r_hi >= r_lo


@settings(max_examples=60, deadline=None)
@given(st.floats(5.0, 500.0), st.floats(0.0, 130.0), st.floats(0.0, 130.0), st.floats(100.0, 140.0))
def test_weather_monotonicity(h, g1, g2, pl_max):
    g_lo, g_hi = sorted((g1, g2))
    r_clear = coverage_radius(h, problem(pl_max, g_lo))
    r_wet = coverage_radius(h, problem(pl_max, g_hi))
    if r_wet is not None:
        assert r_clear is not None and r_clear >= r_wet


def test_altitude_grid():
    assert altitude_grid(120.0, 120.0, 1.0) == [120.0]
    assert altitude_grid(0.0, 3.0, 1.0) == [0.0, 1.0, 2.0, 3.0]
    assert altitude_grid(0.0, 2.5, 1.0) == [0.0, 1.0, 2.0, 2.5]


def test_singleton_altitude_range():
    prob = problem(110.0, h_range=(120.0, 120.0))
    sol = optimal_altitude(prob)
    assert sol.altitude == 120.0
    assert sol.radius == coverage_radius(120.0, prob)


def test_optimal_altitude_infeasible():
    with pytest.raises(InfeasibleError):
        optimal_altitude(problem(60.0, h_range=(50.0, 100.0)), grid_step=5.0)


def test_grid_step_validation():
    with pytest.raises(DomainError):
        optimal_altitude(problem(110.0, h_range=(0.0, 10.0)), grid_step=20.0)


def _best_angle_oracle(pl_max, ch):
    # with gamma = beta = 0: PL = A*P(theta) + 20log10(d) + B, so on each ray
    # the edge slant distance is closed-form and r = d*cos(theta)
    best = (-1.0, None)
    for i in range(90_001):
        t = i * 0.001
        p = 1.0 / (1.0 + ch.a * math.exp(-ch.b * (t - ch.a)))
        d = 10 ** ((pl_max - ch.intercept - ch.los_excess_swing * p) / 20)
        best = max(best, (d * math.cos(math.radians(t)), t))
    return best[1]


def test_angle_invariance_against_oracle():
    ch = ChannelParams(beta=0.0)
    expected = _best_angle_oracle(110.0, ch)
    assert expected == pytest.approx(42.439, abs=1e-3)  # frozen, same oracle
    angles = []
    for pl_max in (100.0, 110.0, 120.0):
        sol = optimal_altitude(CoverageProblem(ch, 0.0, pl_max, (1.0, 1000.0)), grid_step=1.0)
        angles.append(sol.elevation_deg)
        assert sol.path_loss_at_edge <= pl_max
    for a in angles:
        assert a == pytest.approx(expected, abs=0.5)
    assert max(angles) - min(angles) <= 0.5


def test_fog_shrinks_coverage():
    clear = optimal_altitude(problem(110.0, 0.0, h_range=(1.0, 600.0)), grid_step=5.0)
    fog = optimal_altitude(problem(110.0, 125.0, h_range=(1.0, 600.0)), grid_step=5.0)
    assert fog.radius < clear.radius


def test_ties_prefer_lowest_altitude(monkeypatch):
    import uavlink.coverage as cov

    monkeypatch.setattr(cov, "coverage_radius", lambda h, prob: 50.0)
    sol = optimal_altitude(problem(110.0, h_range=(100.0, 140.0)), grid_step=10.0)
    assert sol.altitude == 100.0
    assert sol.radius == 50.0
