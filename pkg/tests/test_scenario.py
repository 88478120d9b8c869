import math
from dataclasses import replace

import pytest

from uavlink.errors import DomainError, SweepError
from uavlink.scenario import (
    CoverageSettings,
    ScenarioConfig,
    SweepRow,
    configure,
    default_weather,
    experiment_preset,
    place_ground_nodes,
    point_seed,
    run_sweep,
    with_attenuation_mode,
)
from uavlink.weather import RainParams, WeatherSpec


def test_place_ground_nodes():
    assert place_ground_nodes(1, 0, 10.0) == []
    pts = place_ground_nodes(7, 500, 25.0)
    assert len(pts) == 500
    assert all(x * x + y * y <= 25.0 ** 2 for x, y in pts)
    assert place_ground_nodes(7, 5, 25.0) == place_ground_nodes(7, 5, 25.0)
    assert place_ground_nodes(7, 1, 1.0) != place_ground_nodes(8, 1, 1.0)


def test_disc_sampling_is_area_uniform():
    # fraction inside half the radius should be ~1/4, not 1/2
    pts = place_ground_nodes(3, 20_000, 1.0)
    inner = sum(1 for x, y in pts if math.hypot(x, y) <= 0.5) / len(pts)
    assert inner == pytest.approx(0.25, abs=0.015)


def test_point_seed_mixing():
    assert point_seed(0, 1) == point_seed(0, 1)
    seeds = {point_seed(42, i) for i in range(100)}
    assert len(seeds) == 100
    assert point_seed(1, 1) != point_seed(2, 1)


def test_presets():
    f4, f5, f6 = (experiment_preset(k) for k in ("f4", "f5", "f6"))
    assert len(f4["angles"]) == 91 and f4["angles"][0] == 0.0 and f4["angles"][-1] == 90.0
    assert f4["slant_distance"] == 1000.0
    assert f5["altitude"] == 120.0
    assert f5["distances"] == tuple(float(d) for d in range(100, 1001, 100))
    assert isinstance(f6["coverage"], CoverageSettings)
    assert f6["altitudes"][0] == f6["coverage"].h_min
    assert f6["altitudes"][-1] == f6["coverage"].h_max
    with pytest.raises(DomainError):
        experiment_preset("f9")


def test_row_counts():
    cfg = ScenarioConfig(experiment="f5", distances=tuple(float(d) for d in range(100, 1001, 100)))
    assert len(run_sweep(cfg)) == 3 * 10
    cfg = replace(cfg, iterations=3)
    assert len(run_sweep(cfg)) == 3 * 3 * 10
    cfg = ScenarioConfig(experiment="grid", n_nodes=7, iterations=2)
    assert len(run_sweep(cfg)) == 2 * 3 * 7
    assert run_sweep(replace(cfg, n_nodes=0)) == []


def test_loop_order():
    cfg = ScenarioConfig(experiment="f5", iterations=2, distances=(100.0, 200.0))
    keys = [(r.iteration, r.weather, r.ground_distance_m) for r in run_sweep(cfg)]
    expected = [(t, w, d) for t in (1, 2) for w in ("rain", "fog", "snow") for d in (100.0, 200.0)]
    assert keys == expected


def test_f4_rows_hold_slant_distance():
    cfg = ScenarioConfig(**experiment_preset("f4"))
    rows = run_sweep(cfg)
    assert len(rows) == 273
    for r in rows:
        assert math.hypot(r.altitude_m, r.ground_distance_m) == pytest.approx(1000.0, rel=1e-12)
        assert r.coverage_radius_m is None
        assert r.weather_excess_db == pytest.approx(r.gamma_db_km, rel=1e-12)


def test_f5_ee_strictly_decreasing():
    rows = run_sweep(ScenarioConfig(**experiment_preset("f5")))
    for w in ("rain", "fog", "snow"):
        ee = [r.ee_bits_per_joule for r in rows if r.weather == w]
        assert len(ee) == 10
        assert all(b < a for a, b in zip(ee, ee[1:]))


def test_f4_preset_fog_above_rain():
    cfg = configure(ScenarioConfig(**experiment_preset("f4")), mode="preset")
    rows = run_sweep(cfg)
    rain = [r.path_loss_db for r in rows if r.weather == "moderate rain"]
    fog = [r.path_loss_db for r in rows if r.weather == "moderate fog"]
    assert len(rain) == len(fog) == 91
    assert all(f > r for f, r in zip(fog, rain))


def test_f6_rows_are_cell_edges():
    cfg = ScenarioConfig(experiment="f6", altitudes=(20.0, 100.0, 400.0))
    rows = run_sweep(cfg)
    assert len(rows) == 9
    for r in rows:
        assert r.coverage_radius_m is not None
        if r.coverage_radius_m > 0:
            assert r.ground_distance_m == r.coverage_radius_m
            assert r.path_loss_db <= cfg.coverage.pl_max
        else:
            assert r.path_loss_db > cfg.coverage.pl_max


def test_grid_rows_carry_coverage_and_seed_dependence():
    cfg = ScenarioConfig(experiment="grid", n_nodes=5, master_seed=11)
    rows = run_sweep(cfg)
    assert all(r.coverage_radius_m is not None and r.altitude_m == 120.0 for r in rows)
    assert all(r.ground_distance_m <= cfg.placement_radius for r in rows)
    other = run_sweep(replace(cfg, master_seed=12))
    assert [r.ground_distance_m for r in rows] != [r.ground_distance_m for r in other]


def test_parallel_matches_serial():
    cfg = ScenarioConfig(experiment="grid", n_nodes=25, iterations=3, master_seed=2**63 + 5)
    assert run_sweep(cfg, workers=1) == run_sweep(cfg, workers=4) == run_sweep(cfg, workers=4)


def test_all_fields_finite():
    for kind in ("f4", "f5", "f6"):
        for r in run_sweep(configure(ScenarioConfig(**experiment_preset(kind)), mode="both")):
            for v in (r.angle_deg, r.ground_distance_m, r.altitude_m, r.gamma_db_km, r.path_loss_db,
                      r.weather_excess_db, r.sinr_linear, r.spectral_eff, r.ee_bits_per_joule):
                assert math.isfinite(v)


def test_attenuation_modes():
    base = default_weather()
    assert with_attenuation_mode(base, "parametric") == base
    preset = with_attenuation_mode(base, "preset")
    assert [w.label for w in preset] == ["moderate rain", "moderate fog", "snow"]
    both = with_attenuation_mode(base, "both")
    assert [w.label for w in both] == ["rain", "fog", "snow", "moderate rain", "moderate fog"]
    with pytest.raises(DomainError):
        with_attenuation_mode(base, "optical")


def test_interferers_lower_sinr():
    cfg = ScenarioConfig(experiment="f5", distances=(300.0,))
    quiet = run_sweep(cfg)
    noisy = run_sweep(replace(cfg, interferers=((1.0, 120.0),), extra_interferer=(2.0, 125.0)))
    for a, b in zip(quiet, noisy):
        assert b.sinr_linear < a.sinr_linear
        assert b.path_loss_db == a.path_loss_db


def test_config_validation():
    with pytest.raises(DomainError):
        ScenarioConfig(iterations=0)
    with pytest.raises(DomainError):
        ScenarioConfig(distances=(200.0, 100.0))
    with pytest.raises(DomainError):
        ScenarioConfig(angles=())
    with pytest.raises(DomainError):
        ScenarioConfig(experiment="f9")
    with pytest.raises(DomainError):
        ScenarioConfig(master_seed=2**64)


def test_errors_name_the_grid_point():
    cfg = ScenarioConfig(experiment="f6", altitudes=(50.0, 2000.0))
    with pytest.raises(SweepError, match="altitude=2000.0"):
        run_sweep(cfg)


def test_linear_grid():
    from uavlink.scenario import linear_grid

    assert linear_grid(0, 90, 1) == tuple(float(i) for i in range(91))
    assert linear_grid(0, 100, 60) == (0.0, 60.0)
    assert linear_grid(0.1, 0.3, 0.1)[-1] == pytest.approx(0.3)
    assert linear_grid(5, 1, 1) == ()
