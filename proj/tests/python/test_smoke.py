import csv
import io
import json
import math

import pytest

import wvasat


def test_ideal_limit():
    beam = wvasat.BeamSpec(w=1.0, n_bar=1000.0, g=0.01)
    grid = wvasat.PixelGrid.centered(400, 1.0, 8.0)
    cm = wvasat.poisson_fisher_total(beam, wvasat.MeasurementScheme.conventional(), grid)
    wva = wvasat.poisson_fisher_total(beam, wvasat.MeasurementScheme.weak_value(2.0), grid)
    assert cm == pytest.approx(1000.0, rel=0.01)
    assert wva == pytest.approx(800.0, rel=0.01)


def test_weak_value_post_selection():
    s = wvasat.MeasurementScheme.weak_value(3.2)
    assert s.p_ps * (1.0 + 3.2**2) == pytest.approx(1.0, abs=1e-15)
    assert s.id == "WVA"
    with pytest.raises(ValueError):
        wvasat.MeasurementScheme.weak_value(0.5)


def test_detector_and_fisher():
    cfg = wvasat.DetectorConfig()
    assert wvasat.mean_response(500.0, cfg) == pytest.approx(256.0 * (1.0 - math.exp(-1.0)), rel=1e-14)
    cfg.sigma = 12.8
    beam = wvasat.BeamSpec(n_bar=1e5, g=0.01)
    grid = wvasat.PixelGrid.centered(100, 1.0, 2.0)
    fi = wvasat.fisher_total(beam, wvasat.MeasurementScheme.conventional(), grid, cfg)
    assert len(fi.per_pixel) == 100
    assert fi.total == pytest.approx(sum(fi.per_pixel), rel=1e-12)
    assert fi.max_tail_mass <= 1e-12
    check = wvasat.fisher_fd_check(beam, wvasat.MeasurementScheme.conventional(), grid, cfg)
    assert check.resolvable
    assert check.total_deviation < 1e-4


def test_presets_and_sweep_csv():
    names = wvasat.preset_names()
    assert {"fig1a", "fig1b", "fig3b", "table1"} <= set(names)
    dumped = json.loads(wvasat.dump_preset("fig3b"))
    assert dumped["schema_version"] == 1
    text = json.dumps(
        {
            "schema_version": 1,
            "beam": {"w": 1.0, "g": 0.01},
            "grid": {"pixels": 30},
            "detector": {"sigma": 2.56},
            "schemes": [{"kind": "CM"}, {"kind": "WVA", "a_w": 2.0}],
            "sweep": {"variable": "n_bar", "min": 100, "max": 1e4, "points": 3},
        }
    )
    rows = list(csv.DictReader(io.StringIO(wvasat.fi_sweep_csv(config=text))))
    assert len(rows) == 6
    assert list(rows[0]) == ["n_bar", "scheme", "A_w", "p_ps", "fi_total"]
    assert wvasat.fi_sweep_csv(config=text) == wvasat.fi_sweep_csv(config=text, threads=2)


def test_config_errors():
    with pytest.raises(wvasat.ConfigError):
        wvasat.fi_sweep_csv(config='{"schema_version": 1, "bogus": 0}')
    with pytest.raises(wvasat.ConfigError):
        wvasat.dump_preset("nope")
