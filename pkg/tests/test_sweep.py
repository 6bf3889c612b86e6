"""Sweep engine: grids, series, flags, serialization, presets."""

import csv
import io
import json
import math
from dataclasses import replace

import numpy as np
import pytest

from zenocoupler import (
    Axis,
    ConfigParse,
    Linked,
    OracleSettings,
    OutputIO,
    PRESET_IDS,
    Series,
    SweepConfig,
    SweepRow,
    UnknownPreset,
    classify,
    config_from_mapping,
    emit,
    figure_preset,
    load_config,
    parse_config_text,
    point_inputs,
    render,
    run_sweep,
    zero_crossings,
)
from zenocoupler.sweep import SCALAR_KEYS


def small_config(**over):
    base = dict(
        gamma_b=0.01, dk_b=1e-3,
        alpha_mag=0.8, beta_mag=0.6, delta_mag=0.5,
        axes=(Axis(name="kz", min=0.0, max=1.0, steps=5),),
        variant="linear",
    )
    base.update(over)
    return SweepConfig(**base)


def test_axis_validation_and_grids():
    with pytest.raises(ConfigParse):
        Axis(name="bogus", min=0, max=1, steps=3)
    with pytest.raises(ConfigParse):
        Axis(name="kz", min=0, max=1, steps=1)
    with pytest.raises(ConfigParse):
        Axis(name="kz", min=0, max=1, steps=3, scale="cubic")
    with pytest.raises(ConfigParse):
        Axis(name="kz", min=0, max=1, steps=3, scale="log")
    with pytest.raises(ConfigParse):
        Axis(name="kz", min=0, max=math.inf, steps=3)
    lin = Axis(name="kz", min=0.0, max=1.0, steps=5).grid()
    assert np.allclose(lin, [0, 0.25, 0.5, 0.75, 1.0])
    log = Axis(name="gamma_b", min=1e-3, max=1e-1, steps=3, scale="log").grid()
    assert np.allclose(log, [1e-3, 1e-2, 1e-1])


def test_linked_rules():
    scalars = {"alpha_mag": 6.0, "gamma_mag": 0.0}
    Linked("gamma_mag", "alpha_mag", "/", 2.0).apply(scalars)
    assert scalars["gamma_mag"] == 3.0
    Linked("gamma_mag", "alpha_mag", "*", 0.25).apply(scalars)
    assert scalars["gamma_mag"] == 1.5


def test_config_validation():
    with pytest.raises(ConfigParse):
        small_config(variant="quadratic")
    with pytest.raises(ConfigParse):
        small_config(format="xml")
    with pytest.raises(ConfigParse):
        small_config(axes=())
    with pytest.raises(ConfigParse):
        small_config(axes=(Axis("kz", 0, 1, 3), Axis("kz", 0, 2, 3)))
    with pytest.raises(ConfigParse):
        small_config(series=(Series("x"), Series("x")))
    with pytest.raises(ConfigParse):
        small_config(series=(Series("x", (("bogus", 1.0),)),))
    with pytest.raises(ConfigParse):
        small_config(linked=(Linked("kz", "alpha_mag", "*", 1.0),))
    with pytest.raises(ConfigParse):
        small_config(linked=(Linked("nope", "alpha_mag", "*", 1.0),))


def test_point_inputs_phase_units():
    scalars = {key: 0.0 for key in SCALAR_KEYS}
    scalars.update(k=2.0, k_phase=0.5, gamma_b=0.01, gamma_b_phase=1.0,
                   alpha_mag=3.0, alpha_phase=-0.5, kz=1.2)
    raw, amps, kz = point_inputs(scalars)
    assert raw["k"] == pytest.approx(2j)
    assert raw["gamma_b"] == pytest.approx(-0.01)
    assert amps.alpha == pytest.approx(-3j)
    assert kz == 1.2


def test_row_count_and_order():
    config = small_config(
        axes=(Axis("dk_b", 0.05, 0.15, 3), Axis("kz", 0.0, 1.0, 4)),
        series=(Series("one"), Series("two", (("beta_mag", 0.3),))),
    )
    rows = run_sweep(config)
    assert len(rows) == 3 * 4 * 2
    assert [r.series for r in rows[:12]] == ["one"] * 12
    # axis 1 outermost, axis 2 minor
    expected = [(u, v) for u in (0.05, 0.1, 0.15)
                for v in (0.0, 1 / 3, 2 / 3, 1.0)]
    got = [r.coords for r in rows[:12]]
    assert np.allclose(got, expected)


def test_regime_recomputes_from_emitted_value():
    rows = run_sweep(small_config())
    assert rows
    for row in rows:
        if math.isfinite(row.delta_n):
            assert row.regime == classify(row.delta_n)
            assert row.residual <= 1e-9
        else:
            assert row.regime == "Invalid"
    # kz = 0 head of the grid: no interaction yet
    assert rows[0].delta_n == 0.0
    assert rows[0].regime == "Neutral"


def test_invalid_points_flagged_not_dropped():
    config = small_config(axes=(Axis("dk_b", 0.0, 0.1, 3),), kz=1.0)
    rows = run_sweep(config)
    assert len(rows) == 3
    bad = rows[0]
    assert math.isnan(bad.delta_n)
    assert bad.regime == "Invalid"
    assert "invalid:singular_dk_b" in bad.flags
    assert all(math.isfinite(r.delta_n) for r in rows[1:])
    # flagged rows still serialize
    text = render(config, rows)
    first_data = text.splitlines()[1]
    assert first_data.endswith("Invalid,nan,invalid:singular_dk_b")


def test_spontaneous_with_seed_is_flagged():
    config = small_config(variant="spontaneous", delta_mag=1.0)
    rows = run_sweep(config)
    assert all("error:delta_not_zero" in r.flags for r in rows)
    assert all(r.regime == "Invalid" for r in rows)


def test_render_deterministic():
    config = small_config(series=(Series("s1"), Series("s2", (("delta_phase", 1.0),))))
    a = render(config, run_sweep(config))
    b = render(config, run_sweep(config))
    assert a == b
    ja = render(config, run_sweep(config), fmt="json")
    jb = render(config, run_sweep(config), fmt="json")
    assert ja == jb


def test_csv_round_trip():
    config = small_config(series=(Series("curve"),))
    rows = run_sweep(config)
    text = render(config, rows)
    parsed = list(csv.reader(io.StringIO(text)))
    assert parsed[0] == ["series", "kz", "delta_n", "regime", "residual", "flags"]
    assert len(parsed) == 1 + len(rows)
    for row, cells in zip(rows, parsed[1:]):
        assert cells[0] == "curve"
        assert float(cells[1]) == pytest.approx(row.coords[0], rel=1e-11)
        assert float(cells[2]) == pytest.approx(row.delta_n, rel=1e-11)
        assert cells[3] == row.regime
        # fixed 12-significant-digit format
        assert len(cells[2].split("e")[0].replace("-", "").replace(".", "")) == 12


def test_csv_column_order_without_series():
    config = small_config(axes=(Axis("dk_b", 0.05, 0.15, 2), Axis("kz", 0, 1, 2)))
    header = render(config, run_sweep(config)).splitlines()[0]
    assert header == "dk_b,kz,delta_n,regime,residual,flags"


def test_json_schema():
    config = small_config(axes=(Axis("dk_b", 0.0, 0.1, 3),), format="json")
    rows = run_sweep(config)
    doc = json.loads(render(config, rows))
    assert doc["metadata"]["columns"] == ["dk_b", "delta_n", "regime",
                                          "residual", "flags"]
    echo = doc["metadata"]["config"]
    assert echo["variant"] == "linear"
    assert echo["axes"] == [{"name": "dk_b", "min": 0.0, "max": 0.1,
                             "steps": 3, "scale": "linear"}]
    assert echo["oracle"]["m_max"] == 14
    assert len(doc["rows"]) == 3
    # the singular dk_b = 0 point serializes with null, not a bare NaN token
    assert doc["rows"][0]["delta_n"] is None
    assert doc["rows"][0]["flags"] == "invalid:singular_dk_b"
    assert doc["rows"][1]["delta_n"] == pytest.approx(rows[1].delta_n, rel=1e-11)


def test_zero_crossing_interpolation():
    config = small_config(axes=(Axis("kz", 0.0, 2.0, 5),))
    mk = lambda x, y: SweepRow(series="s", coords=(x,), delta_n=y,
                               regime="Neutral", residual=0.0)
    rows = [mk(0.0, 1.0), mk(0.5, -1.0), mk(1.0, math.nan),
            mk(1.5, 2.0), mk(2.0, 3.0)]
    out = zero_crossings(config, rows)
    assert out == {"s": [0.25]}
    # not defined off the kz axis
    other = small_config(axes=(Axis("dk_b", 0.05, 0.1, 2),))
    assert zero_crossings(other, rows) == {}


def test_oracle_and_both_variants():
    config = small_config(
        gamma_b=0.05,
        alpha_mag=0.6, beta_mag=0.4, delta_mag=0.3,
        axes=(Axis("kz", 0.0, 0.6, 3),),
        variant="both",
        oracle=OracleSettings(m_max=10),
    )
    rows = run_sweep(config)
    assert len(rows) == 3
    for row in rows:
        assert math.isfinite(row.delta_n_oracle)
        assert row.oracle_diff == row.delta_n - row.delta_n_oracle
    scale = max(abs(r.delta_n_oracle) for r in rows)
    assert all(abs(r.oracle_diff) <= max(1e-8, 0.05 * scale) for r in rows)
    header = render(config, rows).splitlines()[0]
    assert header == "kz,delta_n,delta_n_oracle,oracle_diff,regime,residual,flags"

    oracle_only = replace(config, variant="oracle")
    orows = run_sweep(oracle_only)
    for row, orow in zip(rows, orows):
        assert orow.delta_n == row.delta_n_oracle
        assert orow.delta_n_oracle is None
        assert orow.regime == classify(orow.delta_n)


def test_oracle_failure_flagged_per_point():
    # alpha too large for the tiny truncated basis: the propagated column
    # fails validation while the closed form still evaluates
    config = small_config(
        alpha_mag=5.0,
        axes=(Axis("kz", 0.0, 0.4, 2),),
        variant="both",
        oracle=OracleSettings(m_max=6),
    )
    rows = run_sweep(config)
    for row in rows:
        assert math.isfinite(row.delta_n)
        assert math.isnan(row.delta_n_oracle)
        assert row.oracle_diff is None
        assert "invalid:params" in row.flags
    assert ",nan,nan," in render(config, rows).splitlines()[1]


def test_oracle_with_kz_driven_link():
    # a link driven by kz forbids sharing one propagation across the kz grid
    config = small_config(
        gamma_b=0.04,
        alpha_mag=0.6, beta_mag=0.5, delta_mag=0.3,
        axes=(Axis("kz", 0.2, 0.6, 3),),
        linked=(Linked("gamma_b", "kz", "*", 0.05),),
        variant="both",
        oracle=OracleSettings(m_max=10),
    )
    rows = run_sweep(config)
    scale = max(abs(r.delta_n_oracle) for r in rows)
    for row in rows:
        assert abs(row.oracle_diff) <= max(1e-8, 0.05 * scale)


def test_config_text_round_trip(tmp_path):
    text = """
# comment line
variant = nonlinear
gamma_a = 0.01          # inline comment
gamma_b = 0.01
dk_a = 1.1e-3
dk_b = 1e-3
alpha_mag = 5
beta_mag = 3
gamma_mag = 2
delta_mag = 1
axis1 = kz, 0, 2, 9
series = up: delta_phase=0; down: delta_phase=1
linked = gamma_mag = alpha_mag / 2.5
oracle_m_max = 10
format = json
output = out.json
"""
    mapping = parse_config_text(text)
    config = config_from_mapping(mapping)
    assert config.variant == "nonlinear"
    assert config.axes == (Axis("kz", 0.0, 2.0, 9),)
    assert config.series == (
        Series("up", (("delta_phase", 0.0),)),
        Series("down", (("delta_phase", 1.0),)),
    )
    assert config.linked == (Linked("gamma_mag", "alpha_mag", "/", 2.5),)
    assert config.oracle.m_max == 10
    assert config.format == "json"

    path = tmp_path / "sweep.cfg"
    path.write_text(text)
    loaded = load_config(path, overrides={"kz": "1.5", "variant": "linear"})
    assert loaded.kz == 1.5
    assert loaded.variant == "linear"


def test_config_text_errors(tmp_path):
    with pytest.raises(ConfigParse):
        parse_config_text("no equals sign here")
    with pytest.raises(ConfigParse):
        parse_config_text("bogus_key = 1")
    with pytest.raises(ConfigParse):
        config_from_mapping({"axis2": "kz,0,1,3"})
    with pytest.raises(ConfigParse):
        config_from_mapping({"axis1": "kz,0,1,3", "gamma_b": "lots"})
    with pytest.raises(ConfigParse):
        config_from_mapping({"axis1": "kz,0,1"})
    with pytest.raises(ConfigParse):
        config_from_mapping({"axis1": "kz,0,1,3", "series": "missing assigns"})
    with pytest.raises(ConfigParse):
        config_from_mapping({"axis1": "kz,0,1,3", "linked": "a=b+1"})
    with pytest.raises(ConfigParse):
        config_from_mapping({"axis1": "kz,0,1,3", "oracle_m_max": "eight"})
    with pytest.raises(OutputIO):
        load_config(tmp_path / "missing.cfg")
    path = tmp_path / "cfg.txt"
    path.write_text("axis1 = kz,0,1,3\n")
    with pytest.raises(ConfigParse):
        load_config(path, overrides={"bogus": "1"})


def test_emit_and_io_error(tmp_path):
    config = small_config(output=str(tmp_path / "out.csv"))
    rows = run_sweep(config)
    emit(config, rows)
    assert (tmp_path / "out.csv").read_text() == render(config, rows)
    with pytest.raises(OutputIO):
        emit(config, rows, path=str(tmp_path / "no" / "such" / "dir.csv"))


def test_every_preset_builds_and_runs_head():
    assert len(PRESET_IDS) == 22
    for preset_id in PRESET_IDS:
        config = figure_preset(preset_id)
        assert config.output.startswith(preset_id)
        # evaluate one point per preset cheaply: shrink the axes
        small_axes = tuple(
            Axis(ax.name, ax.min, ax.max, 2, ax.scale) for ax in config.axes
        )
        rows = run_sweep(replace(config, axes=small_axes))
        expected = 2 ** len(small_axes) * max(1, len(config.series))
        assert len(rows) == expected
    with pytest.raises(UnknownPreset):
        figure_preset("fig999")


def test_preset_details():
    fig2a = figure_preset("fig2a")
    assert fig2a.variant == "linear"
    assert [s.label for s in fig2a.series] == ["delta=+1", "delta=-1", "delta=0"]
    assert fig2a.axes[0] == Axis("kz", 0.0, 2.0, 201)
    fig3a = figure_preset("fig3a")
    assert fig3a.dk_b == 1e-3 and fig3a.dk_a == 1.1e-3
    assert any("substitutes" in note for note in fig3a.notes)
    fig7d = figure_preset("fig7d")
    assert fig7d.axes[0].min == pytest.approx(1e-3)
    fig8b = figure_preset("fig8b")
    assert len(fig8b.linked) == 2
    assert fig8b.axes[0].name == "alpha_mag"


def test_fig7_singular_rows_flagged():
    config = figure_preset("fig7a")
    shrunk = replace(
        config, axes=(Axis("dk_b", 0.0, 0.2, 2), Axis("kz", 0.0, 2.0, 2))
    )
    rows = run_sweep(shrunk)
    assert [r.flags for r in rows[:2]] == [("invalid:singular_dk_b",)] * 2
    assert all(math.isfinite(r.delta_n) for r in rows[2:])
