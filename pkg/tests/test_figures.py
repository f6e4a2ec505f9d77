"""Figure dataset emitters."""

import json
import math

import pytest

from cvpurify import emit_figure_data
from cvpurify.errors import ConfigError
from cvpurify.figures import fig3_rows, fig4_rows, fig5_rows, fig6_rows
from cvpurify.sweep import grid_range


def test_unknown_figure_rejected(tmp_path):
    with pytest.raises(ConfigError):
        emit_figure_data("fig7", tmp_path)


def test_fig2_dataset(tmp_path):
    paths = emit_figure_data("fig2", tmp_path)
    csv_path, script_path, manifest_path = paths
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "tau,f00,f01,f11,f_init"
    assert len(lines) == 201
    for line in lines[1:]:
        cells = line.split(",")
        assert cells[4] == "0.75"  # constant input fidelity
        for cell in cells[1:4]:
            if cell:
                assert float(cell) <= 0.75 + 1e-10
    assert "plot" in script_path.read_text()
    manifest = json.loads(manifest_path.read_text())
    assert manifest["figure"] == "fig2"
    assert manifest["rows"] == 200


def test_fig3_optimal_times_stay_near_reswap():
    header, rows = fig3_rows(
        lambda_grid=grid_range(0.1, 0.9, 0.2), nth_values=(0.0, 0.05)
    )
    assert header[2] == "tau_star"
    assert rows
    for row in rows:
        assert math.pi - 1.0 < row[2] < math.pi + 1.0


def test_fig4_efficiency_clamping():
    header, rows = fig4_rows(
        n_th=0.0,
        lambda_grid=grid_range(0.1, 0.9, 0.1),
        tau_grid=grid_range(0.2, 6.0, 0.2),
    )
    eff_idx = header.index("efficiency")
    f11_idx = header.index("f11")
    fi_idx = header.index("f_init")
    positive = 0
    for row in rows:
        assert row[eff_idx] >= 0.0
        if row[f11_idx] is None or row[f11_idx] <= row[fi_idx]:
            assert row[eff_idx] == 0.0
        if row[eff_idx] > 0:
            positive += 1
    assert positive > 0


def test_fig4_region_shrinks_with_thermal_noise():
    grids = dict(
        lambda_grid=grid_range(0.1, 0.9, 0.1), tau_grid=grid_range(0.2, 6.0, 0.2)
    )
    header, cold = fig4_rows(n_th=0.0, **grids)
    _, warm = fig4_rows(n_th=0.05, **grids)
    eff_idx = header.index("efficiency")
    n_cold = sum(1 for r in cold if r[eff_idx] > 0)
    n_warm = sum(1 for r in warm if r[eff_idx] > 0)
    assert n_warm < n_cold


def test_fig5_swap_gain_at_small_squeezing():
    header, rows = fig5_rows(
        lam_values=(0.1,), nth_values=(0.0,), tau_grid=grid_range(0.05, 0.5, 0.05)
    )
    f11_idx = header.index("f11")
    fi_idx = header.index("f_init")
    gains = [r[f11_idx] - r[fi_idx] for r in rows if r[f11_idx] is not None]
    assert max(gains) > 0.0


def test_fig6_baseline_column(tmp_path):
    header, rows = fig6_rows(lam_values=(0.1,), tau_grid=grid_range(0.1, 1.0, 0.1))
    fp_idx = header.index("f_param")
    tau_idx = header.index("tau")
    for row in rows:
        assert row[fp_idx] == 0.5 * (1.0 + row[tau_idx])


def test_grid_overrides_recorded_in_manifest(tmp_path):
    paths = emit_figure_data(
        "fig6", tmp_path, lam_values=(0.1,), tau_grid=grid_range(0.1, 0.5, 0.1)
    )
    manifest = json.loads(paths[2].read_text())
    assert manifest["defaults_used"] is False
    assert manifest["grid_overrides"]["lam_values"] == [0.1]
