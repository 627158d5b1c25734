import json
import math

import numpy as np
import pytest

from dswlab import export, pde
from dswlab.errors import DomainError
from dswlab.models import DispersionlessPair, Grid, RegionKind


def test_numbers_keep_17_digits():
    assert export.format_number(0.1) == "0.10000000000000001"
    assert export.format_number(-20.0) == "-20"
    assert export.format_number(math.nan) == "nan"
    assert export.format_number(-math.inf) == "-inf"
    assert float(export.format_number(1.0 / 3.0)) == 1.0 / 3.0


def test_json_is_plain_and_finite():
    data = {
        "pair": DispersionlessPair(0.25, 1.0),
        "kind": RegionKind.CNOIDAL_DSW,
        "values": np.array([1.5, np.nan, np.inf]),
        "count": np.int64(3),
        "flag": np.bool_(True),
    }
    text = export.dumps(data)
    assert json.loads(text) == {
        "pair": {"l_minus": 0.25, "l_plus": 1.0},
        "kind": "cnoidal_dsw",
        "values": [1.5, None, None],
        "count": 3,
        "flag": True,
    }
    assert text == export.dumps(data)


def test_csv_layout(tmp_path):
    path = tmp_path / "table.csv"
    text = export.write_csv({"x": [0.0, 0.5], "rho": [1.0, math.nan]}, path)
    assert text == "x,rho\n0,1\n0.5,nan\n"
    table = export.read_csv(path)
    assert list(table) == ["x", "rho"]
    assert math.isnan(table["rho"][1])
    with pytest.raises(DomainError):
        export.write_csv({"x": [0.0, 1.0], "rho": [1.0]})


def test_snapshot_columns():
    grid = Grid(64, 2.0 * math.pi * 4)
    fs = pde.plane_wave(grid, 1.0, 0.5)
    nu, _ = pde.velocity(fs, 1e-6)
    columns = export.snapshot_columns(fs, nu)
    assert tuple(columns) == export.SNAPSHOT_COLUMNS
    np.testing.assert_allclose(columns["re_u"] ** 2 + columns["im_u"] ** 2, columns["rho"])


def test_plot_rejects_unknown_columns(tmp_path):
    with pytest.raises(DomainError):
        export.plot_columns({"x": [0.0, 1.0]}, tmp_path / "a.svg", ["rho"])
    with pytest.raises(DomainError):
        export.plot_columns({"rho": [0.0, 1.0]}, tmp_path / "a.svg")
