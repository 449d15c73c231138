import json
import math

import pytest

from marstrand import validate_disjoint
from marstrand.cli import main
from marstrand.io import read_squares_csv

CARPET_SPEC = {
    "name": "carpet",
    "base": 4,
    "digits": [[dx, dy] for dx in (0, 2, 3) for dy in (0, 2, 3)],
}
FULL_SPEC = {"name": "full", "base": 2, "digits": [[0, 0], [0, 1], [1, 0], [1, 1]]}


def write_config(tmp_path, spec, **overrides):
    cfg = {
        "spec": spec,
        "depths": [1, 2],
        "tau": 1.0,
        "grid": 16,
        "out": str(tmp_path / "out"),
        "seed": 0,
    }
    cfg.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return path


def test_gen_writes_expected_rows(tmp_path):
    cfg = write_config(tmp_path, CARPET_SPEC, depths=[2, 2])
    assert main(["gen", "--config", str(cfg)]) == 0
    rows = (tmp_path / "out" / "set_2.csv").read_text().strip().splitlines()
    assert len(rows) == 1 + 81
    summary = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert summary["gen"]["sets"][0]["count"] == 81
    assert summary["gen"]["sets"][0]["hausdorff_sum"] == pytest.approx(math.sqrt(3), abs=1e-9)


def test_gen_full_depth_3(tmp_path):
    cfg = write_config(tmp_path, FULL_SPEC, depths=[3, 3])
    assert main(["gen", "--config", str(cfg)]) == 0
    rows = (tmp_path / "out" / "set_3.csv").read_text().strip().splitlines()
    assert len(rows) == 1 + 64


def test_invalid_base_exits_2(tmp_path, capsys):
    cfg = write_config(tmp_path, {"name": "bad", "base": 3, "digits": [[0, 0]]})
    assert main(["gen", "--config", str(cfg)]) == 2
    assert "power of two" in capsys.readouterr().err


def test_bad_depths_exits_2(tmp_path):
    cfg = write_config(tmp_path, FULL_SPEC, depths="5..1")
    assert main(["gen", "--config", str(cfg)]) == 2


def test_spec_by_relative_path(tmp_path):
    (tmp_path / "spec.json").write_text(json.dumps(FULL_SPEC))
    cfg = write_config(tmp_path, "spec.json", depths=[1, 1])
    assert main(["gen", "--config", str(cfg)]) == 0
    assert (tmp_path / "out" / "set_1.csv").exists()


def test_missing_spec_path_exits_2(tmp_path, capsys):
    cfg = write_config(tmp_path, "nowhere.json")
    assert main(["gen", "--config", str(cfg)]) == 2
    assert "cannot read spec" in capsys.readouterr().err


def test_cover_roundtrip_and_goodness(tmp_path):
    cfg = write_config(tmp_path, FULL_SPEC, depths=[2, 3])
    assert main(["cover", "--config", str(cfg)]) == 0
    squares = read_squares_csv(tmp_path / "out" / "cover_3.csv")
    assert len(squares) == 64  # tie case: cover unchanged
    ok, _ = validate_disjoint(squares)
    assert ok
    info = json.loads((tmp_path / "out" / "cover_3.json").read_text())
    assert info["goodness_constant"] == pytest.approx(1.0, abs=1e-12)
    assert info["goodness_bound"] == pytest.approx(1.0, abs=1e-12)


def test_cover_tau_below_one_collapses(tmp_path):
    cfg = write_config(tmp_path, FULL_SPEC, depths=[3, 3], tau=0.9)
    assert main(["cover", "--config", str(cfg)]) == 0
    squares = read_squares_csv(tmp_path / "out" / "cover_3.csv")
    assert [(q.level, q.ix, q.iy) for q in squares] == [(0, 0, 0)]


def test_marstrand_outputs_and_chain(tmp_path):
    cfg = write_config(tmp_path, CARPET_SPEC, depths=[1, 2], grid=32)
    assert main(["marstrand", "--config", str(cfg)]) == 0
    out = tmp_path / "out"
    for depth in (1, 2):
        assert (out / f"sweep_{depth}.csv").exists()
        svg = (out / f"plot_{depth}.svg").read_text()
        assert svg.startswith("<svg") and "polyline" in svg
    summary = json.loads((out / "summary.json").read_text())["marstrand"]
    for row in summary["depths"]:
        assert row["energy_quadrature"] <= row["energy_pair_bound"] * (1 + 1e-9)
        assert row["energy_pair_bound"] <= row["energy_transversal_capped"] * (1 + 1e-9)
        assert row["shells"]
    header = (out / "sweep_1.csv").read_text().splitlines()[0]
    assert header == "theta,m_proj,int_f,int_f2,cs_lower"


def test_density_outputs(tmp_path):
    cfg = write_config(tmp_path, FULL_SPEC, depths=[1, 1], grid=16)
    assert main(["density", "--config", str(cfg)]) == 0
    out = tmp_path / "out"
    lines = (out / "density_1.csv").read_text().splitlines()
    assert lines[0] == "theta,breakpoint,value"
    rows = json.loads((out / "summary.json").read_text())["density"]["rows"]
    assert rows
    for row in rows:
        if not row.get("skipped"):
            assert row["ratio"] > 0
            assert row["mass"] == pytest.approx(2.0, rel=1e-9)


def test_density_skips_small_eps(tmp_path, capsys):
    cfg = write_config(tmp_path, FULL_SPEC, depths=[1, 1], grid=16, eps=[1e-6])
    assert main(["density", "--config", str(cfg)]) == 0
    assert "skipped" in capsys.readouterr().err
    rows = json.loads((tmp_path / "out" / "summary.json").read_text())["density"]["rows"]
    assert all(row.get("skipped") for row in rows)


def test_reruns_are_byte_identical(tmp_path):
    cfg = write_config(tmp_path, CARPET_SPEC, depths=[1, 2], grid=32)
    assert main(["marstrand", "--config", str(cfg)]) == 0
    first = {
        p.name: p.read_bytes() for p in (tmp_path / "out").iterdir() if p.suffix == ".csv"
    }
    assert main(["marstrand", "--config", str(cfg)]) == 0
    second = {
        p.name: p.read_bytes() for p in (tmp_path / "out").iterdir() if p.suffix == ".csv"
    }
    assert first == second


def test_cap_exceeded_exits_3(tmp_path, monkeypatch):
    import marstrand.estimates as estimates

    monkeypatch.setattr(estimates, "PAIR_CAP", 3)
    monkeypatch.setattr(estimates, "_FAST_MIN_SQUARES", 10**9)
    cfg = write_config(tmp_path, CARPET_SPEC, depths=[1, 1], grid=16)
    assert main(["marstrand", "--config", str(cfg)]) == 3


def test_flag_overrides(tmp_path):
    cfg = write_config(tmp_path, FULL_SPEC, depths=[1, 1])
    out2 = tmp_path / "other"
    assert main(["gen", "--config", str(cfg), "--out", str(out2), "--depths", "2..2"]) == 0
    assert (out2 / "set_2.csv").exists()
