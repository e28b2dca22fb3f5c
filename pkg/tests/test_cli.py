import csv
import io
import json
import subprocess
import sys

import pytest

from bohrlab.cli import RunConfig, main, render


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_radii_text(capsys):
    code, out, _ = run(capsys, "radii")
    assert code == 0
    assert any(line.startswith("D_f_radius 0.393727") for line in out.splitlines())


def test_radii_json_and_loose_tol(capsys):
    code, out, _ = run(capsys, "radii", "--format", "json", "--tol", "1e-6")
    assert code == 0
    rows = json.loads(out)
    assert {"id", "root", "expected", "delta"} <= set(rows[0])
    assert [r["id"] for r in rows] == sorted(r["id"] for r in rows)
    df = next(r for r in rows if r["id"] == "D_f_radius")
    assert df["delta"] <= 5e-6


def test_csv_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["verify", "--samples", "1", "--seed", "7", "--format", "csv", "--out", str(a)]) == 0
    assert main(["verify", "--samples", "1", "--seed", "7", "--format", "csv", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = list(csv.DictReader(io.StringIO(a.read_text())))
    keys = [(r["theorem"], r["step"]) for r in rows]
    assert len(keys) == len(set(keys)) and len(rows) % 20 == 0
    assert all(float(r["max_excess"]) <= 0 for r in rows)


def test_table_reports_mismatches(capsys):
    code, out, err = run(capsys, "table", "--format", "json")
    rows = json.loads(out)
    assert len(rows) == 54
    by = {(r["family"], r["M"]): r for r in rows}
    assert by[("R1", 0.431)]["printed"] == "0.443" and by[("R1", 0.431)]["ok"]
    assert by[("R*2", 0.862)]["printed"] == "0.147" and by[("R*2", 0.862)]["ok"]
    assert code == 4 and "R*3(0.431)" in err


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--samples", "5", "--format", "json")
    assert code == 0
    rows = {r["oracle"]: r for r in json.loads(out)}
    assert rows["area_bound:out_of_range"]["checks"] == 1 and rows["area_bound:out_of_range"]["failures"] == 0
    eq = [r for k, r in rows.items() if k.startswith("equality:sq_sum")]
    assert eq and all(abs(r["slack"]) <= 1e-12 for r in eq)


def test_usage_errors(capsys):
    for argv in (["nope"], ["radii", "--tol", "1e-16"], ["verify", "--samples", "0"], ["radii", "--trunc", "4"],
                 ["radii", "--format", "xml"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 1
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bohrlab"], capture_output=True, text=True)
    assert proc.returncode == 1 and "usage" in proc.stderr


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("radii", tol=1e-15)
    assert RunConfig("radii").samples == 200


def test_render_formats():
    rows = [dict(x=1.0, y=float("nan"), z="a")]
    assert render(rows, ["x", "y", "z"], "csv") == "x,y,z\n1,,a\n"
    assert json.loads(render(rows, ["x", "y", "z"], "json")) == [{"x": 1.0, "y": None, "z": "a"}]
    assert render(rows, ["x", "z"], "text") == "1  a\n"
