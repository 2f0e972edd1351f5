import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from mahlervol import cli, svg
from mahlervol.mahler import closed_form_measure
from mahlervol.spectrum import FamilyParams

SVG_NS = "{http://www.w3.org/2000/svg}"


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_measure_report(capsys):
    code, out, _ = run(["measure", "--m", "2", "--n", "3", "--t", "1"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["command"] == "measure"
    assert report["params"] == {"m": 2, "n": 3, "t": 1}
    expected = closed_form_measure(FamilyParams(2, 3, 1.0)).total
    assert report["closed_form"]["total"] == expected
    assert report["residual"] <= 1e-10
    cf = report["closed_form"]
    assert set(cf) >= {"total", "log_term", "dilog_term", "arg_term", "roots", "arcs"}


def test_output_is_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert cli.main(["polygons", "--m", "1", "--n", "4", "--t", "0.9", "--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert capsys.readouterr().out == ""


def test_floats_round_trip_at_17_digits():
    value = 0.1 + 0.2
    text = cli.dumps({"x": value, "y": [1.0, 2.5e-300]})
    assert json.loads(text) == {"x": value, "y": [1.0, 2.5e-300]}
    assert "0.30000000000000004" in text
    with pytest.raises(ValueError):
        cli.dumps({"x": math.nan})


def test_verify_log_branch(capsys):
    code, out, _ = run(["verify", "--m", "1", "--n", "4", "--t", "5"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["branch"] == "log t"
    assert report["polygon_count"] == 0
    assert report["closed_form"] == math.log(5)
    assert report["passed"] is True


def test_verify_dilog_branch(capsys):
    code, out, _ = run(["verify", "--m", "2", "--n", "3", "--t", "0.9"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["branch"] == "dilogarithm"
    assert report["theorem_residual"] <= 1e-10
    assert all(v <= 1e-10 for v in report["measure_residuals"].values())


def test_verify_failure_exits_two(capsys):
    code, out, _ = run(["verify", "--m", "2", "--n", "3", "--t", "0.9", "--tol", "1e-30"], capsys)
    assert code == 2
    assert json.loads(out)["passed"] is False


def test_roots_and_polygons(capsys):
    code, out, _ = run(["roots", "--m", "2", "--n", "3", "--t", "1"], capsys)
    assert code == 0
    sigmas = [r["sigma"] for r in json.loads(out)["roots"]]
    assert sigmas == pytest.approx([2 * math.pi / 5, 4 * math.pi / 5], abs=1e-14)

    code, out, _ = run(["polygons", "--m", "2", "--n", "3", "--t", "0.9"], capsys)
    polys = json.loads(out)["polygons"]
    assert code == 0 and len(polys) == 2
    assert {p["relation"] for p in polys} >= {"3η + 2τ = 4π"}
    assert all(p["epsilon"] in (1, -1) for p in polys)


def test_csv_formats(capsys):
    code, out, _ = run(["sweep", "--m", "2", "--n", "3", "--t-lo", "0.1", "--t-hi", "2",
                        "--steps", "100", "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,kind,count_below,count_above"
    count_rows = [l.split(",") for l in lines[1:] if l.split(",")[1] == "count"]
    assert [float(r[0]) for r in count_rows] == pytest.approx([1.5], abs=1e-8)

    code, out, _ = run(["roots", "--m", "1", "--n", "4", "--t", "1", "--format", "csv"], capsys)
    assert code == 0 and len(out.strip().splitlines()) == 4


def test_sweep_json(capsys):
    code, out, _ = run(["sweep", "--m", "1", "--n", "4", "--t-lo", "0.1", "--t-hi", "5",
                        "--steps", "400"], capsys)
    assert code == 0
    events = json.loads(out)["events"]
    counts = [e["t"] for e in events if e["kind"] == "count"]
    assert counts == pytest.approx([math.sqrt(32 / 27), 4.0], abs=1e-8)


def test_apoly(capsys):
    code, out, _ = run(["apoly", "--m", "2", "--n", "3"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["neumann_zagier"] is True
    assert len(report["identity_solutions"]) == 5
    assert report["tilde_residual"] <= 1e-6


def test_svg_figures(tmp_path, capsys):
    code, out, _ = run(["svg", "--m", "2", "--n", "3", "--t", "1", "--output", str(tmp_path)],
                       capsys)
    assert code == 0
    files = sorted(tmp_path.iterdir())
    assert [f.name for f in files] == ["polygon_m2_n3_t1_1.svg", "polygon_m2_n3_t1_2.svg"]
    assert sorted(json.loads(out)["files"]) == [str(f) for f in files]
    for f in files:
        text = f.read_text()
        root = ET.fromstring(text)
        circle = root.find(f"{SVG_NS}circle[@class='circumcircle']")
        assert circle is not None and circle.get("stroke-dasharray")
        points = svg.parse_outline(text)
        assert len(points) == 5
        assert svg.radial_deviation(points) <= 1e-3
        t_sides = root.findall(f"{SVG_NS}line[@class='t-side']")
        unit_sides = root.findall(f"{SVG_NS}line[@class='unit-side']")
        assert len(t_sides) == 2 and len(unit_sides) == 3
        assert float(t_sides[0].get("stroke-width")) > float(unit_sides[0].get("stroke-width"))
        assert all(l.get("marker-end") == "url(#arrow)" for l in t_sides + unit_sides)


@pytest.mark.parametrize("m,n,t", [(1, 4, 1.085), (3, 5, 0.7), (5, 2, 2.0)])
def test_svg_vertices_on_circle(m, n, t, tmp_path, capsys):
    assert cli.main(["svg", "--m", str(m), "--n", str(n), "--t", str(t),
                     "--output", str(tmp_path)]) == 0
    capsys.readouterr()
    for f in tmp_path.iterdir():
        text = f.read_text()
        assert text.count(" Z") == 1
        points = svg.parse_outline(text)
        assert len(points) == m + n
        assert svg.radial_deviation(points) <= 1e-3


@pytest.mark.parametrize("argv", [
    ["measure", "--m", "2", "--n", "4", "--t", "1"],
    ["measure", "--m", "2", "--n", "3", "--t", "0"],
    ["measure", "--m", "2", "--n", "3", "--t", "-1"],
    ["measure", "--m", "2", "--n", "3"],
    ["sweep", "--m", "2", "--n", "3", "--t-lo", "2", "--t-hi", "1"],
    ["apoly", "--m", "3", "--n", "3"],
    ["measure", "--m", "2", "--n", "3", "--t", "1", "--format", "csv"],
    ["frobnicate", "--m", "2", "--n", "3"],
    ["measure", "--m", "two", "--n", "3", "--t", "1"],
])
def test_domain_errors_exit_one(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 1
    assert out == ""
    record = json.loads(err)
    assert record["error"] == "domain"
    assert record["message"]


def test_io_error_exits_three(tmp_path, capsys):
    target = tmp_path / "missing" / "report.json"
    code, _, err = run(["measure", "--m", "2", "--n", "3", "--t", "1", "--output", str(target)],
                       capsys)
    assert code == 3
    assert json.loads(err)["error"] == "io"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mahlervol", "roots", "--m", "1", "--n", "2",
                           "--t", "1"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["roots"][0]["sigma"] == pytest.approx(2 * math.pi / 3)
