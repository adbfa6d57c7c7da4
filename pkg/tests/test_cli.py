import json

import pytest

from polyverify.cli import build_parser, main


@pytest.fixture
def out(tmp_path, clean_env):
    return str(tmp_path / "reports")


def _data(out, name):
    with open(f"{out}/{name}", encoding="utf-8") as fh:
        return json.load(fh)["data"]


def test_verify_passes(out, capsys):
    assert main(["verify", "--m", "7", "--max", "300", "--out", out]) == 0
    assert "every 1 <= n <= 300" in capsys.readouterr().out
    assert _data(out, "conjecture_m7.json")["failures"] == []


def test_verify_reports_failures(out):
    assert main(["verify", "--m", "16", "--max", "40", "--out", out]) == 1
    assert _data(out, "conjecture_m16.json")["failures"][0] == 29


def test_verify_needs_polygon(out):
    assert main(["verify", "--out", out]) == 2


def test_gauss_value(out, capsys):
    assert main(["gauss", "--a", "1", "--b", "0", "--c", "8", "--out", out]) == 0
    assert _data(out, "gauss_1_0_8.json")["c"] == 8
    assert "G(1, 0; 8)" in capsys.readouterr().out


def test_gauss_check(out):
    assert main(["gauss", "--check", "6", "--out", out]) == 0
    assert _data(out, "gauss_check.json")["failures"] == []


def test_decompose_csv(out):
    assert main(["decompose", "--m", "7", "--max", "200", "--format", "csv", "--out", out]) == 0
    with open(f"{out}/decomposition_m7.csv", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    assert lines[0] == "n,s,a,b"
    assert lines[1] == "15,0,1/12,-1/12"


def test_bounds_single(out):
    assert main(["bounds", "--m", "7", "--digits", "40", "--out", out]) == 0
    data = _data(out, "bounds.json")
    assert data[0]["m"] == 7
    assert data[0]["eisSlope"] == {"num": "1", "den": "240"}


def test_bounds_unsupported(out):
    assert main(["bounds", "--m", "8", "--out", out]) == 2


def test_match_growth(out):
    assert main(["match-growth", "--m", "9", "--kmax", "8", "--out", out]) == 0
    assert _data(out, "growth_m9.json")["mismatches"] == []


def test_match_growth_orbit_budget(out):
    assert main(["match-growth", "--m", "7", "--mode", "orbits", "--out", out]) == 2


def test_selftest_family(out, capsys):
    assert main(["selftest", "--quick", "--family", "bounds", "--family", "relation", "--out", out]) == 0
    printed = capsys.readouterr().out
    assert "[PASS] bounds" in printed
    assert "[PASS] relation" in printed


def test_bad_config(out):
    assert main(["bounds", "--m", "7", "--config", "missing.json", "--out", out]) == 2


def test_bad_workers(out):
    assert main(["verify", "--m", "7", "--max", "10", "--workers", "0", "--out", out]) == 2


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_parser_has_every_command():
    parser = build_parser()
    for command in ("verify", "gauss", "decompose", "bounds", "match-growth", "selftest"):
        assert parser.parse_args([command]).command == command


def test_decompose_json_rationals(out):
    assert main(["decompose", "--m", "7", "--max", "200", "--out", out]) == 0
    first = _data(out, "decomposition_m7.json")[0]
    assert first["n"] == 15
    assert first["a"] == {"num": "1", "den": "12"}
    assert first["b"] == {"num": "-1", "den": "12"}


def test_out_names_json_file(tmp_path, clean_env):
    target = tmp_path / "tables.json"
    assert main(["bounds", "--m", "7", "--out", str(target)]) == 0
    assert target.is_file()
    data = json.loads(target.read_text(encoding="utf-8"))["data"]
    assert data[0]["m"] == 7
    assert not (tmp_path / "reports").exists()


def test_out_suffix_picks_csv(tmp_path, clean_env):
    target = tmp_path / "nested" / "tables.csv"
    assert main(["bounds", "--m", "7", "--out", str(target)]) == 0
    header = target.read_text(encoding="utf-8").splitlines()[0]
    assert header == "m,r,M,eisSlope,normSqBound,coeffBoundConst,crossoverN,finalConstant"


def test_out_file_collects_every_polygon(tmp_path, clean_env):
    target = tmp_path / "report.json"
    assert main(["verify", "--all", "--max", "60", "--out", str(target)]) == 0
    data = json.loads(target.read_text(encoding="utf-8"))["data"]
    assert [report["m"] for report in data] == [7, 9, 10, 11, 12, 13, 14]
    assert all(report["failures"] == [] for report in data)


def test_json_only_command_rejects_csv_file(tmp_path, clean_env):
    assert main(["verify", "--m", "7", "--max", "10", "--out", str(tmp_path / "report.csv")]) == 2


def test_series_csv(tmp_path, clean_env):
    target = tmp_path / "series.csv"
    assert main(["decompose", "--m", "7", "--series", "eisenstein", "--max", "20", "--out", str(target)]) == 0
    lines = target.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "n,coefficient_num,coefficient_den"
    assert lines[1] == "0,0,1"
    assert lines[16] == "15,1,12"
    assert len(lines) == 22


def test_series_json(out):
    assert main(["decompose", "--m", "7", "--series", "theta", "--max", "200", "--out", out]) == 0
    data = _data(out, "series_theta_m7.json")
    assert data["kind"] == "theta"
    assert data["truncation"] == 200
    assert data["coefficients"][135] == {"num": "1", "den": "1"}
    assert data["coefficients"][15] == {"num": "0", "den": "1"}
