"""CLI surface: subcommands, formats, exit codes, file outputs."""

import json
from fractions import Fraction as F

import pytest

from takagi import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_alpha_forms():
    assert cli.parse_alpha("-3/2") == cli.RationalScalar(F(-3, 2))
    assert cli.parse_alpha("0.25") == cli.RationalScalar(F(1, 4))
    s = cli.parse_alpha("sqrt2")
    assert cli.scalar_decimal(s, 12).startswith("1.41421356237")
    g = cli.parse_alpha("golden")
    assert cli.scalar_decimal(g, 12).startswith("1.61803398875")
    r = cli.parse_alpha("root:1,-1,-1,-1,1:1/2:1")
    assert cli.scalar_decimal(r, 12).startswith("0.580691831993")
    with pytest.raises(ValueError):
        cli.parse_alpha("root:1,-1")


def test_maximize_json(capsys):
    code, out, _ = run(capsys, "maximize", "--alpha", "1", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["smallest"]["exact"] == "1/3"
    assert d["largest"]["exact"] == "5/12"
    assert d["cardinality"]["hausdorff_dim"] == "1/2"
    assert d["value"]["lo"].startswith("0.6666666")


def test_maximize_power_squared(capsys):
    code, out, _ = run(capsys, "maximize", "--seq", "power-squared", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert [l["exact"] for l in d["locations"]] == ["11/24", "13/24"]
    assert d["cardinality"] == {
        "kind": "finite",
        "count": 2,
        "block_length": None,
        "hausdorff_dim": None,
        "certified_depth": None,
    }


def test_minimize_alpha_minus_one(capsys):
    code, out, _ = run(capsys, "minimize", "--alpha=-1", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["cardinality"]["hausdorff_dim"] == "1/2"
    assert d["value"]["lo"] == "0" == d["value"]["hi"]


def test_classify_pretty(capsys):
    code, out, _ = run(capsys, "classify", "--alpha=-3/2")
    assert code == 0
    assert "neg_steep" in out and "19/40" in out


def test_eval_sequence_file(tmp_path, capsys):
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps(["1", "1/2", "-1/4"]))
    code, out, _ = run(
        capsys, "eval", "--seq", "file:%s" % path, "--t", "1/2", "--width", "1/1000000"
    )
    assert code == 0
    assert "f(1/2)" in out


def test_eval_geometric_exact(capsys):
    code, out, _ = run(capsys, "eval", "--alpha", "sqrt2", "--t", "1/3", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["lo"].startswith("1.138071187457") and d["exact"]["type"] == "algebraic"


def test_exit_codes(capsys):
    code, _, err = run(capsys, "maximize", "--alpha", "7/2")
    assert code == cli.EXIT_USAGE
    code, _, err = run(capsys, "littlewood", "scan", "--max-degree", "30")
    assert code == cli.EXIT_BUDGET
    code, _, err = run(capsys, "maximize", "--alpha", "root:1,-1,-1:0:1", "--depth", "4")
    assert code == 0  # resolvable algebraic input works at tiny depth


def test_unresolved_interval_exit(monkeypatch, capsys):
    from takagi import scalars as sc

    monkeypatch.setattr(
        cli, "parse_alpha", lambda text: sc.interval(F(54, 100), F(55, 100))
    )
    code, _, err = run(capsys, "maximize", "--alpha", "x")
    assert code == cli.EXIT_UNRESOLVED
    assert "unresolved" in err


def test_littlewood_scan_json(capsys):
    code, out, _ = run(capsys, "littlewood", "scan", "--max-degree", "5")
    assert code == 0
    d = json.loads(out)
    assert d["total_roots"] == 88 and d["max_degree"] == 5


def test_littlewood_steproots(capsys):
    code, out, _ = run(capsys, "littlewood", "steproots", "--max-degree", "4")
    assert code == 0
    rows = json.loads(out)
    polys = {r["poly"] for r in rows}
    assert "+--" in polys  # 1 - x - x^2 with both step roots
    assert any(r["root"].startswith("-1.618") for r in rows)


def test_littlewood_scan_csv_output(tmp_path, capsys):
    out = tmp_path / "roots.csv"
    code, stdout, _ = run(capsys, "littlewood", "scan", "--max-degree", "3", "--out", str(out))
    assert code == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "degree,mask,root,is_step_root"
    assert len(rows) == 1 + 16  # distinct roots at degree <= 3
    assert (tmp_path / "roots.csv.meta.json").exists()
    assert any(r.split(",")[2].startswith("-1.6180339887498948") for r in rows[1:])


def test_littlewood_gaps(capsys):
    code, out, _ = run(capsys, "littlewood", "gaps", "--max-degree", "4", "--resolution", "1/4")
    assert code == 0
    d = json.loads(out)
    assert "gaps" in d


def test_figure_outputs_and_sidecars(tmp_path, capsys):
    code, out, _ = run(
        capsys, "figure", "4", "--max-degree", "3", "--out-dir", str(tmp_path), "--bins", "10"
    )
    assert code == 0
    path = tmp_path / "fig4_histograms.csv"
    assert path.exists()
    meta = json.loads((tmp_path / "fig4_histograms.csv.meta.json").read_text())
    assert "revision" in meta and meta["config"]["max_degree"] == 3
    rows = path.read_text().splitlines()
    assert rows[0] == "component,bin_lo,bin_hi,roots,step_roots"
    assert len(rows) == 1 + 20


def test_figure_one_small_grid(tmp_path, capsys):
    code, out, _ = run(
        capsys, "figure", "1", "--points", "7", "--depth", "24", "--out-dir", str(tmp_path)
    )
    assert code == 0
    rows = (tmp_path / "fig1_maximizer_curve.csv").read_text().splitlines()
    assert rows[0] == "alpha,tau_sharp,tau_flat,max_value,cardinality,dim,exact,regime"
    assert len(rows) == 8
    takagi_row = [r for r in rows if r.startswith("1.0,") or r.startswith("1,")]
    if takagi_row:
        assert "continuum" in takagi_row[0] and "1/2" in takagi_row[0]


def test_figure_determinism(tmp_path, capsys):
    for sub in ("a", "b"):
        code, _, _ = run(
            capsys, "figure", "1", "--points", "5", "--depth", "16",
            "--out-dir", str(tmp_path / sub),
        )
        assert code == 0
    a = (tmp_path / "a" / "fig1_maximizer_curve.csv").read_bytes()
    b = (tmp_path / "b" / "fig1_maximizer_curve.csv").read_bytes()
    assert a == b


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert out.count("PASS") == 4 and "FAIL" not in out
