import json

import pytest

from nilskt import cli, forms, scan

I, MINUS_I = {"im": 1}, {"im": -1}
PSEUDO_KAHLER = {
    "algebra": "(0,0,0,0,13-24,14+23)",
    "J": [[1, MINUS_I, 0, 0, 0, 0], [0, 0, 1, I, 0, 0], [0, 0, 0, 0, 1, I]],
}


def _job(tmp_path, doc, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def _run(capsys, argv):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("params, label", [
    ({"A": 0, "B": 0, "C": 0, "D": 0, "E": 1}, "(0,0,0,0,13+42,14+23)"),
    ({"A": 0, "B": 1, "C": 0, "D": 0, "E": 0}, "(0,0,0,0,0,12)"),
    ({"A": 0, "B": 1, "C": "-1/2", "D": 0, "E": 0}, "(0,0,0,0,0,12+34)"),
])
def test_classify(tmp_path, capsys, params, label):
    code, out, _ = _run(capsys, ["classify", _job(tmp_path, params)])
    assert code == 0
    assert f"class: {label}" in out
    assert "skt2_residual:" in out


def test_classify_abelian_is_a_usage_error(tmp_path, capsys):
    code, out, err = _run(capsys, ["classify", _job(tmp_path, {"A": 0})])
    assert code == 2 and out == "" and "abelian" in err.lower()


def test_check_params(tmp_path, capsys):
    code, out, _ = _run(capsys, ["check", _job(tmp_path, {"params": {"B": 1}})])
    assert code == 0
    assert "skt2_residual: 0" in out
    assert "b1:" in out and "class:" in out


def test_check_algebra_with_structure(tmp_path, capsys):
    doc = {"algebra": "(0,0,0,0,0,12)", "J": [[1, I, 0, 0, 0, 0], [0, 0, 1, I, 0, 0], [0, 0, 0, 0, 1, I]]}
    code, out, _ = _run(capsys, ["check", _job(tmp_path, doc)])
    assert code == 0
    assert "b1: 5" in out


def test_check_rejects_bad_jacobi(tmp_path, capsys):
    doc = {"algebra": "(0,0,0,12,14,15+23)", "J": PSEUDO_KAHLER["J"]}
    code, _, err = _run(capsys, ["check", _job(tmp_path, doc)])
    assert code == 2 and "error" in err


def test_curvature_pseudo_kahler(tmp_path, capsys):
    doc = dict(PSEUDO_KAHLER, omega={"16": 1, "25": 1, "34": 1})
    code, out, _ = _run(capsys, ["curvature", _job(tmp_path, doc)])
    assert code == 0, out
    assert "signature: (4, 2)" in out
    assert "ricci_flat: yes" in out
    assert "|R_1212|: 2" in out
    assert "pseudo_kahler: yes" in out
    assert "riemann_zero: no" in out


def test_curvature_rejects_form_that_is_not_J_invariant(tmp_path, capsys):
    doc = dict(PSEUDO_KAHLER, omega={"13": 1, "25": 1, "46": 1})
    code, _, err = _run(capsys, ["curvature", _job(tmp_path, doc)])
    assert code == 2 and "symmetric" in err


def test_curvature_needs_a_metric(tmp_path, capsys):
    code, _, err = _run(capsys, ["curvature", _job(tmp_path, {"algebra": "(0,0,0,0,0,12)"})])
    assert code == 2 and "metric" in err


def test_missing_file_and_bad_json(tmp_path, capsys):
    assert _run(capsys, ["classify", str(tmp_path / "nope.json")])[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert _run(capsys, ["classify", str(bad)])[0] == 2


def test_bad_mode_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NILSKT_MODE", "bogus")
    assert _run(capsys, ["classify", _job(tmp_path, {"E": 1})])[0] == 2


def test_float_mode(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NILSKT_MODE", "float")
    code, out, _ = _run(capsys, ["classify", _job(tmp_path, {"B": 1, "C": -0.5})])
    assert code == 0 and "class: (0,0,0,0,0,12+34)" in out


def test_scan_csv(tmp_path, capsys):
    out_path = tmp_path / "grid.csv"
    code, _, _ = _run(capsys, ["iwasawa", "scan", "--re-min", "-4", "--re-max", "0", "--im-min", "-1",
                               "--im-max", "1", "--steps", "5", "--out", str(out_path)])
    assert code == 0
    lines = out_path.read_bytes().decode().split("\n")
    assert lines[0] == ",".join(scan.COLUMNS)
    rows = [l.split(",") for l in lines[1:] if l]
    assert len(rows) == 25 + 4  # known solutions inside the window are appended
    assert sum(r[-1] == "true" for r in rows) == 4


def test_scan_degenerate_point(capsys):
    code, out, _ = _run(capsys, ["iwasawa", "scan", "--re-min", "1", "--re-max", "1", "--im-min", "0",
                                 "--im-max", "0", "--steps", "1"])
    assert code == 0
    assert out.splitlines()[1].split(",")[-2:] == ["degenerate", ""]


def test_scan_output_does_not_depend_on_workers():
    pts = scan.grid_points(-3, 1, -1, 1, 7)
    assert scan.to_csv(scan.rows_for(pts, 1)) == scan.to_csv(scan.rows_for(pts, 3))


def test_empty_grid(capsys):
    code, _, err = _run(capsys, ["iwasawa", "scan", "--re-min", "1", "--re-max", "0", "--im-min", "0",
                                 "--im-max", "1", "--steps", "3"])
    assert code == 2 and "empty grid" in err


def test_curve_csv(capsys):
    code, out, _ = _run(capsys, ["iwasawa", "curve", "--samples", "12"])
    assert code == 0
    rows = [l.split(",") for l in out.splitlines()[1:]]
    assert len(rows) == 24
    assert all(r[-1] == "true" for r in rows)
    assert max(abs(float(r[6])) for r in rows) < 1e-10


def test_verify_filter_by_group(capsys):
    code, out, _ = _run(capsys, ["verify", "--filter", "iwasawa"])
    assert code == 0
    numbers = [int(l.split("[")[1].split("]")[0]) for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert numbers == [6, 7, 8, 9]
    assert "4/4 criteria passed" in out


def test_verify_detects_a_wrong_J(capsys, monkeypatch):
    original = forms.apply_J
    monkeypatch.setattr(forms, "apply_J", lambda a: -original(a))
    code, out, _ = _run(capsys, ["verify", "--filter", "2"])
    assert code == 1
    assert out.startswith("FAIL [ 2]")


@pytest.mark.parametrize("argv", [
    ["verify", "--filter", "nonsense"],
    ["verify", "--tol", "0"],
    ["verify", "--tol", "-1e-3"],
    ["iwasawa", "curve", "--samples", "5", "--branch", "middle"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = cli.main(argv)
        raise SystemExit(code)
    assert info.value.code == 2
