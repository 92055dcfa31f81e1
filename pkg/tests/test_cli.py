from __future__ import annotations

import json

import pytest

from symquiver.cli import load_fixture, run


@pytest.fixture
def problem(tmp_path):
    def write(name: str):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(load_fixture(name)))
        return str(path)

    return write


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def call_json(capsys, *argv):
    code, out = call(capsys, *argv)
    return code, json.loads(out)


def test_cartan_check_rank3(capsys, problem):
    code, out = call_json(capsys, "cartan", "check", problem("rank3_example"))
    assert code == 0 and out["schema"] == 1
    assert out["symmetrizer"] == [9, 6, 2] and out["minimal"]
    assert out["g"]["1,2"] == 2 and out["f"]["2,1"] == 3 and out["f"]["3,2"] == 3


def test_cartan_check_invalid(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"cartan": [[2, 1], [-1, 2]], "orientation": [[1, 2]]}))
    code, out = call_json(capsys, "cartan", "check", str(path))
    assert code == 1 and not out["valid"] and out["violations"]


def test_roots_list(capsys, problem):
    code, out = call_json(capsys, "roots", "list", problem("b2"))
    assert code == 0 and out == [[0, 1], [1, 0], [1, 1], [1, 2]]
    code, out = call_json(capsys, "roots", "list", problem("affine_a1"), "--cap", "20")
    assert code == 1 and out["oracle_capped"]


def test_algebra_info(capsys, problem):
    code, out = call_json(capsys, "algebra", "info", problem("b2"), "--relations", "--pi")
    assert code == 0 and out["kind"] == "Pi"
    assert "alpha:2:1:1" in out["arrows"] and "-a21 a12 = 0" in out["relations"]


def test_build_validate_roundtrip(capsys, problem, tmp_path):
    for name in ("b2", "c3", "rank3_example"):
        for kind in "ESPI":
            code, out = call(capsys, "module", "build", problem(name), "--kind", kind, "--vertex", "1")
            assert code == 0
            path = tmp_path / f"{name}_{kind}.json"
            path.write_text(out)
            code, rep = call_json(capsys, "module", "validate", str(path))
            assert code == 0 and rep["valid"]


def test_validate_reports_failure(capsys, problem, tmp_path):
    code, out = call(capsys, "module", "build", problem("b2"), "--kind", "E", "--vertex", "2")
    data = json.loads(out)
    data["eps"]["2"] = {"rows": 1, "cols": 1, "entries": ["1"]}
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    code, rep = call_json(capsys, "module", "validate", str(path))
    assert code == 1 and rep["violations"][0]["relation"] == "eps2 = 0"


def _build(capsys, problem, tmp_path, name, kind, vertex):
    code, out = call(capsys, "module", "build", problem(name), "--kind", kind, "--vertex", str(vertex))
    path = tmp_path / f"{name}_{kind}{vertex}.json"
    path.write_text(out)
    return str(path)


def test_hom_and_ext(capsys, problem, tmp_path):
    e1 = _build(capsys, problem, tmp_path, "b2", "E", 1)
    e2 = _build(capsys, problem, tmp_path, "b2", "E", 2)
    p2 = _build(capsys, problem, tmp_path, "b2", "P", 2)
    assert call_json(capsys, "hom", p2, p2)[1]["hom"] == 1
    assert call_json(capsys, "ext", e2, e1)[1]["ext1"] == 2
    code, out = call_json(capsys, "ext", "--pi", e2, e1)
    assert code == 0 and out["ext2"] is None and out["symmetric"]


def test_ext_pi_affine_has_ext2(capsys, problem, tmp_path):
    p1 = _build(capsys, problem, tmp_path, "affine_a1", "P", 1)
    p2 = _build(capsys, problem, tmp_path, "affine_a1", "P", 2)
    code, out = call_json(capsys, "ext", "--pi", p1, p2)
    assert code == 0 and isinstance(out["ext2"], int)


def test_problem_override(capsys, problem, tmp_path):
    p2 = _build(capsys, problem, tmp_path, "b2", "P", 2)
    data = json.loads(open(p2).read())
    del data["problem"]
    bare = tmp_path / "bare.json"
    bare.write_text(json.dumps(data))
    assert run(["module", "validate", str(bare)]) == 1
    capsys.readouterr()
    code, out = call_json(capsys, "module", "validate", str(bare), "--problem", problem("b2"))
    assert code == 0 and out["rank_vector"] == [1, 1]


def test_tau_orbit_and_classify(capsys, problem):
    code, out = call_json(capsys, "tau-orbit", problem("b2"), "--vertex", "1")
    assert code == 0 and out["terminated"] and [m["rank"] for m in out["members"]] == [[1, 0], [1, 2]]
    code, out = call_json(capsys, "classify", problem("b2"))
    assert code == 0 and out["count"] == 4
    code, out = call_json(capsys, "tau-orbit", problem("affine_a1"), "--vertex", "1", "--cap", "4")
    assert not out["terminated"] and out["length"] == 4
    assert run(["classify", problem("affine_a1")]) == 1


def test_gp_check(capsys, problem, tmp_path):
    s1 = _build(capsys, problem, tmp_path, "a2_d22", "S", 1)
    s2 = _build(capsys, problem, tmp_path, "a2_d22", "S", 2)
    assert call_json(capsys, "gp-check", s1)[1]["gorenstein_projective"] is True
    assert call_json(capsys, "gp-check", s2)[1]["gorenstein_projective"] is False


def test_field_option(capsys, problem):
    code, out = call_json(capsys, "--field", "fp:3", "classify", problem("g2"))
    assert code == 0 and out["count"] == 6
    code, out = call_json(capsys, "classify", problem("g2"), "--field", "fp:5")
    assert code == 0 and out["count"] == 6


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["frobnicate"]) == 2
    assert run(["module", "build", "x.json", "--kind", "Q", "--vertex", "1"]) == 2
    assert run(["--field", "fp:4", "classify", "x.json"]) == 2
    assert run(["classify", "/nonexistent/file.json"]) == 2
    capsys.readouterr()


def test_table_format(capsys, problem):
    code, out = call(capsys, "--format", "table", "classify", problem("b2"))
    assert code == 0 and "count: 4" in out


def test_verify_suite(capsys):
    code, out = call_json(capsys, "verify", "--suite", "dynkin")
    assert code == 0 and out["pass"]
    assert all({"name", "expected", "actual", "pass", "elapsed"} <= set(c) for c in out["checks"])
    code2, out2 = call_json(capsys, "verify", "--seed", "0")
    assert [c["actual"] for c in out2["checks"]] == [c["actual"] for c in out["checks"]]
    code, out = call_json(capsys, "verify", "--suite", "all", "--seed", "9")
    assert code == 0 and out["pass"]
