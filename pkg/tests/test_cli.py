import json

import pytest

from lgsk.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_catalog_list(capsys):
    code, out, _err = run(capsys, "catalog", "list")
    assert code == 0
    names = json.loads(out)
    assert "golden-mean" in names and "dyck:N" in names


def test_build_validate_groups_roundtrip(tmp_path, capsys):
    target = str(tmp_path / "d2.json")
    code, _out, err = run(
        capsys, "build", "--spec", "dyck:2", "--levels", "3",
        "--word-cap", "8", "--out", target,
    )
    assert code == 0
    assert "wrote" in err

    code, out, _err = run(capsys, "validate", target)
    assert code == 0
    assert json.loads(out)["ok"]

    code, out, _err = run(capsys, "groups", target)
    assert code == 0
    data = json.loads(out)
    assert data["k0"]["groups"][0] == {"rank": 1, "torsion": [2]}
    assert all(g["torsion"] == [2] for g in data["k0"]["groups"])
    assert all(g == {"rank": 0, "torsion": []} for g in data["k1"]["groups"])


def test_build_deterministic(tmp_path, capsys):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    for target in (a, b):
        code, _out, _err = run(
            capsys, "build", "--spec", "golden-mean", "--levels", "3",
            "--word-cap", "6", "--out", target,
        )
        assert code == 0
    assert open(a).read() == open(b).read()


def test_build_roundtrip_identical_structure(tmp_path, capsys):
    first = str(tmp_path / "first.json")
    code, _out, _err = run(
        capsys, "build", "--spec", "full:2", "--levels", "2",
        "--word-cap", "4", "--out", first,
    )
    assert code == 0
    from lgsk.lgs import LambdaGraphSystem

    loaded = LambdaGraphSystem.from_json(open(first).read())
    assert json.loads(loaded.to_json()) == json.load(open(first))


def test_dot_level_counts(tmp_path, capsys):
    target = str(tmp_path / "d2.json")
    run(capsys, "build", "--spec", "dyck:2", "--levels", "2",
        "--word-cap", "6", "--out", target)
    code, out, _err = run(capsys, "dot", target, "--level", "1")
    assert code == 0
    # level pair 1 -> 2 of the 2-bracket system: 12 labeled + 4 iota edges
    assert out.count("->") == 12 + 4
    assert out.count("style=dashed") == 4


def test_sync_table(capsys):
    code, out, _err = run(
        capsys, "sync", "--spec", "golden-mean", "--lmax", "1",
        "--kmax", "2", "--word-cap", "4",
    )
    assert code == 0
    rows = json.loads(out)
    assert rows and all(r["verdict"] == "Pass" for r in rows)


def test_expand_and_compare(tmp_path, capsys):
    expanded = str(tmp_path / "gz.json")
    code, _out, _err = run(
        capsys, "expand", "--spec", "golden-mean", "--symbol", "b",
        "--fresh", "z", "--out", expanded,
    )
    assert code == 0
    data = json.load(open(expanded))
    assert data["kind"] == "expanded" and data["fresh"] == "z"

    code, out, _err = run(
        capsys, "compare", "--left", "golden-mean", "--right", expanded,
        "--levels", "4", "--word-cap", "10",
    )
    assert code == 0
    report = json.loads(out)
    assert report["ok"] and report["mismatches"] == 0


def test_markov_dyck_spec_file(tmp_path, capsys):
    matrix = str(tmp_path / "m.json")
    with open(matrix, "w") as fh:
        json.dump({"matrix": [[1, 0], [1, 1]]}, fh)
    code, out, _err = run(
        capsys, "build", "--spec", "markov-dyck:%s" % matrix,
        "--levels", "2", "--word-cap", "6",
    )
    assert code == 0
    data = json.loads(out)
    assert [len(l["vertices"]) for l in data["levels"]] == [1, 2, 3]


def test_error_exit_codes(capsys):
    code, _out, err = run(capsys, "build", "--spec", "full:1", "--levels", "2")
    assert code == 2
    assert "error" in err
    code, _out, _err = run(capsys, "validate", "/nonexistent/file.json")
    assert code == 2


def test_verdict_exit_code_on_invalid_lgs(tmp_path, capsys):
    # hand-written system missing an in-edge fails validation with exit 1
    bad = {
        "levels": [
            {"vertices": [{"id": "l0v0", "gamma": [[]], "rep": None}],
             "edges": [{"src": "l0v0", "dst": "l1v0", "label": "x"}],
             "iota": [{"child": "l1v0", "parent": "l0v0"},
                      {"child": "l1v1", "parent": "l0v0"}]},
            {"vertices": [{"id": "l1v0", "gamma": [["x"]], "rep": None},
                          {"id": "l1v1", "gamma": [["y"]], "rep": None}],
             "edges": [], "iota": []},
        ]
    }
    path = str(tmp_path / "bad.json")
    with open(path, "w") as fh:
        json.dump(bad, fh)
    code, out, _err = run(capsys, "validate", path)
    assert code == 1
    assert not json.loads(out)["ok"]
