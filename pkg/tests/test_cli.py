import json

import pytest

from ckrigidity.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_group(capsys):
    code, doc = report(capsys, "group", "--ball", "3", "--word", "v1,v2,v1")
    assert code == 0 and doc["schema"] == "ckrigidity-report/1"
    assert doc["result"]["ball_sizes"] == [1, 8, 44, 224]
    assert doc["result"]["normal_form"] == ["v2"]


def test_nerve_and_dot(capsys, tmp_path):
    dot = tmp_path / "n.dot"
    code, doc = report(capsys, "nerve", "--depth", "2", "--dot", str(dot))
    assert code == 0 and doc["result"]["nodes"] == 19
    text = dot.read_text()
    assert 'label="T1"' in text and 'label="T3"' in text


@pytest.mark.parametrize("argv", [["nerve", "--depth", "9"], ["nerve", "--range", "4"],
                                  ["domain", "--maxlen", "7"], ["bogus"]])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_geometry_files(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "nerve", "--geom", str(bad))[0] == 2
    assert run(capsys, "nerve", "--geom", str(tmp_path / "missing.json"))[0] == 2


def test_rigidity_sweep(capsys):
    code, doc = report(capsys, "rigidity", "--sweep", "--samples", "2000")
    assert code == 0 and doc["result"]["feasible_thetas"] == ["1/2"]


def test_action_verify_and_reject(capsys, tmp_path):
    code, doc = report(capsys, "action", "--verify", "--points", "3")
    assert code == 0 and doc["result"]["relations"]["holds"]
    geom = tmp_path / "g.json"
    geom.write_text(json.dumps({"theta": ["1/2", "1/3", "1/2"], "lengths": [1, 1, 1, 1]}))
    assert run(capsys, "action", "--verify", "--geom", str(geom))[0] == 2


def test_geodesic(capsys):
    code, doc = report(capsys, "geodesic", "--from", "2:0.5,0.3", "--to", "5:0.4,0.6", "--mesh", "0.1")
    assert code == 0 and doc["result"]["flats"] == [2, 0, 5]
    assert 0 <= doc["result"]["mesh"]["gap"] <= 0.2
    code, doc = report(capsys, "geodesic", "--from", "2:0.5,0.3", "--pole", "b+", "--radius", "3")
    assert code == 0 and len(doc["result"]["itinerary"]) == 1
    assert run(capsys, "geodesic", "--from", "0:0,0")[0] == 2


def test_domain(capsys, tmp_path):
    dot = tmp_path / "k.dot"
    code, doc = report(capsys, "domain", "--depth", "3", "--dot", str(dot))
    assert code == 0 and sorted(doc["result"]["labels"]) == ["T1", "T2", "T3"]
    assert dot.read_text().count("fillcolor") == 3


def test_verification_failure_exit_code(capsys, monkeypatch):
    from ckrigidity import rigidity
    real = rigidity.rigidity_report

    def broken(theta, **kw):
        out = real(theta, **kw)
        out["feasible"] = True
        return out

    monkeypatch.setattr(rigidity, "rigidity_report", broken)
    assert run(capsys, "rigidity", "--theta", "1/3")[0] == 1


def test_byte_identical_reports(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["rigidity", "--case-matrix", "--samples", "9000", "--seed", "5",
                     "--out", str(path)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["config"]["seed"] == 5
