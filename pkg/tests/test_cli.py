import json
import subprocess
import sys

import pydot
import pytest

from knotadj.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "s1^2 s1 s2^-2")
    assert code == 0
    assert json.loads(out) == {"word": "s1^3 s2^-2", "syllables": [[1, 3], [2, -2]],
                               "length": 2, "crossings": 5}


def test_invariants_text(capsys):
    code, out, _ = run(capsys, "invariants", "s1^3")
    assert code == 0
    assert "fraction: S(3,1)" in out
    assert "jones: -t^4 + t^3 + t" in out
    assert "alexander: t - 1 + t^-1" in out
    assert "genus: 1" in out


def test_invariants_link_and_unknot(capsys):
    _, out, _ = run(capsys, "invariants", "s1^2")
    assert "components: 2" in out and "absent" in out
    _, out, _ = run(capsys, "invariants", "s1")
    assert "(unknot)" in out


def test_invariants_json(capsys):
    code, out, _ = run(capsys, "invariants", "--json", "s1^2 s2^-2")
    assert code == 0 and json.loads(out)["fraction"] == {"p": 5, "q": 2}


def test_alexander_cap_flag(capsys, monkeypatch):
    _, out, _ = run(capsys, "--alexander-cap", "2", "invariants", "s1^3")
    assert "alexander: absent" in out and "determinant: 3" in out
    monkeypatch.setenv("ADJ_ALEX_CAP", "2")
    _, out, _ = run(capsys, "invariants", "s1^3")
    assert "alexander: absent" in out


def test_fraction(capsys):
    assert run(capsys, "fraction", "s1^-3")[1].strip() == "S(3,2)"
    assert run(capsys, "fraction", "--cf", "3,-2")[1].strip() == "S(5,2)"
    assert run(capsys, "fraction", "--cf", "2")[0] == 2


def test_closure(capsys):
    code, out, _ = run(capsys, "closure", "s1^3")
    obj = json.loads(out)
    assert code == 0 and obj["components"] == 1 and obj["writhe"] == 3 and len(obj["pd"]) == 3


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--beta", "s1^3", "--m", "2", "--n", "-2")
    assert code == 0 and json.loads(out)["is_adjacency"]
    code, _, err = run(capsys, "verify", "--beta", "s1^3", "--m", "1", "--n", "1")
    assert code == 0 and "link" in err
    code, _, _ = run(capsys, "verify", "--beta", "s1^3", "--m", "1", "--n", "1", "--strict")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["verify", "--beta", "s1^0", "--m", "1", "--n", "1"],
    ["verify", "--beta", "s1^3", "--m", "0", "--n", "1"],
    ["verify", "--beta", "s1^2", "--m", "2", "--n", "2"],
    ["invariants", "s3"],
    ["invariants", "s2 s1"],
    ["parse", "[1,0]"],
    ["nosuchcmd"],
    ["obstruct", "unknot"],
    ["obstruct", "pair", "--genus", "1"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_even_beta_is_normalized(capsys):
    code, out, _ = run(capsys, "verify", "--beta", "s1^2 s2^-2", "--m", "2", "--n", "2")
    assert code == 0
    assert json.loads(out)["base_word"] == [[1, 2], [2, -1], [1, 1]]


def test_tower(capsys):
    code, out, _ = run(capsys, "tower", "--beta", "s1^3", "--depth", "2")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and [x["length"] for x in lines] == [1, 5]
    assert all(x["is_adjacency"] for x in lines)
    code, out, _ = run(capsys, "tower", "--beta", "s1^3", "--depth", "2", "--m", "1", "--n", "1")
    assert code == 1


def test_graph(capsys, tmp_path):
    bases = tmp_path / "bases.txt"
    bases.write_text("# trefoil\ns1^3\n\ns1^2 s2^-2\n")
    dot, js = tmp_path / "g.dot", tmp_path / "g.json"
    code, out, _ = run(capsys, "graph", "--bases", str(bases), "--m-range", "-2", "2",
                       "--n-range", "1", "2", "--dot", str(dot), "--json-out", str(js))
    summary = json.loads(out)
    assert code == 0
    assert summary["attempted"] == 16
    assert summary["edges"] == 4 and summary["failures"] == 12
    assert json.loads(js.read_text())["version"] == 1
    assert pydot.graph_from_dot_data(dot.read_text())
    assert run(capsys, "graph", "--bases", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "graph", "--bases", str(bases), "--m-range", "0", "0")[0] == 2


@pytest.mark.parametrize("argv, result", [
    (["obstruct", "unknot", "--genus", "1", "--n", "2"], "obstructed_genus"),
    (["obstruct", "unknot", "--genus", "2", "--n", "3",
      "--alexander", '["1*t^-1","-1*t^0","1*t^1"]'], "obstructed_alexander"),
    (["obstruct", "unknot", "--genus", "2", "--n", "3"], "not_obstructed"),
    (["obstruct", "pair", "--genus", "1", "--genus2", "0", "--n", "4"], True),
    (["obstruct", "fibered", "--genus", "0", "--genus2", "1", "--fibered"], True),
])
def test_obstruct(capsys, argv, result):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)["result"] == result


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "knotadj.cli", "fraction", "s1^3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "S(3,1)"
