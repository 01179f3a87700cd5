import json
from io import StringIO

import pytest

from fuzzyreason.cli import main

SMALL = {"universe": {"labels": ["1", "2", "3", "4", "5"]}}


def run(*argv):
    out = StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


def test_run_script(tmp_path):
    p = write(tmp_path, "s.fstds", "A := Fset(0.5/a)\nPrint(A)\nEND\n")
    assert run("run", p) == (0, "Fset(0.5/a)\n")
    assert run("run", write(tmp_path, "e.fstds", "")) == (0, "")


def test_run_reports_script_errors(tmp_path, capsys):
    p = write(tmp_path, "bad.fstds", "A := Fset(1.5/a)\n")
    code, _ = run("run", p)
    assert code == 1
    assert "line 1" in capsys.readouterr().err


def test_gmp_worked_example(tmp_path):
    doc = {"universes": {"U": SMALL["universe"]},
           "A": {"universe": "U", "grades": [1, 0.5, 0, 0, 0]},
           "B": {"universe": "U", "grades": [0, 0, 0, 0.5, 1]},
           "observed": {"universe": "U", "grades": [1, 0.4, 0.2, 0, 0]}}
    code, out = run("infer", "gmp", write(tmp_path, "g.json", doc), "--implication", "Rm")
    assert code == 0
    assert out.splitlines()[0] == "result: 0.4/1 + 0.4/2 + 0.4/3 + 0.5/4 + 1/5"


def test_multi_with_defuzzification(tmp_path):
    x = {"coords": list(range(11))}
    doc = {"universes": {"X": x, "Y": x},
           "rules": [{"if": {"x": {"universe": "X", "grades": [0, .5, 1, .75, .5, .25, 0, 0, 0, 0, 0]}},
                      "then": {"universe": "Y", "grades": [0, 0, 0, 0, 0, 0, 0, .5, 1, .5, 0]}}],
           "inputs": {"x": 3}}
    code, out = run("infer", "multi", write(tmp_path, "m.json", doc), "--defuzz", "centre")
    lines = out.splitlines()
    assert code == 0
    assert lines[1] == "rule 1: strength 0.750000 area 1.750000"
    assert lines[2] == "centre: 8.000000"


def test_minimize_and_analyze():
    assert run("minimize", "x1*~x1*x2*~x3 + x1*~x1*x2*~x4 + x1*~x1*x2*x3*x4") == (0, "x1*~x1*x2\n")
    code, out = run("analyze", "~x*~y + x*y*~z", "--class", "j", "--json")
    assert code == 0 and len(json.loads(out)["lower"]) == 2
    code, out = run("analyze", "x*y", "--class", "3", "--top")
    assert code == 0 and "upper" not in out


def test_synthesize(tmp_path):
    doc = {"names": ["x", "y"], "class": "n",
           "systems": [[{"var": "x", "op": ">=", "bound": "a_{n-1}"}, {"var": "y", "op": "<=", "bound": "1 - a_{n-1}"}]]}
    assert run("synthesize", write(tmp_path, "s.json", doc)) == (0, "x*~y\n")


def test_grammar_commands(tmp_path):
    g = write(tmp_path, "g.txt", "S -> A B @ 1\nA -> a @ 1\nA -> a A B @ 0.9\nB -> b @ 1\n")
    code, out = run("grammar", "derive", g, "aabb")
    assert code == 0 and out.splitlines()[0] == "grade: 0.9"
    assert run("grammar", "derive", g, "ba") == (0, "none\n")
    code, out = run("grammar", "noun", "very young", "--at", 25, 30)
    assert out == "25: 1.000000\n30: 0.250000\n"
    code, out = run("grammar", "tree")
    assert out.splitlines()[0] == "not quite young and not quite quite old"
    assert run("grammar", "noun")[0] == 1


def test_tables_csv():
    code, out = run("tables", "--which", "ponens", "--grid-n", 100)
    assert code == 0
    header, first = out.splitlines()[:2]
    assert header.split(",")[:3] == ["table", "kind", "modifier"]
    assert first.startswith("ponens,Rm,identity,0.0,0.500000,")
    code, out = run("tables", "--which", "syllogism", "--format", "markdown", "--syllogism-grid-n", 21)
    assert code == 0 and out.startswith("|")


def test_hedge_and_defuzz(tmp_path):
    s = write(tmp_path, "s.json", {"universe": {"labels": ["1", "2", "3"]}, "grades": [0.64, 0.25, 0.81]})
    assert run("hedge", "dil", s) == (0, "0.8/1 + 0.5/2 + 0.9/3\n")
    c = write(tmp_path, "c.json", {"universe": {"coords": [-2, -1, 0, 1, 2, 3]},
                                   "grades": [0.4, 0.8, 0.6, 0.8, 0.8, 0.2]})
    assert run("defuzz", "bisector", c) == (0, "0.500000\n")


@pytest.mark.parametrize("argv", [["nosuch"], ["defuzz", "centre", "/nonexistent.json"],
                                  ["minimize", "x1 +"], ["infer", "gmp"]])
def test_user_errors_exit_one(argv):
    assert run(*argv)[0] == 1
