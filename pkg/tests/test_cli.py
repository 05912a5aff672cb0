import io
import json
import subprocess
import sys

import pytest

from polytran.cli import main

DS2 = {"r": [1, 1], "R": [1, 1], "c": [1, 1], "C": [1, 1]}
SUB2 = {"r": [0, 0], "R": [1, 1], "c": [0, 0], "C": [1, 1]}
UNIFORM = [["1/2", "1/2"], ["1/2", "1/2"]]


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)
    return write


def run(*argv, env=None):
    out = io.StringIO()
    if env:
        with pytest.MonkeyPatch.context() as mp:
            for key, value in env.items():
                mp.setenv(key, value)
            code = main(list(argv), stdout=out)
    else:
        code = main(list(argv), stdout=out)
    text = out.getvalue()
    try:
        return code, json.loads(text)
    except json.JSONDecodeError:
        return code, text


def test_check_member_and_violation(files):
    spec = files("s.json", SUB2)
    code, doc = run("check", "--spec", spec, "--matrix", files("a.json", [[1, 0], [0, 0]]))
    assert code == 0 and doc["status"] == "ok" and doc["payload"]["is_integral"]
    code, doc = run("check", "--spec", spec, "--matrix", files("b.json", [[1, 1], [0, 0]]))
    assert code == 1 and doc["status"] == "violation"
    assert doc["payload"]["row_violations"] == [{"row": 0, "sum": "2", "bound": "max"}]


def test_feasible(files):
    code, doc = run("feasible", "--spec", files("s.json", DS2))
    assert code == 0 and doc["payload"] == {"feasible": True}
    code, doc = run("feasible", "--spec", files("t.json", {"r": [3, 1], "R": [3, 1], "c": [2, 2], "C": [2, 2]}))
    assert code == 1 and doc["status"] == "infeasible"


def test_extreme(files):
    spec = files("s.json", DS2)
    assert run("extreme", "--spec", spec, "--matrix", files("a.json", [[0, 1], [1, 0]]))[1]["payload"] == {"extreme": True}
    assert run("extreme", "--spec", spec, "--matrix", files("b.json", UNIFORM))[1]["payload"] == {"extreme": False}
    assert run("extreme", "--spec", spec, "--matrix", files("c.json", [[1, 1], [0, 0]]))[0] == 1


def test_decompose_uniform(files, tmp_path):
    out = tmp_path / "cert.json"
    code, doc = run("decompose", "--spec", files("s.json", DS2), "--matrix", files("a.json", UNIFORM),
                    "--out", str(out))
    assert code == 0
    assert doc["payload"] == {"terms": [{"weight": "1/2", "vertex": [["0", "1"], ["1", "0"]]},
                                        {"weight": "1/2", "vertex": [["1", "0"], ["0", "1"]]}]}
    assert json.loads(out.read_text()) == doc["payload"]


def test_verify_tampered_certificate(files):
    spec, A = files("s.json", DS2), files("a.json", UNIFORM)
    _, doc = run("decompose", "--spec", spec, "--matrix", A)
    code, ok = run("verify", "--spec", spec, "--matrix", A, "--cert", files("c.json", doc))
    assert code == 0 and ok["payload"] == {"valid": True, "terms": 2}
    doc["payload"]["terms"][1]["weight"] = "1/3"
    code, bad = run("verify", "--spec", spec, "--matrix", A, "--cert", files("d.json", doc))
    assert code == 1 and bad["status"] == "violation"
    assert "weights sum to 5/6" in bad["diagnostics"]


def test_vertices_json_lines(files):
    spec = files("s.json", SUB2)
    code, text = run("vertices", "--spec", spec)
    lines = text.splitlines()
    assert code == 0 and len(lines) == 7
    assert json.loads(lines[0]) == [["0", "0"], ["0", "0"]]
    big = files("big.json", {"r": [0] * 5, "R": [1] * 5, "c": [0] * 5, "C": [1] * 5})
    code, doc = run("vertices", "--spec", big)
    assert code == 2 and doc["status"] == "error"
    code, doc = run("vertices", "--spec", big, env={"POLYTRAN_CAP": "5"})
    assert code == 2
    code, text = run("vertices", "--spec", files("ds.json", {"r": [1] * 4, "R": [1] * 4, "c": [1] * 4, "C": [1] * 4}),
                     "--cap", "16")
    assert code == 0 and len(text.splitlines()) == 24


def test_solve(files):
    code, doc = run("solve", "--spec", files("s.json", DS2), "--cost", files("t.csv", "1,2\n2,1\n"))
    assert code == 0 and doc["payload"] == {"matrix": [["1", "0"], ["0", "1"]], "objective": "2"}
    code, doc = run("solve", "--spec", files("u.json", {"r": [3, 1], "R": [3, 1], "c": [2, 2], "C": [2, 2]}),
                    "--cost", files("v.csv", "1,2\n2,1\n"))
    assert code == 1 and doc["status"] == "infeasible"


def test_explain(files):
    spec = files("s.json", DS2)
    code, doc = run("explain", "--spec", spec, "--matrix", files("a.json", UNIFORM))
    assert code == 0
    payload = doc["payload"]
    assert payload["structure"]["kind"] == "even_cycle" and len(payload["structure"]["cells"]) == 4
    assert payload["plan"]["eps_plus"] == "1/2" and payload["plan"]["eps_minus"] == "1/2"
    code, doc = run("explain", "--spec", spec, "--matrix", files("b.json", [[1, 0], [0, 1]]))
    assert doc["payload"]["structure"] is None and doc["payload"]["extreme"]


def test_errors_exit_2(files):
    spec = files("s.json", DS2)
    code, doc = run("check", "--spec", spec, "--matrix", files("a.csv", "1,0\n0,zz\n"))
    assert code == 2 and "line 2" in doc["diagnostics"][0] and "zz" in doc["diagnostics"][0]
    code, doc = run("check", "--spec", spec, "--matrix", files("b.json", [[1, 0, 0]]))
    assert code == 2 and "1x3" in doc["diagnostics"][0] and "2x2" in doc["diagnostics"][0]
    code, doc = run("check", "--spec", files("bad.json", "{oops"), "--matrix", files("c.json", UNIFORM))
    assert code == 2 and "bad.json" in doc["diagnostics"][0]
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"], stdout=io.StringIO())
    assert info.value.code == 2


def test_pretty_and_decimal(files):
    spec, A = files("s.json", DS2), files("a.json", UNIFORM)
    code, text = run("--pretty", "decompose", "--spec", spec, "--matrix", A)
    assert code == 0 and text.startswith("status: ok") and "weight 1/2:" in text
    code, doc = run("--decimal", "3", "decompose", "--spec", spec, "--matrix", A)
    assert doc["inexact"] is True and doc["payload"]["terms"][0]["weight"] == "~0.500"


def test_decompose_verify_pipe(files):
    # the shell pipeline decompose | verify --cert -
    spec, A = files("s.json", DS2), files("a.json", [["1/3", "2/3"], ["2/3", "1/3"]])
    cmd = [sys.executable, "-m", "polytran"]
    first = subprocess.run(cmd + ["decompose", "--spec", spec, "--matrix", A],
                           capture_output=True, text=True, check=True)
    second = subprocess.run(cmd + ["verify", "--spec", spec, "--matrix", A, "--cert", "-"],
                            input=first.stdout, capture_output=True, text=True)
    assert second.returncode == 0, second.stdout
    assert json.loads(second.stdout)["payload"]["valid"]


def test_outputs_are_deterministic(files):
    spec, A = files("s.json", {"r": [0, 0, 0], "R": [1, 1, 1], "c": [0, 0, 0], "C": [1, 1, 1], "k": 2}), \
        files("a.json", [["1/2", "1/3", 0], [0, "1/3", 0], [0, 0, "5/6"]])
    first = run("decompose", "--spec", spec, "--matrix", A)
    assert first == run("decompose", "--spec", spec, "--matrix", A)
    assert first[0] == 0
