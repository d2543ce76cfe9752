import io
import json
import os

import pytest

from curveforge.cli import COMMANDS, EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_MATH, EXIT_OK, EXIT_USAGE, run
from curveforge.curve import family_catalog
from curveforge.data import arc_text
from curveforge.gf import field_of_order


@pytest.fixture
def files(tmp_path):
    arc3 = tmp_path / "k0_3.arc"
    arc3.write_text(arc_text("q7_k0_3"))
    arc2 = tmp_path / "k0_2.arc"
    arc2.write_text(arc_text("q7_k0_2"))
    f4 = field_of_order(4)
    h1 = tmp_path / "h1.curve"
    h1.write_text(family_catalog("hermitian", f4).to_file())
    h2 = tmp_path / "h2.curve"
    h2.write_text(family_catalog("hermitian_fermat", f4).to_file())
    return {"arc3": str(arc3), "arc2": str(arc2), "h1": str(h1), "h2": str(h2), "dir": tmp_path}


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text.startswith("{") else text)


def test_points_fermat():
    code, rep = call("points", "--family", "fermat", "--q", "7", "--params", "1,1,5")
    assert code == EXIT_OK and rep["result"]["N"] == 36
    assert rep["command"] == "points" and "wall_time" in rep


def test_nu_q():
    code, rep = call("nu-q", "--q", "9")
    assert code == EXIT_OK and rep["result"]["nu"] == 2


def test_verify_paper_q5():
    code, rep = call("verify-paper", "--q", "5", "--criteria", "1", "--criteria", "3", "--criteria", "6")
    assert code == EXIT_OK
    assert rep["checks"] and all(c["pass"] for c in rep["checks"])


def test_every_command_runs(files, tmp_path):
    gen = tmp_path / "g.gen"
    code, rep = call("code", "--arc", files["arc3"])
    gen.write_text(rep["result"]["generator"])
    mat = tmp_path / "m.txt"
    mat.write_text("1 2 3\n3 4 5\n")
    invocations = {
        "points": ["--family", "conic", "--q", "5"],
        "points-ext": ["--family", "conic", "--q", "5", "--ext", "2"],
        "spectrum": ["--arc", files["arc3"]],
        "point-type": ["--arc", files["arc2"], "--point", "(1:5:2)"],
        "zset": ["--family", "fermat", "--q", "5", "--params", "1,1,3"],
        "sziklai-check": ["--family", "homma_q", "--q", "5"],
        "arc-import": ["--arc", files["arc3"]],
        "arc-export": ["--family", "conic", "--q", "7"],
        "code": ["--arc", files["arc2"]],
        "weights": ["--gen", str(gen)],
        "weight-check": ["--gen", str(gen)],
        "equiv": [files["h1"], files["h2"]],
        "nu-q": ["--q", "5"],
        "frobenius": ["--curve", files["h1"]],
        "sv-bound": ["--family", "fermat", "--q", "7", "--params", "1,2,4"],
        "inflections": ["--curve", files["h2"]],
        "noether": ["--preset", "q7"],
        "solve": ["--matrix", str(mat), "--q", "7"],
        "verify-paper": ["--q", "5", "--criteria", "8"],
    }
    assert set(invocations) == set(COMMANDS)
    for name, extra in invocations.items():
        code, rep = call(name, *extra)
        assert code == EXIT_OK, name
        assert rep["command"] == name


def test_specific_results(files):
    _, rep = call("point-type", "--arc", files["arc2"], "--point", "(1:5:2)")
    assert rep["result"]["type"] == "6^3 5^2 3^2 2^1"
    _, rep = call("equiv", files["arc3"], files["arc2"])
    assert rep["result"]["equivalent"] is False
    _, rep = call("equiv", files["h1"], files["h2"])
    assert len(rep["result"]["witness"]) == 9
    _, rep = call("noether", "--preset", "q7")
    assert rep["result"]["verdict"] == "unique" and rep["result"]["b_vanishes"]
    _, rep = call("solve", "--system", "high-k0", "--q", "7")
    assert rep["result"]["solution"] == ["45", "-36", "48"]
    _, rep = call("frobenius", "--curve", files["h1"])
    assert rep["result"]["classical"] is False
    _, rep = call("inflections", "--curve", files["h2"])
    assert len(rep["result"]["inflections"]) == 9


def test_exit_codes(files, tmp_path):
    assert call("no-such-command")[0] == EXIT_USAGE
    assert call("points")[0] == EXIT_USAGE
    bad = tmp_path / "bad.arc"
    bad.write_text("7 3\n(1:0:0)\n")
    assert call("spectrum", "--arc", str(bad))[0] == EXIT_INPUT
    assert call("spectrum", "--arc", str(tmp_path / "missing.arc"))[0] == EXIT_INPUT
    assert call("points", "--family", "conic", "--q", "49", "--cap", "16")[0] == EXIT_CAP
    assert call("sv-bound", "--curve", files["h1"])[0] == EXIT_MATH


def test_failed_check_exit_code(tmp_path):
    gen = tmp_path / "g.gen"
    gen.write_text("3 3 2 5\n1 0 0\n0 1 0\n0 0 1\n")
    code, rep = call("weight-check", "--gen", str(gen))
    assert code == EXIT_FAIL


def test_deterministic_and_csv(files, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run(["verify-paper", "--q", "5", "--criteria", "9", "--seed", "3", "--out", str(out)]) == EXIT_OK
    strip = lambda p: {k: v for k, v in json.loads(p.read_text()).items() if k != "wall_time"}
    assert strip(a) == strip(b)
    code, text = call("spectrum", "--arc", files["arc3"], "--format", "csv")
    assert code == EXIT_OK and text.splitlines()[0] == "kind,name,expected,got,pass"


def test_cap_flag_does_not_leak(monkeypatch):
    monkeypatch.delenv("CURVEFORGE_CAP", raising=False)
    assert call("points", "--family", "conic", "--q", "49", "--cap", "16")[0] == EXIT_CAP
    assert "CURVEFORGE_CAP" not in os.environ
