import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from arralg import cli

ROOT = Path(__file__).resolve().parents[1]
INST = ROOT / "instances"


def run(*args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([sys.executable, "-m", "arralg.cli", *args], capture_output=True, text=True,
                          env=e, cwd=ROOT, timeout=600)


def call(capsys, *args):
    code = cli.main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_generic_3_5(capsys):
    code, out, _ = call(capsys, "analyze", str(INST / "generic_3_5.json"), "--expect-paper")
    rep = json.loads(out)
    assert code == 0
    assert rep["r_indeg"] == 3 and rep["regularity"] == 6 and rep["satiety"] == 6 and rep["depth"] == 0
    assert all(e["ok"] for e in rep["expectations"])
    assert "timings" not in rep


def test_analyze_char2(capsys):
    code, out, _ = call(capsys, "analyze", str(INST / "char2.json"), "--field", "F2", "--expect-paper")
    rep = json.loads(out)
    assert code == 0
    assert rep["f_in_Jf"] is False
    assert rep["betti"] == {"0,3": 3, "1,4": 1, "1,5": 1}


def test_analyze_free(capsys):
    code, out, _ = call(capsys, "analyze", str(INST / "free_xyzxy.json"), "--expect-paper")
    rep = json.loads(out)
    assert code == 0 and rep["free"] is True and rep["rees_ci"] is True and rep["r_indeg"] == 1


def test_conjectures_batch(capsys):
    code, out, _ = call(capsys, "conjectures", "--random", "3", "5", "4", "7",
                        str(INST / "coloop_xyxyz.json"), str(INST / "char2.json"), "--expect-paper")
    rep = json.loads(out)
    assert code == 0
    assert len(rep["instances"]) == 6
    assert all(e["ok"] for e in rep["expectations"])


def test_forms_command(capsys):
    code, out, _ = call(capsys, "forms", str(INST / "fermat_pair.json"), "--expect-paper")
    assert code == 0
    assert all(e["ok"] for e in json.loads(out)["expectations"])


def test_gb_command(capsys):
    code, out, _ = call(capsys, "gb", "x-y", "y-z", "--order", "lex")
    assert code == 0
    assert sorted(json.loads(out)["basis"]) == ["x - z", "y - z"]


def test_pretty_output(capsys):
    code, out, _ = call(capsys, "gb", "x^2", "x*y", "--pretty")
    assert code == 0
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_parse_error_has_location(tmp_path, capsys):
    p = tmp_path / "bad.json"
    text = '{"n": 3, "forms": ["x", "y", "z", "x+*y"]}'
    p.write_text(text)
    code, out, err = call(capsys, "analyze", str(p))
    assert code == 1 and out == ""
    assert f"bad.json:1:{text.index('*') + 1}:" in err


def test_bad_json_reports_position(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 3,\n "forms": [}')
    code, _, err = call(capsys, "analyze", str(p))
    assert code == 1 and ":2:" in err


def test_budget_refusal(capsys):
    code, _, err = call(capsys, "conjectures", "--random", "5", "9", "1", "0")
    assert code == 1 and "budget" in err


def test_mismatch_exit_code(capsys):
    args = cli.build_parser().parse_args(["gb", "x"])
    stages = cli.Stages({s: 0 for s in cli.STAGES})
    bad = [{"check": "demo", "expected": 1, "observed": 2, "ok": False}]
    assert cli._finish({}, bad, args, stages) == 2
    capsys.readouterr()


def test_timeout_exit_code():
    res = run("analyze", str(INST / "generic_3_5.json"), env={"ARRALG_TIMEOUT_GB": "0.05"})
    assert res.returncode == 3 and "timeout" in res.stderr


def test_output_is_byte_identical():
    a = run("analyze", str(INST / "generic_3_4.json"))
    b = run("analyze", str(INST / "generic_3_4.json"))
    assert a.returncode == 0 and a.stdout == b.stdout


def test_timings_opt_in(capsys):
    code, out, _ = call(capsys, "gb", "x", "--timings")
    assert "timings" in json.loads(out)
