import json
import os
import subprocess
import sys

import pytest

from mobius3 import cli
from mobius3.pgl.scan import threads_hint


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eulerchar_all(capsys):
    code, out, _ = run(capsys, "eulerchar", "--q", "2", "--r", "2", "--method", "all")
    assert code == 0
    assert out.splitlines() == ["closed: -7", "brute: -7", "chain: -7"]
    code, out, _ = run(capsys, "eulerchar", "--q", "3", "--r", "13", "--format", "json")
    d = json.loads(out)
    assert list(d) == ["q", "r", "case_tag", "values", "agree"] and d["values"] == {"closed": 144}


def test_global_sum(capsys):
    code, out, _ = run(capsys, "check", "global-sum", "--symbolic")
    assert code == 0 and out == "residual: 0\n"
    code, out, _ = run(capsys, "check", "global-sum", "--p", "5")
    assert code == 0 and out == "residual: 0\n"


def test_invalid_p_writes_nothing(capsys, tmp_path):
    target = tmp_path / "t.json"
    code, out, err = run(capsys, "table4", "--p", "4", "--out", str(target))
    assert code == 2 and "odd prime" in err and not target.exists()


def test_budget_exit(capsys, tmp_path):
    target = tmp_path / "l.json"
    code, _, _ = run(capsys, "lattice", "--q", "5", "--out", str(target))
    assert code == 4 and not target.exists()


def test_bad_flags(capsys):
    assert run(capsys, "eulerchar", "--q", "2")[0] == 2
    assert run(capsys, "eulerchar", "--q", "6", "--r", "2")[0] == 2
    assert run(capsys, "classify", "--q", "2", "--mat", "1,2")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_lattice_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "lattice", "--q", "2", "--out", str(a))[0] == 0
    assert run(capsys, "lattice", "--q", "2", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    d = json.loads(a.read_text())
    assert list(d) == ["group", "classes", "a"]
    code, out, _ = run(capsys, "moebius", "--q", "2", "--format", "csv")
    assert out.splitlines()[:2] == ["order,size,normalizer_order,mu", "168,1,168,1"]


def test_big_integers_are_strings(capsys):
    code, out, _ = run(capsys, "hall", "--q", "2", "--n", "8")
    d = json.loads(out)
    assert isinstance(d["phi"], str) and int(d["phi"]) > 2 ** 53
    code, out, _ = run(capsys, "hall", "--q", "2", "--n", "2")
    assert json.loads(out)["phi"] == 19152


def test_table4_formats(capsys):
    code, out, _ = run(capsys, "table4", "--p", "3", "--format", "csv")
    rows = out.splitlines()
    assert rows[0] == "line,order,normalizer_order,class_size,mu" and len(rows) == 32
    assert rows[23] == "23,8,32,515088,-4"
    code, out, _ = run(capsys, "table4", "--symbolic")
    d = json.loads(out)
    assert d[22]["mu"] == "-1/2*q^1"


def test_field_group_classify(capsys):
    d = json.loads(run(capsys, "field", "--q", "8")[1])
    assert (d["p"], d["k"]) == (2, 3)
    assert run(capsys, "group", "--q", "4", "--order-only")[1] == "20160\n"
    d = json.loads(run(capsys, "classify", "--q", "8", "--mat", "1,0,1,0,1,0,0,0,1")[1])
    assert d["tag"] == "Elation"


def test_threads_env(monkeypatch):
    monkeypatch.setenv("MOBIUS3_THREADS", "3")
    assert threads_hint() == 3
    monkeypatch.setenv("MOBIUS3_THREADS", "junk")
    assert threads_hint() == 1


def test_verify_quick_negative(capsys, monkeypatch):
    t4 = sys.modules["mobius3.psl3.table4"]
    from mobius3.psl3.qpoly import q
    rows = [tuple(r) if r[0] != 23 else r[:5] + (1 - q / 2,) + r[6:] for r in t4._ROWS]
    monkeypatch.setattr(t4, "_ROWS", rows)
    from mobius3 import verify
    monkeypatch.setitem(verify.PROFILES, "quick", [("global-sum", verify.check_global_sum),
                                                    ("tables", verify.check_tables)])
    code, out, _ = run(capsys, "verify", "quick")
    assert code == 3 and "failed: global-sum" in out


def test_console_script():
    exe = os.path.join(os.path.dirname(sys.executable), "mobius3")
    cmd = [exe] if os.path.exists(exe) else [sys.executable, "-m", "mobius3.cli"]
    p = subprocess.run(cmd + ["check", "global-sum", "--symbolic"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "residual: 0\n"
