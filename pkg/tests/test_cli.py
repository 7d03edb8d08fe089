import io
import json
import subprocess
import sys
from collections import Counter

import pytest

from dethodge import cli
from dethodge.mhm import IteratedClass, MHMClass, ModuleClass, TwistedSimple, iterate, local_cohomology
from dethodge.weights import MatrixShape


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_lc_ex1_table():
    code, out, _ = run("lc", "--shape", "4", "4", "--module", "ic:4", "--support", "2", "--format", "table")
    assert code == 0
    assert out == "j  factors\n4  D_2 + D_1 + D_0\n6  D_1 + D_0\n8  D_0\n"


def test_lc_csv_header_and_rows():
    code, out, _ = run("lc", "--shape", "4", "4", "--module", "ox", "--support", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "j,r,mult"
    assert lines[1:] == ["4,2,1", "4,1,1", "4,0,1", "6,1,1", "6,0,1", "8,0,1"]


def test_lc_q_module():
    code, out, _ = run("lc", "--shape", "4", "4", "--module", "q:1", "--support", "0", "--format", "json")
    assert code == 0 and json.loads(out)["degrees"] == {"3": {"0": 1}, "5": {"0": 1}, "7": {"0": 1}}


def test_iterate_ex3_json():
    code, out, _ = run("iterate", "--shape", "4", "4", "--module", "ox", "--supports", "2", "0", "--format", "json")
    assert code == 0
    it = IteratedClass.from_json(json.loads(out))
    assert it == iterate(MatrixShape(4, 4), TwistedSimple(4), [2, 0])
    twists = {tuple(e["degrees"]): [(q["r"], q["twist2"] // 2) for q in e["qsummands"]] for e in json.loads(out)["entries"]}
    assert twists == {(4, 8): [(0, -4)], (4, 10): [(0, -5)], (4, 12): [(0, -6)], (6, 3): [(0, -3)],
                      (6, 5): [(0, -4)], (6, 7): [(0, -5)], (8, 0): [(0, -3)]}


def test_iterate_table():
    code, out, _ = run("iterate", "--shape", "4", "4", "--supports", "2", "0")
    assert code == 0 and "6,5      Q_0(-4)" in out.splitlines()


def test_mhm_json_round_trip():
    code, out, _ = run("mhm", "--shape", "7", "5", "--module", "ic:5", "--support", "3", "--format", "json")
    assert code == 0
    assert MHMClass.from_json(json.loads(out)) == local_cohomology(MatrixShape(7, 5), TwistedSimple(5), 3)


def test_mhm_table_weights():
    code, out, _ = run("mhm", "--shape", "4", "4", "--support", "2")
    assert code == 0
    assert out.splitlines()[1].split() == ["4", "Q_2(-1)", "22", "21", "20"]


def test_empty_mhm_json():
    code, out, _ = run("mhm", "--shape", "4", "4", "--module", "q:4", "--support", "2", "--format", "json")
    assert code == 0 and out == '{"degrees": {}, "shape": [4, 4]}\n'
    assert json.loads(out) == {"shape": [4, 4], "degrees": {}}


def test_genlevel():
    code, out, _ = run("genlevel", "--shape", "5", "3", "--module", "ic:2", "--support", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)["degrees"]
    assert [data[j]["generation_level"] for j in ("3", "5", "7", "9")] == [4, 6, 5, 4]
    assert [s["level"] for s in data["5"]["start_levels"]] == [3, 6]
    code, out, _ = run("genlevel", "--shape", "5", "3", "--module", "ic:2:1", "--support", "1", "--degree", "3", "--format", "csv")
    assert out.splitlines() == ["j,r,mult,start_level,generation_level", "3,1,1,5,5"]


def test_hodge_and_parallel_identical():
    argv = ["hodge", "--shape", "4", "4", "--support", "2", "--degree", "4", "--level", "3", "--format", "json"]
    a = run(*argv)
    b = run(*argv)
    c = run(*argv, "--parallel", "3")
    assert a[0] == 0 and a[1] == b[1] == c[1]
    data = json.loads(a[1])
    assert data["box"] == {"lo": -19, "hi": 4}
    assert data["count"] == len(data["weights"])


def test_dims_and_ideal():
    code, out, _ = run("dims", "--shape", "3", "3", "--support", "3", "--degree", "0", "--level", "0",
                       "--box", "0", "1", "--format", "json")
    assert code == 0 and json.loads(out)["dim"] == 1 + 9 + 9 + 1
    code, out, _ = run("ideal", "--shape", "2", "2", "--ideal", "rect:2:1", "--box", "0", "2", "--format", "csv")
    assert code == 0 and out.splitlines() == ["l1,l2,mult", "2,2,1", "2,1,1", "1,1,1"]
    code, out, _ = run("ideal", "--shape", "3", "3", "--ideal", "qpcheck:1:4", "--format", "json")
    assert code == 0 and json.loads(out)["ok"] is True


def test_verify_passes():
    code, out, _ = run("verify")
    assert code == 0 and out.rstrip().endswith("overall: PASS")
    assert "FAIL" not in out


def test_verify_extended_json():
    code, out, _ = run("verify", "--extended", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    extra = [c for c in data["checks"] if not c["gating"]]
    assert [c["name"] for c in extra] == ["symbolic_power_cross_check"] and extra[0]["ok"]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["lc", "--shape", "4", "4", "--module", "ic:x", "--support", "1"],
    ["lc", "--shape", "4", "4", "--module", "sym:2", "--support", "1"],
    ["lc", "--shape", "3", "4", "--support", "1"],
    ["lc", "--shape", "4", "4", "--module", "ic:2", "--support", "2"],
    ["lc", "--shape", "5", "4", "--module", "q:2", "--support", "1"],
    ["lc", "--shape", "4", "4"],
    ["hodge", "--shape", "4", "4", "--support", "2", "--degree", "4"],
    ["ideal", "--shape", "3", "3", "--ideal", "hodge:-1"],
    ["genlevel", "--shape", "4", "4", "--module", "q:2", "--support", "1"],
])
def test_domain_errors_exit_1(argv):
    code, out, err = run(*argv)
    assert code == 1 and out == "" and err.startswith("error:")


def test_odd_twist_exit_2(monkeypatch):
    bad = MHMClass(MatrixShape(4, 4), {3: ModuleClass(Counter({TwistedSimple(1, 1): 1}))})
    monkeypatch.setattr(cli, "local_cohomology", lambda *a: bad)
    code, out, err = run("mhm", "--shape", "4", "4", "--support", "2")
    assert code == 2 and out == "" and "internal inconsistency" in err


def test_failed_verify_exit_2(monkeypatch):
    from dethodge import verify
    monkeypatch.setattr(verify, "EX1_WEIGHTS", [0])
    code, out, _ = run("verify")
    assert code == 2 and "FAIL  ex1_weights" in out


def test_output_is_lf_only():
    for argv in (["lc", "--shape", "4", "4", "--support", "2", "--format", fmt] for fmt in ("table", "json", "csv")):
        assert "\r" not in run(*argv)[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dethodge", "lc", "--shape", "4", "4", "--module", "ic:4",
                           "--support", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("j  factors")
    proc = subprocess.run([sys.executable, "-m", "dethodge", "lc", "--shape", "2", "3"], capture_output=True, text=True)
    assert proc.returncode == 1
