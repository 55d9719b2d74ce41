import io
import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chainstab.cli import SCHEMA_VERSION, decode, encode, parse_report, render, run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, _ = invoke(*argv)
    assert code == 0
    return parse_report(out)


def test_nilpotent_report():
    rep = report("nilpotent", "--rank", "2", "--degree", "1", "--genus", "2", "--format", "json")
    assert rep["schema_version"] == SCHEMA_VERSION and rep["command"] == "nilpotent"
    res = rep["result"]
    assert res["count"] == 2 and res["exact"] is True and res["expected_dimension"] == 5
    assert [lvl["weight"] for lvl in res["weight_levels"]] == [2, 0]
    assert res["types"][1]["higgs_degrees"] == [0, 1]


def test_triple_report_uses_rational_strings():
    code, out, _ = invoke("triple", "--ranks", "2,1", "--degrees", "1,0")
    raw = json.loads(out)["result"]
    assert raw["alpha_min"] == "1/2" and raw["alpha_max"] == "2"
    assert report("triple", "--ranks", "1,1", "--degrees", "2,0")["result"]["alpha_max"] == math.inf


def test_negative_decision_is_success():
    rep = report("check", "--ranks", "1,1", "--degrees", "0,1", "--alpha", "3")
    assert rep["result"]["c0"] == [{"i": 1, "margin": -1, "holds": False}]
    assert rep["result"]["all_hold"] is False
    rep = report("decide", "--ranks", "2,1", "--degrees", "1,0", "--alpha", "3")
    assert rep["certificates"] == [{"tag": "C2(0,1)", "margin": Fraction(-1, 6)}]


def test_negative_values_on_the_command_line():
    rep = report("check", "--ranks", "1,1", "--degrees", "-1,-2", "--alpha", "3", "--genus", "2")
    assert rep["inputs"]["degrees"] == [-1, -2] and rep["result"]["admissible"] is True
    rep = report("check", "--ranks", "1,1", "--degrees=-1,-2", "--alpha", "2", "--genus", "2")
    assert rep["result"]["admissible"] is False and rep["result"]["admissible_closure"] is True


def test_region_walls_and_segments():
    rep = report("region", "--ranks", "2,1", "--degrees", "1,0", "--genus", "2")
    assert [h["tag"] for h in rep["result"]["halfspaces"]] == ["C1(0)", "C2(0,1)", "AboveHiggs(1)"]
    rep = report("walls", "--ranks", "1,1", "--degrees", "3,0", "--segment", "2", "4")
    crit = rep["result"]["critical_values"]
    assert [c["t"] for c in crit] == [Fraction(1, 2)] and crit[0]["alpha"] == [3]
    box1 = report("walls", "--ranks", "1,1", "--degrees", "3,0", "--box", "2", "4")
    box2 = report("walls", "--ranks", "1,1", "--degrees", "3,0", "--box", "2,4")
    assert box1["result"] == box2["result"] and len(box1["result"]["walls"]) == 2
    rep = report("walls", "--ranks", "1,1", "--degrees", "3,0", "--at", "3", "--merge")
    assert rep["result"]["critical"] is True and len(rep["result"]["walls"]) == 1


def test_upq_chi_and_scan():
    rep = report("upq", "--p", "1", "--q", "1", "--a", "0", "--b", "0", "--genus", "2")
    assert rep["result"]["nonempty"] is True and rep["result"]["connected"] is True
    rep = report("chi", "--source-ranks", "0,1", "--source-degrees", "0,0",
                 "--target-ranks", "1,0", "--target-degrees", "0,0")
    assert rep["result"]["chi"] == 1
    rep = report("chi-scan", "--rank-bound", "2", "--degree-bound", "3", "--r-max", "2")
    assert rep["result"]["violations"] == []


@pytest.mark.parametrize("argv,code", [
    (["check", "--ranks", "1", "--degrees", "x"], 2),
    (["check", "--ranks", "1,1", "--degrees", "0"], 2),
    (["check", "--ranks", "1,1", "--degrees", "0,0", "--alpha", "1/0"], 2),
    (["walls", "--ranks", "1,1", "--degrees", "3,0", "--segment", "2", "2"], 2),
    (["walls", "--ranks", "1,1", "--degrees", "3,0", "--box", "2,3,4"], 2),
    (["chi-scan", "--rank-bound", "-1", "--degree-bound", "1", "--r-max", "1"], 2),
    (["bogus"], 2),
    (["decide", "--ranks", "1,1", "--degrees", "0,-1", "--alpha", "2"], 3),
    (["decide", "--ranks", "1,1", "--degrees", "0,-1", "--at-higgs", "--genus", "1"], 3),
    (["nilpotent", "--rank", "2", "--degree", "1", "--genus", "1"], 3),
    (["upq", "--p", "1", "--q", "1", "--a", "0", "--b", "0", "--genus", "1"], 3),
])
def test_exit_codes(argv, code):
    got, out, err = invoke(*argv)
    assert got == code and out == ""
    assert err


def test_quiet_silences_diagnostics():
    code, _, err = invoke("nilpotent", "--rank", "2", "--degree", "1", "--genus", "1", "--quiet")
    assert code == 3 and err == ""


def test_overflow_exit_code(monkeypatch):
    from chainstab import cli
    from chainstab.errors import EnumerationOverflowError

    def boom(*a, **k):
        raise EnumerationOverflowError("too big")

    monkeypatch.setattr(cli, "component_report", boom)
    assert invoke("nilpotent", "--rank", "9", "--degree", "1")[0] == 4


def test_other_formats():
    _, out, _ = invoke("triple", "--ranks", "2,1", "--degrees", "1,0", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == '"key","value"' and '"result.alpha_min","1/2"' in lines
    _, out, _ = invoke("triple", "--ranks", "2,1", "--degrees", "1,0", "--format", "plain")
    assert "result.alpha_max = 2" in out.splitlines()


def test_no_floats_are_serialized():
    with pytest.raises(TypeError):
        encode(0.5)
    assert encode(math.inf) == "inf"


values = st.recursive(
    st.one_of(st.integers(), st.booleans(), st.fractions(), st.just(math.inf),
              st.text(alphabet="abcxyz_")),
    lambda inner: st.lists(inner, max_size=3) | st.dictionaries(st.text("abc"), inner, max_size=3),
    max_leaves=10,
)


@given(values)
def test_json_round_trip(value):
    restored = decode(json.loads(render({"v": value}, "json")))["v"]

    assert restored == value


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "chainstab", "triple", "--ranks", "2,1",
                           "--degrees", "1,0"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert parse_report(proc.stdout)["result"]["alpha_min"] == Fraction(1, 2)
