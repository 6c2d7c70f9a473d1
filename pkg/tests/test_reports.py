import json
from fractions import Fraction

import pytest

from circlelab.cyclotomic import CycSum
from circlelab.fields import FpPoly
from circlelab.reports import CheckResult, config_hash, emit_report, report_csv, report_json, to_jsonable


def sample():
    return [
        CheckResult("a", {"p": 3}, Fraction(1, 3), Fraction(1, 3), True),
        CheckResult("b", {"p": 5, "poly": FpPoly(5, [1, 2])}, CycSum.zeta_power(5, 1), float("-inf"), False, ["note"]),
    ]


def test_jsonable_forms():
    assert to_jsonable(Fraction(4, 2)) == 2
    assert to_jsonable(Fraction(1, 3)) == "1/3"
    assert to_jsonable(float("-inf")) == "-inf"
    assert to_jsonable(CycSum.from_int(3, -27)) == -27
    assert to_jsonable(CycSum.zeta_power(5, 1)) == {"zeta_coords": [0, 1, 0, 0], "p": 5}
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_report_is_deterministic():
    cfg = {"suite": "x", "p": 3}
    assert report_json(sample(), cfg) == report_json(sample(), dict(reversed(list(cfg.items()))))
    assert config_hash(cfg) == config_hash({"p": 3, "suite": "x"})


def test_report_content():
    doc = json.loads(report_json(sample(), {"suite": "x"}))
    assert doc["all_pass"] is False
    assert [r["pass"] for r in doc["results"]] == [True, False]
    assert doc["results"][1]["notes"] == ["note"]


def test_csv_header_and_rows():
    lines = report_csv(sample()).splitlines()
    assert lines[0] == "check,params,lhs,rhs,pass"
    assert len(lines) == 3 and lines[1].endswith(",true")


def test_emit_writes_both_files(tmp_path):
    j, c = emit_report(sample(), {"suite": "x"}, tmp_path, "x")
    assert j.read_text().startswith("{") and c.read_text().startswith("check,")


def test_empty_report_refused(tmp_path):
    with pytest.raises(ValueError):
        emit_report([], {}, tmp_path)
