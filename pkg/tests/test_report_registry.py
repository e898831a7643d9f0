import csv
import io
import json
import math

from goldbach_explicit import registry
from goldbach_explicit.report import Check, Report, finding, upper_check


def test_upper_check_strictness():
    assert upper_check("x", 1.0, 1.0).passed
    assert not upper_check("x", 1.0, 1.0, strict=True).passed
    assert not upper_check("x", 0.9, 1.0, error=0.2).passed
    assert finding("x", 3.0).passed is None


def test_report_pass_logic_and_serialization():
    rep = Report("t", config={"b": 1, "a": 2})
    rep.add(upper_check("ok", 1.0, 2.0, anchor="anchor"))
    rep.add(finding("info", float("inf")))
    assert rep.passed and rep.failures == []
    d = json.loads(rep.to_json())
    assert d["schema"] == 1 and d["records"][1]["value"] == "inf" and d["records"][1]["pass"] is None
    assert rep.config_hash() == Report("u", config={"a": 2, "b": 1}).config_hash()
    rep.add(Check("bad", 3.0, 2.0, 0.0, False))
    assert not rep.passed and [c.name for c in rep.failures] == ["bad"]
    rows = list(csv.DictReader(io.StringIO(rep.to_csv())))
    assert [r["pass"] for r in rows] == ["True", "", "False"]
    text = rep.render("text")
    assert "[INFO] info" in text and text.endswith("overall: FAIL")


def test_registry_entries_are_finite_and_anchored():
    for name, c in registry.REGISTRY.items():
        assert c.name == name
        assert math.isfinite(c.value)
        assert c.anchor
    assert registry.value("log_2pi") == math.log(2 * math.pi)
