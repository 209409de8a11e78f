"""Serialization: exact rationals, instance documents, committees, reports."""
from __future__ import annotations

import json
from fractions import Fraction as F

import pytest

from planecommittee.errors import InputError, ParseError, ZeroNormalError
from planecommittee.geometry import Point
from planecommittee.io import (
    RunReport,
    committee_to_json,
    format_rational,
    instance_to_dict,
    marked_mcs_to_dict,
    parse_committee_document,
    parse_instance,
    parse_origin_flag,
    parse_point,
    parse_rational,
    render_instance,
)
from planecommittee.polar import Committee

from conftest import ineq, pt


# --- rationals ----------------------------------------------------------------

@pytest.mark.parametrize(
    "value, expected",
    [
        (7, F(7)),
        (-3, F(-3)),
        ("0", F(0)),
        ("3/4", F(3, 4)),
        ("-3/4", F(-3, 4)),
        ("+5/10", F(1, 2)),
        ("  12/8 ", F(3, 2)),
        ("007", F(7)),
    ],
)
def test_parse_rational_accepts(value, expected):
    assert parse_rational(value) == expected


@pytest.mark.parametrize(
    "value",
    [1.5, 0.0, True, False, None, [1], {}, "3.5", "1e3", "3 / 4", "a/b",
     "1/0", "--3", "1/-2", ""],
)
def test_parse_rational_rejects(value):
    with pytest.raises(ParseError) as exc:
        parse_rational(value, where="spot")
    assert exc.value.data["field"] == "spot"
    assert "spot" in str(exc.value)


def test_format_parse_round_trip():
    for r in [F(0), F(7), F(-7), F(3, 4), F(-1, 1000000007), F(22, 7)]:
        assert parse_rational(format_rational(r)) == r


def test_parse_point():
    assert parse_point(["1/2", -3]) == pt(F(1, 2), -3)
    with pytest.raises(ParseError):
        parse_point(["1/2"])
    with pytest.raises(ParseError):
        parse_point("1/2,3")


def test_parse_origin_flag():
    assert parse_origin_flag("1/2, -3") == pt(F(1, 2), -3)
    with pytest.raises(ParseError):
        parse_origin_flag("1/2")
    with pytest.raises(ParseError):
        parse_origin_flag("1,2,3")
    with pytest.raises(ParseError):
        parse_origin_flag("0.5,1")


# --- instance documents ---------------------------------------------------------

def test_json_round_trip_exact(t1):
    origin = pt(F(1, 3), F(-2, 7))
    meta = {"name": "trial", "seed": 4}
    text = render_instance(t1, origin, meta, fmt="json")
    parsed = parse_instance(text)
    assert parsed.system == t1
    assert parsed.origin == origin
    assert parsed.metadata == meta
    assert parsed.name == "trial"


def test_text_round_trip_exact(p5):
    text = render_instance(p5, fmt="text")
    parsed = parse_instance(text)
    assert parsed.system == p5
    assert parsed.origin is None


def test_text_format_cannot_carry_origin(t1):
    with pytest.raises(InputError):
        render_instance(t1, origin=pt(0, 0), fmt="text")


def test_render_unknown_format(t1):
    with pytest.raises(InputError):
        render_instance(t1, fmt="yaml")


def test_text_instance_comments_and_nonstrict():
    text = "# a comment\n1 0 > 1\n\n 0 1/2 >= -3/4  # trailing\n"
    parsed = parse_instance(text)
    assert parsed.system.inequalities == (
        ineq(1, 0, 1),
        ineq(0, F(1, 2), F(-3, 4), strict=False),
    )


def test_text_instance_errors():
    with pytest.raises(ParseError) as exc:
        parse_instance("1 0 > 1\n1 0 < 2\n")
    assert exc.value.data["line"] == 2
    with pytest.raises(ParseError):
        parse_instance("# nothing but comments\n")
    with pytest.raises(ZeroNormalError) as zexc:
        parse_instance("1 0 > 1\n0 0 > 5\n")
    assert zexc.value.data["j"] == 2


def test_json_instance_errors():
    def doc(**kw):
        base = {"version": 1,
                "inequalities": [{"c": ["1", "0"], "b": "1"}]}
        base.update(kw)
        return json.dumps(base)

    with pytest.raises(ParseError):
        parse_instance(doc(version=2))
    with pytest.raises(ParseError):
        parse_instance(doc(inequalities=[]))
    with pytest.raises(ParseError):
        parse_instance(doc(inequalities=[{"c": ["1", "0"]}]))
    with pytest.raises(ParseError):
        parse_instance(doc(inequalities=[{"c": ["1", "0"], "b": "1",
                                          "op": ">"}]))
    with pytest.raises(ParseError):
        parse_instance(doc(inequalities=[{"c": ["1", "0"], "b": 0.5}]))
    with pytest.raises(ParseError):
        parse_instance(doc(inequalities=[{"c": ["1", "0"], "b": "1",
                                          "strict": "yes"}]))
    with pytest.raises(ParseError):
        parse_instance(doc(metadata=[1]))
    with pytest.raises(ZeroNormalError) as zexc:
        parse_instance(doc(inequalities=[{"c": ["1", "0"], "b": "1"},
                                         {"c": [0, "0"], "b": "1"}]))
    assert zexc.value.data["j"] == 2
    with pytest.raises(ParseError) as jexc:
        parse_instance('{"version": 1,\n  "inequalities": [}')
    assert jexc.value.data["line"] == 2
    with pytest.raises(ParseError):
        parse_instance("[1, 2]")


def test_instance_to_dict_strings_only(t1):
    doc = instance_to_dict(t1, origin=pt(F(1, 2), 0))
    for entry in doc["inequalities"]:
        assert all(isinstance(v, str) for v in entry["c"])
        assert isinstance(entry["b"], str)
    assert doc["origin"] == ["1/2", "0"]


# --- committee documents ---------------------------------------------------------

def test_committee_document_forms():
    K = Committee((pt(1, 2), pt(F(-1, 3), 0), pt(1, 2)))
    bare = json.dumps(committee_to_json(K))
    wrapped = json.dumps({"committee": committee_to_json(K)})
    report = json.dumps({"version": 1, "command": "x",
                         "committee": committee_to_json(K), "votes": [1]})
    for text in (bare, wrapped, report):
        assert parse_committee_document(text) == K


def test_committee_document_errors():
    with pytest.raises(ParseError):
        parse_committee_document("[]")
    with pytest.raises(ParseError):
        parse_committee_document('{"votes": [1]}')
    with pytest.raises(ParseError):
        parse_committee_document("{nope")
    with pytest.raises(ParseError):
        parse_committee_document('[["0.5", "1"]]')


# --- run reports -----------------------------------------------------------------

def _report(t1) -> RunReport:
    return RunReport(
        command="committee three",
        algorithm="consistent-triples",
        instance=instance_to_dict(t1),
        committee=Committee((pt(2, 0), pt(-1, 1), pt(2, 0))),
        votes=[2, 2, 2],
        marked_mcs=[marked_mcs_to_dict([1, 2], (1, 2), pt(2, 3))],
        oracle={"min_committee_size": 3, "q_max": 9, "matches": True},
        extra={"rounds": 1},
        timings={"total": 0.1234567},
    )


def test_report_json_shape_and_determinism(t1):
    rep = _report(t1)
    doc = rep.to_dict()
    assert doc["version"] == 1
    assert doc["command"] == "committee three"
    assert "timings" not in doc
    assert doc["committee"] == [["-1", "1"], ["2", "0"], ["2", "0"]]
    assert doc["votes"] == [2, 2, 2]
    assert doc["marked_mcs"][0]["determining_pair"] == [1, 2]
    assert rep.to_json() == _report(t1).to_json()
    assert "timings" in rep.to_dict(include_timings=True)
    with_t = rep.to_json(include_timings=True)
    assert json.loads(with_t)["timings"]["total"] == pytest.approx(0.123457)


def test_report_committee_reparses(t1):
    rep = _report(t1)
    assert parse_committee_document(rep.to_json()) == rep.committee
    echoed = parse_instance(json.dumps(rep.to_dict()["instance"]))
    assert echoed.system == t1


def test_report_text_rendering(t1):
    text = _report(t1).to_text()
    assert "committee (3 members):" in text
    assert "(x2)" in text
    assert "inequality 1: 2/3" in text
    assert "determining pair (1, 2)" in text
    assert "min_committee_size: 3" in text
    assert "rounds: 1" in text
    assert "time[" not in text
    assert "time[total]" in _report(t1).to_text(include_timings=True)
