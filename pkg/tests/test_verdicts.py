"""Interval enclosures, banded comparison, and verdict serialization."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumprod.verdicts import (
    GUARD_BAND,
    Enclosure,
    Verdict,
    compare,
    exp_of,
    format_fraction_30,
    format_verdict_line,
    log_of,
    power_of,
    unmet,
    verdict_from_compare,
    verdict_to_json,
)

F = Fraction


# --- Enclosure arithmetic -----------------------------------------------------


def test_enclosure_basic():
    e = Enclosure(F(1, 3), F(1, 2))
    assert e.lo == F(1, 3) and e.hi == F(1, 2)
    assert e.mid == F(5, 12)
    assert e.width == F(1, 6)


def test_enclosure_rejects_inverted():
    with pytest.raises(ValueError):
        Enclosure(F(2), F(1))


def test_enclosure_add_sub():
    a = Enclosure(F(1), F(2))
    b = Enclosure(F(-1), F(3))
    assert (a + b).lo == F(0) and (a + b).hi == F(5)
    assert (a - b).lo == F(-2) and (a - b).hi == F(3)
    assert (5 + a).lo == F(6)
    assert (-a).lo == F(-2) and (-a).hi == F(-1)


def test_enclosure_mul_corner_hull():
    a = Enclosure(F(-2), F(3))
    b = Enclosure(F(-1), F(4))
    prod = a * b
    corners = [F(-2) * F(-1), F(-2) * F(4), F(3) * F(-1), F(3) * F(4)]
    assert prod.lo == min(corners) and prod.hi == max(corners)


def test_enclosure_division():
    a = Enclosure(F(1), F(2))
    b = Enclosure(F(2), F(4))
    q = a / b
    assert q.lo == F(1, 4) and q.hi == F(1)
    with pytest.raises(ZeroDivisionError):
        a / Enclosure(F(-1), F(1))
    assert (1 / b).lo == F(1, 4)


rats = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@given(rats, rats, rats, rats)
@settings(max_examples=60)
def test_enclosure_contains_pointwise_products(a, b, c, d):
    x = Enclosure(min(a, b), max(a, b))
    y = Enclosure(min(c, d), max(c, d))
    # any representatives of the two intervals have their product inside the hull
    prod = x * y
    for u in (x.lo, x.hi):
        for v in (y.lo, y.hi):
            assert prod.lo <= u * v <= prod.hi


# --- transcendental enclosures ---------------------------------------------------


def test_log_exp_enclose_known_points():
    l2 = log_of(F(2))
    assert F(6931471, 10**7) < l2.lo and l2.hi < F(6931472, 10**7)
    assert l2.width < F(1, 10**50)
    e1 = exp_of(F(1))
    assert F(27182818, 10**7) < e1.lo and e1.hi < F(27182819, 10**7)
    assert log_of(F(1)).lo <= 0 <= log_of(F(1)).hi


def test_log_requires_positive():
    with pytest.raises(ValueError):
        log_of(F(0))
    with pytest.raises(ValueError):
        log_of(F(-3))


def test_log_of_enclosure_monotone_hull():
    e = log_of(Enclosure(F(2), F(8)))
    assert e.lo < log_of(F(2)).hi and e.hi > log_of(F(8)).lo
    assert e.lo <= log_of(F(3)).lo and log_of(F(3)).hi <= e.hi


def test_power_integer_exponent_exact():
    p = power_of(F(3, 2), 3)
    assert p.lo == p.hi == F(27, 8)
    p = power_of(F(2), -2)
    assert p.lo == p.hi == F(1, 4)


def test_power_fractional_exponent_encloses_root():
    p = power_of(2, F(1, 2))
    # contains sqrt(2)
    assert p.lo * p.lo <= F(2) <= p.hi * p.hi
    assert p.width < F(1, 10**40)


def test_power_zero_base():
    assert power_of(0, 3).lo == 0
    with pytest.raises(ValueError):
        power_of(0, F(1, 2))


@given(st.fractions(min_value=F(1, 8), max_value=40, max_denominator=10))
@settings(max_examples=40, deadline=None)
def test_exp_log_roundtrip(q):
    back = exp_of(log_of(q))
    assert back.lo <= q <= back.hi
    assert back.width / q < F(1, 10**40)


# --- comparison ------------------------------------------------------------------


def test_compare_exact_operands():
    assert compare(F(1), F(2), "<") == "true"
    assert compare(F(2), F(2), "<") == "false"
    assert compare(F(2), F(2), "<=") == "true"
    assert compare(3, 3, "==") == "true"
    assert compare(3, 4, ">=") == "false"


def test_compare_enclosures_clear_margin():
    lo = Enclosure(F(1), F(1) + F(1, 10**12))
    hi = Enclosure(F(2), F(2) + F(1, 10**12))
    assert compare(lo, hi, "<") == "true"
    assert compare(hi, lo, "<") == "false"
    assert compare(hi, lo, ">") == "true"


def test_compare_inside_guard_band_is_inconclusive():
    a = Enclosure(F(1), F(1))
    b = Enclosure(F(1) + GUARD_BAND / 2, F(1) + GUARD_BAND / 2)
    assert compare(a, b, "<") == "inconclusive"
    assert compare(a, b, "==") == "true"  # equality means: within the band


def test_compare_rejects_unknown_relation():
    with pytest.raises(ValueError):
        compare(F(1), F(2), "!=")


# --- Verdict objects ---------------------------------------------------------------


def test_verdict_status_consistency():
    with pytest.raises(ValueError):
        Verdict(
            name="x",
            hypothesis_met=False,
            lhs=F(1),
            rhs=F(2),
            holds="true",
            witness={},
        )
    with pytest.raises(ValueError):
        Verdict(
            name="x",
            hypothesis_met=True,
            lhs=F(1),
            rhs=F(2),
            holds="hypothesis-not-met",
            witness={},
        )


def test_verdict_from_compare_and_unmet():
    v = verdict_from_compare("demo", F(1), F(2), "<", {"k": 1})
    assert v.holds == "true" and v.hypothesis_met
    u = unmet("demo", None, F(2), {"reason": "empty"})
    assert u.holds == "hypothesis-not-met" and not u.hypothesis_met


# --- formatting and JSON --------------------------------------------------------------


def test_format_fraction_30_deterministic():
    s = format_fraction_30(F(1, 3))
    assert s.startswith("0.3333333333")
    assert len(s.split(".")[1]) <= 30
    assert format_fraction_30(F(2)) == "2"


def test_format_verdict_line_shape():
    v = verdict_from_compare("demo.check", 3, 4, "<", {"b": 2, "a": 1})
    line = format_verdict_line(v)
    assert line.startswith("demo.check true 3 4 ")
    # witness keys appear sorted
    assert line.index("a=1") < line.index("b=2")


def test_verdict_json_roundtrip_exact_values():
    v = verdict_from_compare(
        "demo.exact",
        F(1, 3),
        Enclosure(F(1), F(2)),
        "<",
        {"count": 7, "ratio": F(22, 7)},
    )
    blob = json.loads(json.dumps(verdict_to_json(v)))
    assert blob["name"] == "demo.exact"
    assert blob["holds"] == "true"
    assert blob["lhs"] == {"kind": "rat", "num": "1", "den": "3"}
    assert blob["rhs"]["kind"] == "real"
    assert blob["witness"]["ratio"] == {"kind": "rat", "num": "22", "den": "7"}
    assert blob["witness"]["count"] == {"kind": "int", "value": "7"}


def test_verdict_json_witness_key_order():
    v = verdict_from_compare("demo", 1, 2, "<", {"z": 1, "a": 2})
    keys = list(verdict_to_json(v)["witness"].keys())
    assert keys == sorted(keys)
