#!/usr/bin/env python3
"""
Tests for ternary digit strings, row words, augmentation and the reduction
of General instances to full-width rows.
"""

import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modules.evaluation import eval_circuit, solutions_by_exhaustion
from modules.sat_model import (
    Assignment,
    EncodingError,
    Instance,
    InstanceKind,
    TernaryClause,
)
from modules.ternary_encoding import (
    augment_with_witness,
    classify,
    expand_to_simple,
    parse_ternary,
    render_ternary,
    row_clause,
    row_word,
)

SAT_5_3 = ["10221", "21122", "01012"]
SAT_4_3 = ["1021", "1112", "2011", "2221"]


def _instance(n, digit_rows):
    return Instance(n, [parse_ternary(d, n) for d in digit_rows])


@st.composite
def ternary_strings(draw):
    n = draw(st.integers(min_value=1, max_value=10))
    digits = draw(st.lists(st.sampled_from("012"), min_size=n, max_size=n))
    if all(d == "2" for d in digits):
        digits[draw(st.integers(0, n - 1))] = draw(st.sampled_from("01"))
    return n, "".join(digits)


def test_parse_known_clauses():
    # x4 or not x3 or x0
    assert parse_ternary("10221", 5) == TernaryClause(0b11001, 0b10001)
    # x3 or x0
    assert parse_ternary("21221", 5) == TernaryClause(0b01001, 0b01001)
    # x0
    assert parse_ternary("2221", 4) == TernaryClause(0b0001, 0b0001)
    print("✅ PASSED - known clauses parse")


def test_render_known_clauses():
    assert render_ternary(TernaryClause(0b01100, 0b01100), 5) == "21122"
    # not x4 or x3 or not x2 or x1
    assert render_ternary(TernaryClause(0b11110, 0b01010), 5) == "01012"
    print("✅ PASSED - known clauses render")


def test_listed_rows_round_trip():
    for digits in SAT_5_3:
        assert render_ternary(parse_ternary(digits, 5), 5) == digits
    for digits in SAT_4_3:
        assert render_ternary(parse_ternary(digits, 4), 4) == digits
    print("✅ PASSED - listed rows round trip byte for byte")


@given(ternary_strings())
@settings(max_examples=300)
def test_round_trip_property(case):
    n, digits = case
    assert render_ternary(parse_ternary(digits, n), n) == digits


def test_parse_errors():
    with pytest.raises(EncodingError):
        parse_ternary("102", 5)
    with pytest.raises(EncodingError):
        parse_ternary("10a21", 5)
    with pytest.raises(EncodingError):
        parse_ternary("22222", 5)
    print("✅ PASSED - parse errors")


def test_row_words():
    assert row_word(parse_ternary("101", 3), 3).word == 5
    assert row_word(parse_ternary("100", 3), 3).word == 4
    assert row_word(parse_ternary("000000", 6), 6).word == 0
    with pytest.raises(EncodingError):
        row_word(parse_ternary("1021", 4), 4)
    assert row_clause(5, 3) == parse_ternary("101", 3)
    print("✅ PASSED - row words")


def test_classify():
    assert classify(_instance(5, SAT_5_3)) is InstanceKind.GENERAL
    assert classify(Instance.from_rows(6, [0b000000, 0b000001, 0b111110, 0b011011])) is InstanceKind.SIMPLE
    assert classify(Instance(3, [])) is InstanceKind.SIMPLE
    print("✅ PASSED - classify")


def test_augment_simple_with_witness():
    ssat = Instance.from_rows(3, [5, 4])
    augmented = augment_with_witness(ssat, Assignment(5, 3))
    assert augmented.m == 3
    assert augmented.row_words() == (5, 4, 5)
    assert eval_circuit(augmented, Assignment(5, 3))
    assert ssat.m == 2
    print("✅ PASSED - fixed-point augmentation of a Simple instance")


def test_augment_general_with_digit_string():
    sat_5_3 = _instance(5, SAT_5_3)
    sat_5_4 = augment_with_witness(sat_5_3, "21221")
    assert sat_5_4.m == 4
    assert [render_ternary(c, 5) for c in sat_5_4] == SAT_5_3 + ["21221"]
    with pytest.raises(EncodingError):
        augment_with_witness(sat_5_3, Assignment(1, 3))
    print("✅ PASSED - General augmentation")


def test_expand_preserves_solutions():
    for n, rows in ((5, SAT_5_3), (4, SAT_4_3)):
        general = _instance(n, rows)
        simple = expand_to_simple(general)
        assert simple.is_simple
        assert solutions_by_exhaustion(simple) == solutions_by_exhaustion(general)
    print("✅ PASSED - expansion keeps the solution set")


def test_expand_row_count_and_order():
    general = _instance(3, ["122", "021"])
    simple = expand_to_simple(general)
    # 2^2 rows for the first clause, 2^1 for the second, each ascending
    assert simple.row_words() == (0b100, 0b101, 0b110, 0b111, 0b001, 0b011)
    simple_input = Instance.from_rows(3, [5])
    assert expand_to_simple(simple_input) is simple_input
    print("✅ PASSED - expansion order")


if __name__ == "__main__":
    print("=" * 70)
    print("TERNARY ENCODING TEST SUITE")
    print("=" * 70)
    try:
        test_parse_known_clauses()
        test_render_known_clauses()
        test_listed_rows_round_trip()
        test_round_trip_property()
        test_parse_errors()
        test_row_words()
        test_classify()
        test_augment_simple_with_witness()
        test_augment_general_with_digit_string()
        test_expand_preserves_solutions()
        test_expand_row_count_and_order()
        print("=" * 70)
        print("✅ ALL TESTS PASSED!")
        print("=" * 70)
    except AssertionError as e:
        print(f"❌ TEST FAILED: {e}")
        sys.exit(1)
