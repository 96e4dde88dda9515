#!/usr/bin/env python3
"""
Tests for result-object serialization and witness re-verification.
"""

import json
import sys

import pytest

from modules.classical_solvers import solve_linked, solve_probabilistic
from modules.instance_generators import blocked_board
from modules.json_utils import dumps, loads_result, verdict_to_dict, witness_from_result
from modules.sat_formats import read_text, write_text
from modules.sat_model import FormatError, Instance


def test_row_verdict_document():
    instance = read_text("ssat 3 2\n101\n100\n")
    document = verdict_to_dict(solve_linked(instance), instance)
    assert document["status"] == "sat"
    assert document["witness"] == "101"
    assert document["source"] == "row"
    assert document["counters"]["rows_read"] == 1
    assert document["augmented_rows"] == 2
    assert json.loads(dumps(document)) == document
    print("✅ PASSED - row verdict serializes")


def test_residual_verdict_counts_augmented_row():
    instance = Instance.from_rows(2, [0, 3])
    document = verdict_to_dict(solve_linked(instance), instance)
    assert document["source"] == "residual"
    assert document["witness"] == "01"
    assert document["augmented_rows"] == 3
    print("✅ PASSED - residual verdict reports m + 1 rows")


def test_unsat_and_exhausted_documents():
    board = blocked_board(3)
    unsat = verdict_to_dict(solve_linked(board), board)
    assert unsat["status"] == "unsat"
    assert unsat["witness"] is None and unsat["source"] is None

    exhausted = verdict_to_dict(solve_probabilistic(board, seed=1, budget=2), board)
    assert exhausted["status"] == "exhausted"
    assert exhausted["budget"] == 2
    print("✅ PASSED - unsat and exhausted documents")


def test_loads_result():
    instance = read_text("ssat 3 2\n101\n100\n")
    text = dumps(verdict_to_dict(solve_linked(instance), instance))
    assert loads_result(text)["witness"] == "101"
    with pytest.raises(FormatError):
        loads_result("sat witness=101")
    with pytest.raises(FormatError):
        loads_result("[1, 2]")
    with pytest.raises(FormatError):
        loads_result('{"witness": "101"}')
    print("✅ PASSED - saved result objects load")


def test_witness_reverifies_on_reread_instance():
    instance = read_text("ssat 3 2\n101\n100\n")
    document = json.loads(dumps(verdict_to_dict(solve_linked(instance), instance)))
    reread = read_text(write_text(instance))
    assert witness_from_result(document, reread).word == 5

    assert witness_from_result({"witness": None}, reread) is None
    with pytest.raises(FormatError):
        witness_from_result({"witness": "010"}, reread)
    with pytest.raises(FormatError):
        witness_from_result({"witness": "10"}, reread)
    print("✅ PASSED - witness re-verifies")


if __name__ == "__main__":
    print("=" * 70)
    print("JSON UTILITIES TEST SUITE")
    print("=" * 70)
    try:
        test_row_verdict_document()
        test_residual_verdict_counts_augmented_row()
        test_unsat_and_exhausted_documents()
        test_loads_result()
        test_witness_reverifies_on_reread_instance()
        print("=" * 70)
        print("✅ ALL TESTS PASSED!")
        print("=" * 70)
    except AssertionError as e:
        print(f"❌ TEST FAILED: {e}")
        sys.exit(1)
