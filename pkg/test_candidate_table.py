#!/usr/bin/env python3
"""
Tests for the doubly-linked candidate table: removal, cursors, traversal,
error cases and the prev/next dump.
"""

import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modules.candidate_table import MAX_WRITES_PER_REMOVE, CandidateTable, new_table
from modules.sat_model import CapacityError, TableError


def _check_links(table):
    """Forward and backward chains agree with the member flags"""
    forward = list(table)
    assert forward == [k for k in range(table.size) if table.contains(k)]
    backward = []
    k = table.last_remaining()
    while k is not None:
        backward.append(k)
        k = table.previous_of(k)
    assert backward == forward[::-1]
    assert len(table) == len(forward)


def test_fresh_table():
    table = new_table(3)
    assert list(table) == list(range(8))
    assert table.first_remaining() == 0
    assert table.last_remaining() == 7
    assert table.previous_of(0) is None
    assert table.next_of(7) is None
    assert not table.is_empty()
    print("✅ PASSED - fresh table")


def test_known_removal_sequence():
    """Rows 101, 100: the knowledge builder removes 2 then 3"""
    table = CandidateTable(3)
    table.remove(2)
    table.remove(3)
    assert table.remaining() == [0, 1, 4, 5, 6, 7]
    assert not table.contains(2)
    assert table.contains(4)
    assert table.first_remaining() == 0
    assert table.last_remaining() == 7
    assert table.next_of(1) == 4
    assert table.previous_of(4) == 1
    assert table.removed_count == 2
    _check_links(table)
    print("✅ PASSED - known removal sequence")


def test_dump_after_two_removals():
    table = CandidateTable(3)
    table.remove(2)
    table.remove(3)
    assert table.dump() == "\n".join([
        "first=0; last=7",
        "i previous next",
        "0 -1 1",
        "1 0 4",
        "4 1 5",
        "5 4 6",
        "6 5 7",
        "7 6 -1",
    ])
    assert "2 -1 -1" in table.dump(include_removed=True)
    print("✅ PASSED - dump after removing 2 and 3")


def test_endpoint_removals():
    table = CandidateTable(2)
    table.remove(0)
    assert table.first_remaining() == 1
    assert table.previous_of(1) is None
    table.remove(3)
    assert table.last_remaining() == 2
    assert table.next_of(2) is None
    # the last member is still a member even though it has no successor
    assert table.contains(2)
    table.remove(1)
    table.remove(2)
    assert table.is_empty()
    assert table.first_remaining() is None
    assert table.last_remaining() is None
    assert list(table) == []
    print("✅ PASSED - endpoint removals")


def test_removal_errors():
    table = CandidateTable(2)
    table.remove(1)
    with pytest.raises(TableError):
        table.remove(1)
    with pytest.raises(TableError):
        table.remove(4)
    with pytest.raises(TableError):
        table.contains(-1)
    assert 7 not in table
    assert "x" not in table
    print("✅ PASSED - removal errors")


def test_writes_per_removal():
    table = CandidateTable(4)
    # interior, head, tail, then the last member
    for k in (5, 0, 15, 7):
        before = table.link_writes
        table.remove(k)
        assert table.link_writes - before == table.last_remove_writes
        assert 0 < table.last_remove_writes <= MAX_WRITES_PER_REMOVE
    one = CandidateTable(1)
    one.remove(0)
    one.remove(1)
    assert one.is_empty() and one.last_remove_writes <= MAX_WRITES_PER_REMOVE
    print("✅ PASSED - bounded writes per removal")


def test_capacity():
    with pytest.raises(CapacityError):
        CandidateTable(64)
    print("✅ PASSED - capacity check")


@given(st.integers(1, 8).flatmap(
    lambda n: st.tuples(st.just(n), st.permutations(range(1 << n)), st.integers(0, 1 << n))
))
@settings(max_examples=150, deadline=None)
def test_random_removal_sequences(case):
    n, order, count = case
    table = CandidateTable(n)
    for k in order[:count]:
        table.remove(k)
        assert table.last_remove_writes <= MAX_WRITES_PER_REMOVE
    removed = set(order[:count])
    assert table.remaining() == [k for k in range(1 << n) if k not in removed]
    assert table.link_writes <= MAX_WRITES_PER_REMOVE * count
    assert all(isinstance(k, int) for k in table)
    _check_links(table)


if __name__ == "__main__":
    print("=" * 70)
    print("CANDIDATE TABLE TEST SUITE")
    print("=" * 70)
    try:
        test_fresh_table()
        test_known_removal_sequence()
        test_dump_after_two_removals()
        test_endpoint_removals()
        test_removal_errors()
        test_writes_per_removal()
        test_capacity()
        test_random_removal_sequences()
        print("=" * 70)
        print("✅ ALL TESTS PASSED!")
        print("=" * 70)
    except AssertionError as e:
        print(f"❌ TEST FAILED: {e}")
        sys.exit(1)
