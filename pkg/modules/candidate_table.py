"""
Candidate Table Module

The array T of the linked solvers: a doubly-linked chain over all 2^n
candidate assignments with first/last cursors and a removal count. Removal is
a constant number of writes; traversal from `first` yields the remaining
candidates in ascending order.

Membership is tracked with explicit flags; the last member also has no
successor.

Storage is three flat numpy arrays (prev, next, member flags). The "no
neighbour" sentinel is the table size, one past the last candidate, so the
index arrays stay unsigned.
"""

import logging
from typing import Iterator, List, Optional

import numpy as np

from modules.sat_model import TableError, check_table_capacity

LOG = logging.getLogger(__name__)

# upper bound on link, cursor and flag writes made by one remove()
MAX_WRITES_PER_REMOVE = 8


class CandidateTable:
    """
    Doubly-linked chain over [0, 2^n - 1].

    Usage:
        table = CandidateTable(3)
        table.remove(2)
        table.remove(3)
        list(table)              # [0, 1, 4, 5, 6, 7]
        table.first_remaining()  # 0
    """

    def __init__(self, n: int):
        check_table_capacity(n)
        size = 1 << n
        dtype = np.uint32 if n < 32 else np.uint64

        self.n = n
        self.size = size
        self._nil = size

        # prev = [nil, 0, 1, ..., size - 2], next = [1, 2, ..., size - 1, nil]
        self.prev = np.roll(np.arange(size + 1, dtype=dtype), 1)[:size].copy()
        self.next = np.arange(1, size + 1, dtype=dtype)
        self.member = np.ones(size, dtype=np.bool_)

        self.first = 0
        self.last = size - 1
        self.removed_count = 0
        self.link_writes = 0
        self.last_remove_writes = 0

    # --------------------------------------------------------------------------
    # Queries
    # --------------------------------------------------------------------------

    def _check_index(self, k: int) -> None:
        if not 0 <= k < self.size:
            raise TableError(f"candidate {k} outside [0, {self.size - 1}]")

    def contains(self, k: int) -> bool:
        self._check_index(k)
        return bool(self.member[k])

    def __contains__(self, k: object) -> bool:
        return (isinstance(k, (int, np.integer)) and not isinstance(k, bool)
                and 0 <= k < self.size and bool(self.member[k]))

    def first_remaining(self) -> Optional[int]:
        return None if self.first == self._nil else self.first

    def last_remaining(self) -> Optional[int]:
        return None if self.last == self._nil else self.last

    def previous_of(self, k: int) -> Optional[int]:
        self._check_index(k)
        p = int(self.prev[k])
        return None if p == self._nil else p

    def next_of(self, k: int) -> Optional[int]:
        self._check_index(k)
        q = int(self.next[k])
        return None if q == self._nil else q

    def is_empty(self) -> bool:
        return self.removed_count == self.size

    def __len__(self) -> int:
        return self.size - self.removed_count

    def __iter__(self) -> Iterator[int]:
        nil = self._nil
        nxt = self.next
        k = self.first
        while k != nil:
            yield k
            k = int(nxt[k])

    def remaining(self) -> List[int]:
        return list(self)

    # --------------------------------------------------------------------------
    # Mutation
    # --------------------------------------------------------------------------

    def remove(self, k: int) -> None:
        """
        Unlink candidate k.

        Raises:
            TableError: k out of range or already removed
        """
        self._check_index(k)
        if not self.member[k]:
            raise TableError(f"candidate {k} already removed")

        nil = self._nil
        p = int(self.prev[k])
        q = int(self.next[k])
        writes = 0

        if p != nil:
            self.next[p] = q
            writes += 1
        else:
            self.first = q
            writes += 1
        if q != nil:
            self.prev[q] = p
            writes += 1
        else:
            self.last = p
            writes += 1
        self.prev[k] = nil
        writes += 1
        self.next[k] = nil
        writes += 1
        self.member[k] = False
        writes += 1

        self.removed_count += 1
        self.last_remove_writes = writes
        self.link_writes += writes

    # --------------------------------------------------------------------------
    # Debug dump
    # --------------------------------------------------------------------------

    def dump(self, include_removed: bool = False) -> str:
        """
        Two-column prev/next listing of the chain.

        Missing neighbours print as -1. By default only present members are
        listed; `include_removed` adds removed rows as "-1 -1".
        """

        def show(x: int) -> int:
            return -1 if x == self._nil else x

        head = f"first={show(self.first)}; last={show(self.last)}"
        lines = [head, "i previous next"]
        for k in range(self.size):
            if self.member[k] or include_removed:
                lines.append(f"{k} {show(int(self.prev[k]))} {show(int(self.next[k]))}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"CandidateTable(n={self.n}, remaining={len(self)}, removed={self.removed_count})"


def new_table(n: int) -> CandidateTable:
    """Full chain 0 -> 1 -> ... -> 2^n - 1 with nothing removed"""
    table = CandidateTable(n)
    LOG.debug(f"[TABLE] Allocated {table.size} candidates (n={n})")
    return table
