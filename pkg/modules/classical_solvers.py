"""
Classical Solvers Module

Deterministic and probabilistic solvers for full-width (Simple) instances,
each instrumented with Counters and each independently checkable against
solutions_by_exhaustion.

Solvers:
- solve_board(): direct-addressing board builder; decides existence
- solve_linked(): candidate-table scan; returns a witness from a row or the
  residual first candidate, plus the augmented (fixed-point) instance
- enumerate_solutions(): knowledge builder; returns the exact solution set
- solve_probabilistic(): uniform draws without replacement

Helpers for General input:
- find_blocked_subset(): a clause group isomorphic to a blocked board proves unsat
- row_fixed_points(): rows that are themselves solutions

Knowledge builder:
    For each row k the builder removes complement(k) from the table, so what
    remains is exactly the solution set (rows 101, 100 over n = 3 leave
    0, 1, 4, 5, 6, 7).
"""

import logging
import random
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from modules.candidate_table import CandidateTable, new_table
from modules.evaluation import eval_word
from modules.sat_model import (
    Assignment,
    Counters,
    Instance,
    InvariantViolation,
    SolutionSet,
    Verdict,
    WitnessSource,
    check_table_capacity,
    check_variable_count,
    complement_word,
    full_mask,
)
from modules.ternary_encoding import augment_with_witness

LOG = logging.getLogger(__name__)


# ------------------------------------------------------------------------------
# BOARD ADDRESSING
# ------------------------------------------------------------------------------

def board_address(k: int, n: int) -> int:
    """
    Board slot of row k: words with MSB 0 go to even slots, their complements
    to the next odd slot.

        MSB(k) = 0: 2 * low(k)
        MSB(k) = 1: 2 * (2^{n-1} - low(k)) - 1
    """
    msb = 1 << (n - 1)
    low = k & (msb - 1)
    if k & msb:
        return 2 * (msb - low) - 1
    return 2 * low


def address_word(address: int, n: int) -> int:
    """Inverse of board_address"""
    msb = 1 << (n - 1)
    if address % 2 == 0:
        return address // 2
    return msb | (msb - (address + 1) // 2)


@dataclass
class Board:
    """Occupancy of the direct-addressing board"""

    n: int
    occupied: np.ndarray

    def rows(self) -> List[Optional[int]]:
        """Row word per address, None where the slot is empty"""
        return [address_word(a, self.n) if self.occupied[a] else None
                for a in range(len(self.occupied))]

    def filled(self) -> int:
        return int(np.count_nonzero(self.occupied))

    def first_gap(self) -> Optional[int]:
        gaps = np.flatnonzero(~self.occupied)
        return int(gaps[0]) if gaps.size else None


def _finish(counters: Counters, label: str, verdict: Verdict, started: float) -> Verdict:
    elapsed = time.perf_counter() - started
    marker = "✅" if verdict.is_sat else "❌"
    LOG.info(f"[{label}] {marker} {verdict} in {elapsed:.3f}s counters={counters.as_dict()}")
    return verdict


# ------------------------------------------------------------------------------
# BOARD BUILDER
# ------------------------------------------------------------------------------

def solve_board(instance: Instance, counters: Optional[Counters] = None,
                locate_witness: bool = False) -> Verdict:
    """
    Place each distinct row at its board address until the board is full.

    Args:
        instance: Simple instance, n <= table cap
        counters: Optional run counters (rows_read)
        locate_witness: On SAT, read a witness off the first empty address
                        (the complement of the missing row)

    Returns:
        UNSAT with the filled Board as evidence once 2^n distinct rows are
        placed; otherwise SAT without witness (or with one when locate_witness)
    """
    instance.require_simple("solve_board")
    n = instance.n
    check_table_capacity(n)
    counters = counters if counters is not None else Counters()
    started = time.perf_counter()

    size = 1 << n
    msb = 1 << (n - 1)
    low_mask = msb - 1
    occupied = np.zeros(size, dtype=np.bool_)
    board = Board(n, occupied)
    ct = 0

    for k in instance.row_words():
        counters.rows_read += 1
        low = k & low_mask
        address = 2 * (msb - low) - 1 if k & msb else 2 * low
        if occupied[address]:
            continue
        occupied[address] = True
        ct += 1
        if ct == size:
            return _finish(counters, "BOARD", Verdict.unsat(counters, evidence=board), started)

    witness = None
    source = None
    if locate_witness:
        gap = board.first_gap()
        word = complement_word(address_word(gap, n), n)
        if not eval_word(instance, word, counters):
            LOG.error(f"[BOARD] ❌ Board witness {word} does not satisfy {instance!r}")
            raise InvariantViolation(f"board witness {word} does not evaluate true")
        witness = Assignment(word, n)
        source = WitnessSource.BOARD

    return _finish(counters, "BOARD", Verdict.sat(witness, source, counters, evidence=board), started)


# ------------------------------------------------------------------------------
# LINKED SOLVER
# ------------------------------------------------------------------------------

def solve_linked(instance: Instance, counters: Optional[Counters] = None,
                 reverse: bool = False) -> Verdict:
    """
    Scan rows against the candidate table.

    For each row k still in the table: if k evaluates true it is returned
    (source=row); otherwise k and complement(k) are unlinked as a pair. When
    the table empties the instance is UNSAT. When rows run out, the smallest
    remaining candidate is a solution of the original instance (every row lies
    in a removed pair) and of the augmented instance with that candidate
    appended as a row (source=residual, `augmented` set).

    Args:
        instance: Simple instance, n <= table cap
        counters: Optional run counters (rows_read, evaluations, removals)
        reverse: Read rows last-to-first; on an augmented instance the
                 appended witness is then found on the first row

    Raises:
        InvariantViolation: residual candidate fails evaluation
    """
    instance.require_simple("solve_linked")
    n = instance.n
    counters = counters if counters is not None else Counters()
    started = time.perf_counter()

    table = new_table(n)
    mask = full_mask(n)
    rows = instance.row_words()
    order = reversed(rows) if reverse else rows
    member = table.member

    for k in order:
        counters.rows_read += 1
        if not member[k]:
            LOG.debug(f"[LINKED] Row {k} already removed")
            continue
        if eval_word(instance, k, counters):
            witness = Assignment(k, n)
            return _finish(counters, "LINKED",
                           Verdict.sat(witness, WitnessSource.ROW, counters, evidence=table), started)
        table.remove(k)
        table.remove(k ^ mask)
        counters.removals += 1
        if table.removed_count == table.size:
            return _finish(counters, "LINKED", Verdict.unsat(counters, evidence=table), started)

    k = table.first_remaining()
    if not eval_word(instance, k, counters):
        LOG.error(f"[LINKED] ❌ Residual candidate {k} does not satisfy {instance!r}")
        raise InvariantViolation(f"residual candidate {k} does not evaluate true")

    witness = Assignment(k, n)
    augmented = augment_with_witness(instance, witness)
    verdict = Verdict.sat(witness, WitnessSource.RESIDUAL, counters, evidence=table, augmented=augmented)
    return _finish(counters, "LINKED", verdict, started)


# ------------------------------------------------------------------------------
# KNOWLEDGE BUILDER
# ------------------------------------------------------------------------------

def build_knowledge_table(instance: Instance, counters: Optional[Counters] = None) -> CandidateTable:
    """
    One pass over the rows removing complement(k) for every row k.

    The remaining members are exactly the solutions. Stops early when the
    table empties.
    """
    instance.require_simple("build_knowledge_table")
    n = instance.n
    counters = counters if counters is not None else Counters()
    table = new_table(n)
    mask = full_mask(n)
    member = table.member

    for k in instance.row_words():
        counters.rows_read += 1
        blocked = k ^ mask
        if member[blocked]:
            table.remove(blocked)
            counters.removals += 1
            if table.removed_count == table.size:
                LOG.debug(f"[KNOWLEDGE] Table emptied after {counters.rows_read} rows")
                break

    return table


def enumerate_solutions(instance: Instance, counters: Optional[Counters] = None) -> SolutionSet:
    """
    Exact solution set of a Simple instance (possibly empty).

    Args:
        instance: Simple instance, n <= table cap
        counters: Optional run counters (rows_read, removals)

    Returns:
        SolutionSet of the candidates left in the knowledge table
    """
    counters = counters if counters is not None else Counters()
    started = time.perf_counter()
    table = build_knowledge_table(instance, counters)
    solutions = SolutionSet.of(instance.n, table)
    elapsed = time.perf_counter() - started
    LOG.info(f"[KNOWLEDGE] {len(solutions)} solutions for {instance!r} in {elapsed:.3f}s "
             f"counters={counters.as_dict()}")
    return solutions


# ------------------------------------------------------------------------------
# PROBABILISTIC SOLVER
# ------------------------------------------------------------------------------

def solve_probabilistic(instance: Instance, seed: Optional[int] = None,
                        budget: Optional[int] = None,
                        counters: Optional[Counters] = None) -> Verdict:
    """
    Draw candidates uniformly without replacement until one evaluates true.

    Remaining candidates live in a dense pool; a draw swaps the chosen slot
    with the last live one, so after f failures each remaining candidate is
    drawn with probability 1/(2^n - f).

    Args:
        instance: Instance with n <= table cap (Simple or General)
        seed: Seed for random.Random; fixed seed -> identical run
        budget: Optional maximum number of draws
        counters: Optional run counters (random_draws, evaluations)

    Returns:
        SAT (source=draw), UNSAT after all 2^n candidates failed, or
        EXHAUSTED when the budget runs out first
    """
    n = instance.n
    check_table_capacity(n)
    counters = counters if counters is not None else Counters()
    started = time.perf_counter()

    rng = random.Random(seed)
    size = 1 << n
    pool = np.arange(size, dtype=np.uint32 if n < 32 else np.uint64)
    remaining = size
    draws = 0

    while remaining:
        if budget is not None and draws >= budget:
            return _finish(counters, "PROB", Verdict.exhausted(budget, counters), started)
        j = rng.randrange(remaining)
        k = int(pool[j])
        remaining -= 1
        pool[j] = pool[remaining]
        draws += 1
        counters.random_draws += 1
        if eval_word(instance, k, counters):
            return _finish(counters, "PROB",
                           Verdict.sat(Assignment(k, n), WitnessSource.DRAW, counters), started)

    return _finish(counters, "PROB", Verdict.unsat(counters), started)


# ------------------------------------------------------------------------------
# STRUCTURAL CHECKS
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockedSubset:
    """Clauses over one variable set whose signs cover every pattern"""

    present: int
    clause_indices: Tuple[int, ...]


def find_blocked_subset(instance: Instance,
                        counters: Optional[Counters] = None) -> Optional[BlockedSubset]:
    """
    Look for a subset of clauses isomorphic to a blocked board.

    Clauses are grouped by their variable set; a group over k variables whose
    distinct sign patterns reach 2^k forbids every assignment of those k
    variables, so the instance is unsatisfiable. Finding none proves nothing.

    Returns:
        BlockedSubset (first clause index per pattern) or None
    """
    check_variable_count(instance.n)
    counters = counters if counters is not None else Counters()
    groups = {}

    for index, (present, sign) in enumerate(instance.clauses):
        counters.rows_read += 1
        group = groups.setdefault(present, {})
        if sign in group:
            continue
        group[sign] = index
        if len(group) == 1 << present.bit_count():
            subset = BlockedSubset(present, tuple(sorted(group.values())))
            LOG.info(f"[BLOCKED] ❌ Clauses {subset.clause_indices[:8]}... form a blocked board "
                     f"over {present.bit_count()} variables")
            return subset

    return None


def row_fixed_points(instance: Instance) -> List[int]:
    """Rows x with complement(x) not a row; each is itself a solution"""
    instance.require_simple("row_fixed_points")
    mask = full_mask(instance.n)
    index = instance.row_index()
    return sorted(k for k in index if k ^ mask not in index)
