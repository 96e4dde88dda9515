"""
Instance Generators Module

Constructive instance generation; the test suite's ground-truth factory.

- from_solution_set(): Simple instance whose solution set is exactly S,
  built as M = { complement(z) : z not in S }
- blocked_board(): all 2^n rows in board-address order (no solution)
- random_instance(): seeded Simple or General corpora
- unique_solution_instance(), paired_instance(): bench families

All generators are deterministic for a fixed seed.
"""

import logging
import random
from typing import Iterable, List, Optional, Union

from modules.classical_solvers import address_word
from modules.sat_model import (
    EncodingError,
    Instance,
    InstanceKind,
    SolutionSet,
    TernaryClause,
    check_table_capacity,
    check_variable_count,
    full_mask,
)

LOG = logging.getLogger(__name__)


def from_solution_set(n: int, solutions: Union[SolutionSet, Iterable[int]],
                      seed: Optional[int] = None) -> Instance:
    """
    Simple instance with prescribed solution set.

    Args:
        n: Variable count (<= table cap)
        solutions: Words in [0, 2^n - 1]; empty gives the blocked board,
                   everything gives m = 0
        seed: None for rows in ascending order; otherwise rows shuffled
              with random.Random(seed)

    Returns:
        Instance with m = 2^n - |S| pairwise-distinct rows
    """
    check_table_capacity(n)
    mask = full_mask(n)
    if isinstance(solutions, SolutionSet):
        wanted = solutions.members
    else:
        wanted = frozenset(solutions)
    for word in wanted:
        if not 0 <= word <= mask:
            raise EncodingError(f"solution {word} does not fit in {n} bits")

    # complement reverses order, so walking z downwards yields ascending rows
    rows = [z ^ mask for z in range(mask, -1, -1) if z not in wanted]
    if seed is not None:
        random.Random(seed).shuffle(rows)

    LOG.debug(f"[GEN] Prescribed {len(wanted)} solutions -> {len(rows)} rows (n={n})")
    return Instance.from_rows(n, rows, origin="generated")


def blocked_board(n: int) -> Instance:
    """All 2^n distinct rows, listed in board-address order (000, 111, 001, 110, ...)"""
    check_table_capacity(n)
    rows = [address_word(address, n) for address in range(1 << n)]
    return Instance.from_rows(n, rows, origin="generated")


def random_instance(n: int, m: int, seed: Optional[int] = None,
                    profile: InstanceKind = InstanceKind.SIMPLE,
                    max_width: Optional[int] = None,
                    distinct: bool = False,
                    min_width: int = 1) -> Instance:
    """
    Seeded random corpus instance.

    Args:
        n: Variable count
        m: Clause count (>= 0)
        seed: Seed for random.Random
        profile: SIMPLE draws full-width rows uniformly; GENERAL draws clause
                 widths in [min_width, max_width], then variables and signs
                 uniformly
        max_width: Largest General clause width (default n)
        distinct: SIMPLE only; sample rows without replacement (m <= 2^n)
        min_width: Smallest General clause width (default 1)

    Returns:
        Instance
    """
    check_variable_count(n)
    if m < 0:
        raise EncodingError(f"clause count must be non-negative, got {m}")
    rng = random.Random(seed)
    profile = InstanceKind(profile)

    if profile is InstanceKind.SIMPLE:
        size = 1 << n
        if distinct:
            if m > size:
                raise EncodingError(f"cannot draw {m} distinct rows from {size} words")
            rows = rng.sample(range(size), m)
        else:
            rows = [rng.randrange(size) for _ in range(m)]
        return Instance.from_rows(n, rows, origin="generated")

    width_cap = n if max_width is None else max_width
    if not 1 <= width_cap <= n:
        raise EncodingError(f"max_width must be in [1, {n}], got {width_cap}")
    if not 1 <= min_width <= width_cap:
        raise EncodingError(f"min_width must be in [1, {width_cap}], got {min_width}")

    clauses: List[TernaryClause] = []
    for _ in range(m):
        width = rng.randint(min_width, width_cap)
        present = 0
        sign = 0
        for variable in rng.sample(range(n), width):
            bit = 1 << variable
            present |= bit
            if rng.getrandbits(1):
                sign |= bit
        clauses.append(TernaryClause(present, sign))
    return Instance(n, clauses, origin="generated", validate=False)


def unique_solution_instance(n: int, witness: int, seed: Optional[int] = None) -> Instance:
    """m = 2^n - 1 rows whose only solution is `witness`"""
    return from_solution_set(n, [witness], seed=seed)


def paired_instance(n: int, pairs: int, seed: Optional[int] = None) -> Instance:
    """
    Rows made of `pairs` distinct complement pairs, shuffled.

    Every row's complement is also a row, so no row evaluates true and the
    linked solver reads all m = 2 * pairs rows (unless pairs = 2^{n-1}, which
    is a blocked board).
    """
    check_variable_count(n)
    half = 1 << (n - 1)
    if not 0 <= pairs <= half:
        raise EncodingError(f"n={n} has only {half} complement pairs, asked for {pairs}")
    rng = random.Random(seed)
    mask = full_mask(n)
    rows = []
    for k in rng.sample(range(half), pairs):
        rows.append(k)
        rows.append(k ^ mask)
    rng.shuffle(rows)
    return Instance.from_rows(n, rows, origin="generated")
