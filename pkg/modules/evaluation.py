"""
Evaluation Module

The two equivalent evaluation strategies for full-width instances (circuit
evaluation and digit matching), general CNF evaluation, partial assignments,
and the completion oracle that stands in for the quantum-variable coupling.

Accounting:
- eval_circuit counts as ONE evaluation regardless of m (the circuit view).
  For Simple instances it answers from the distinct-row index built once per
  instance: y satisfies the instance iff complement(y) is not a row.
- eval_matching compares every digit of every row, so its `comparisons`
  counter grows as m*n.
"""

import logging
from typing import Iterable, List, NamedTuple, Optional, Tuple

from modules.sat_model import (
    Assignment,
    Counters,
    EncodingError,
    Instance,
    SolutionSet,
    TernaryClause,
    UnsupportedInstanceError,
    check_table_capacity,
    full_mask,
)

LOG = logging.getLogger(__name__)

SIMPLE_BACKEND = "simple"
GENERAL_BACKEND = "general"


# ------------------------------------------------------------------------------
# PARTIAL ASSIGNMENTS
# ------------------------------------------------------------------------------

class PartialAssignment(NamedTuple):
    """
    Variables fixed so far; the free ones play the role of the undetermined
    (quantum) inputs of the decision device.
    """

    fixed: int
    values: int
    n: int

    @classmethod
    def empty(cls, n: int) -> "PartialAssignment":
        return cls(0, 0, n)

    @classmethod
    def total(cls, y: Assignment) -> "PartialAssignment":
        return cls(full_mask(y.n), y.word, y.n)

    @classmethod
    def of(cls, fixed: int, values: int, n: int) -> "PartialAssignment":
        mask = full_mask(n)
        if fixed & ~mask or values & ~mask:
            raise EncodingError(f"partial assignment uses variables outside 0..{n - 1}")
        if values & ~fixed:
            raise EncodingError("partial assignment has values on free variables")
        return cls(fixed, values, n)

    def with_bit(self, i: int, value: int) -> "PartialAssignment":
        bit = 1 << i
        values = (self.values | bit) if value else (self.values & ~bit)
        return PartialAssignment(self.fixed | bit, values, self.n)

    @property
    def free_count(self) -> int:
        return self.n - self.fixed.bit_count()

    @property
    def is_total(self) -> bool:
        return self.fixed == full_mask(self.n)

    def __str__(self) -> str:
        chars = []
        for i in range(self.n - 1, -1, -1):
            bit = 1 << i
            chars.append(("1" if self.values & bit else "0") if self.fixed & bit else "q")
        return "".join(chars)


# ------------------------------------------------------------------------------
# TOTAL EVALUATION
# ------------------------------------------------------------------------------

def _check_width(instance: Instance, y: Assignment) -> None:
    if y.n != instance.n:
        raise EncodingError(f"assignment has {y.n} bits, instance has n={instance.n}")


def eval_clause(clause: TernaryClause, y: Assignment) -> bool:
    """True iff some present variable takes the clause's sign"""
    return (~(y.word ^ clause.sign) & clause.present) != 0


def eval_word(instance: Instance, word: int, counters: Optional[Counters] = None) -> bool:
    """
    Circuit evaluation on a raw word (the solvers' hot path).

    Simple instances answer from the row index; General instances scan clauses.
    """
    if counters is not None:
        counters.evaluations += 1
    if instance.is_simple:
        return (word ^ full_mask(instance.n)) not in instance.row_index()
    for present, sign in instance.clauses:
        if not ~(word ^ sign) & present:
            return False
    return True


def eval_circuit(instance: Instance, y: Assignment, counters: Optional[Counters] = None) -> bool:
    """
    AND over all clauses of eval_clause.

    Args:
        instance: Any instance
        y: Total assignment with y.n == instance.n
        counters: Optional run counters (evaluations += 1)

    Returns:
        True iff y satisfies the instance
    """
    _check_width(instance, y)
    return eval_word(instance, y.word, counters)


def eval_matching(instance: Instance, y: Assignment, counters: Optional[Counters] = None) -> bool:
    """
    Digit-by-digit matching: every row must share at least one digit with y.

    Compares all n digits of all m rows, so comparisons += m*n.

    Raises:
        UnsupportedInstanceError: instance is not Simple
    """
    instance.require_simple("eval_matching")
    _check_width(instance, y)
    n = instance.n
    digits = [(y.word >> i) & 1 for i in range(n - 1, -1, -1)]
    satisfied = True
    comparisons = 0

    for row in instance.row_words():
        matched = False
        for position, digit in enumerate(digits):
            comparisons += 1
            if (row >> (n - 1 - position)) & 1 == digit:
                matched = True
        if not matched:
            satisfied = False

    if counters is not None:
        counters.evaluations += 1
        counters.comparisons += comparisons
    return satisfied


def solutions_by_exhaustion(instance: Instance, counters: Optional[Counters] = None) -> SolutionSet:
    """Brute-force reference: evaluate all 2^n assignments"""
    check_table_capacity(instance.n)
    members = [word for word in range(1 << instance.n) if eval_word(instance, word, counters)]
    return SolutionSet.of(instance.n, members)


# ------------------------------------------------------------------------------
# COMPLETION ORACLE
# ------------------------------------------------------------------------------

def _simple_completion(instance: Instance, partial: PartialAssignment) -> bool:
    # complement(s) agrees with p on p.fixed  <=>  s & fixed == fixed & ~values
    fixed = partial.fixed
    target = fixed & ~partial.values
    blocked = 0
    for row in instance.row_index():
        if row & fixed == target:
            blocked += 1
    return blocked < (1 << partial.free_count)


def _branch_and_prune(clauses: List[Tuple[int, int]], fixed: int, values: int) -> bool:
    pending = []
    for present, sign in clauses:
        if present & fixed & ~(values ^ sign):
            continue
        if not present & ~fixed:
            return False
        pending.append((present, sign))

    if not pending:
        return True

    present, sign = pending[0]
    open_vars = present & ~fixed
    bit = 1 << (open_vars.bit_length() - 1)
    preferred = sign & bit
    for value in (preferred, preferred ^ bit):
        if _branch_and_prune(pending, fixed | bit, values | value):
            return True
    return False


def _general_completion(instance: Instance, partial: PartialAssignment) -> bool:
    clauses = [(clause.present, clause.sign) for clause in instance.clauses]
    return _branch_and_prune(clauses, partial.fixed, partial.values)


def exists_completion(instance: Instance, partial: PartialAssignment,
                      counters: Optional[Counters] = None,
                      backend: Optional[str] = None) -> bool:
    """
    Does some total assignment extending `partial` satisfy the instance?

    Args:
        instance: Any instance
        partial: Partial assignment over instance.n variables
        counters: Optional run counters (oracle_calls += 1)
        backend: "simple" (distinct blocked-completion count) or "general"
                 (branch-and-prune search); default chosen by instance kind

    Returns:
        True iff a satisfying completion exists
    """
    if partial.n != instance.n:
        raise EncodingError(f"partial assignment has {partial.n} bits, instance has n={instance.n}")
    if counters is not None:
        counters.oracle_calls += 1

    if backend is None:
        backend = SIMPLE_BACKEND if instance.is_simple else GENERAL_BACKEND

    if backend == SIMPLE_BACKEND:
        if not instance.is_simple:
            raise UnsupportedInstanceError("the simple completion backend needs a Simple instance")
        answer = _simple_completion(instance, partial)
    elif backend == GENERAL_BACKEND:
        answer = _general_completion(instance, partial)
    else:
        raise ValueError(f"Unknown completion backend: {backend}")

    LOG.debug(f"[ORACLE] {partial} -> {int(answer)} ({backend})")
    return answer


def branch_values(instance: Instance, partial: PartialAssignment, variable: int,
                  backend: Optional[str] = None) -> Iterable[bool]:
    """Oracle answers for both one-bit extensions of `partial` on `variable`"""
    return tuple(
        exists_completion(instance, partial.with_bit(variable, value), backend=backend)
        for value in (0, 1)
    )
