"""
Ternary Encoding Module

Translation between clauses, ternary digit strings ({0,1,2}^n), full-width
binary rows, and the fixed-point augmentation that appends a found witness to
its own instance.

Digit convention (leftmost digit is x_{n-1}):
- 0: negative literal
- 1: positive literal
- 2: variable absent

Example:
    >>> render_ternary(parse_ternary("10221", 5), 5)
    '10221'
"""

import logging
from typing import List, Union

from modules.sat_model import (
    Assignment,
    EncodingError,
    Instance,
    InstanceKind,
    TernaryClause,
    check_table_capacity,
    check_variable_count,
    full_mask,
)

LOG = logging.getLogger(__name__)


def parse_ternary(digits: str, n: int) -> TernaryClause:
    """
    Parse one ternary digit string into a clause.

    Args:
        digits: String over {0,1,2} of length n, MSB (x_{n-1}) first
        n: Variable count

    Returns:
        TernaryClause

    Raises:
        EncodingError: wrong length, foreign character, or all-2 string
    """
    check_variable_count(n)
    if len(digits) != n:
        raise EncodingError(f"expected {n} digits, got {len(digits)} in {digits!r}")

    present = 0
    sign = 0
    for j, ch in enumerate(digits):
        bit = 1 << (n - 1 - j)
        if ch == "0":
            present |= bit
        elif ch == "1":
            present |= bit
            sign |= bit
        elif ch != "2":
            raise EncodingError(f"foreign digit {ch!r} in {digits!r}")

    if present == 0:
        raise EncodingError(f"clause {digits!r} has no variables (all digits are 2)")
    return TernaryClause(present, sign)


def render_ternary(clause: TernaryClause, n: int) -> str:
    """Inverse of parse_ternary"""
    digits = []
    for i in range(n - 1, -1, -1):
        bit = 1 << i
        if not clause.present & bit:
            digits.append("2")
        elif clause.sign & bit:
            digits.append("1")
        else:
            digits.append("0")
    return "".join(digits)


def row_word(clause: TernaryClause, n: int) -> Assignment:
    """
    The binary number of a full-width row.

    Raises:
        EncodingError: clause does not mention every variable
    """
    if clause.present != full_mask(n):
        raise EncodingError(
            f"row_word needs a full-width clause, got {render_ternary(clause, n)}"
        )
    return Assignment(clause.sign, n)


def row_clause(word: int, n: int) -> TernaryClause:
    """Full-width clause whose row word is `word`"""
    mask = full_mask(n)
    if not 0 <= word <= mask:
        raise EncodingError(f"row {word} does not fit in {n} bits")
    return TernaryClause(mask, word)


def classify(instance: Instance) -> InstanceKind:
    """Simple iff every clause is full-width (vacuously true for m=0)"""
    mask = full_mask(instance.n)
    if all(clause.present == mask for clause in instance.clauses):
        return InstanceKind.SIMPLE
    return InstanceKind.GENERAL


def augment_with_witness(instance: Instance,
                         witness: Union[Assignment, TernaryClause, str]) -> Instance:
    """
    Append a witness to its instance as a new clause (fixed-point augmentation).

    An Assignment is appended as the full-width clause whose digits equal the
    witness's binary digits. A TernaryClause or digit string is appended as
    given, which is how "21221" turns SAT(5,3) into SAT(5,4).

    Args:
        instance: Original instance (unchanged)
        witness: Assignment, clause, or ternary digit string

    Returns:
        New instance with m+1 clauses and the same n
    """
    n = instance.n
    if isinstance(witness, str):
        clause = parse_ternary(witness, n)
    elif isinstance(witness, Assignment):
        if witness.n != n:
            raise EncodingError(f"witness has {witness.n} bits, instance has n={n}")
        clause = row_clause(witness.word, n)
    else:
        clause = TernaryClause.of(witness.present, witness.sign, n)

    LOG.debug(f"[ENCODING] Augmenting {instance!r} with {render_ternary(clause, n)}")
    return Instance(n, instance.clauses + (clause,), origin=instance.origin, validate=False)


def _submasks_ascending(mask: int) -> List[int]:
    subs = []
    sub = mask
    while True:
        subs.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    subs.reverse()
    return subs


def expand_to_simple(instance: Instance) -> Instance:
    """
    Reduce a General instance to an equivalent Simple one.

    Each clause is replaced by one full-width row per sign pattern of its
    absent variables. The falsifying assignments of the original clause are
    exactly the union of those of its expansion, so the solution set is
    unchanged. Clause order is preserved; expansions are emitted ascending.

    Raises:
        CapacityError: n above the table cap (expansion can reach 2^n rows per clause)
    """
    n = instance.n
    if instance.is_simple:
        return instance
    check_table_capacity(n)

    mask = full_mask(n)
    rows: List[int] = []
    for clause in instance.clauses:
        absent = mask & ~clause.present
        for pattern in _submasks_ascending(absent):
            rows.append(clause.sign | pattern)

    LOG.info(f"[ENCODING] Expanded {instance.m} clauses into {len(rows)} full-width rows (n={n})")
    return Instance.from_rows(n, rows, origin=instance.origin)
