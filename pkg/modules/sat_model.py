"""
SAT Model Module

Value types shared by every solver: assignments, ternary clauses, instances,
solution sets, run counters and verdicts, plus the exception hierarchy the
rest of the package raises.

Conventions:
- Bit i of a word is the value of variable x_i; the leftmost character of a
  rendered word is x_{n-1} (MSB first), so "010" with n=3 is the number 2.
- A clause is a pair of n-bit masks: `present` (variable occurs) and `sign`
  (positive literal, meaningful only where present=1).
- An instance is Simple when every clause mentions all n variables, in which
  case each clause is equivalently one n-bit row word (its sign mask).

Usage:
    from modules.sat_model import Assignment, Instance, TernaryClause, complement

    y = Assignment.from_bits("011011")
    complement(y)   # Assignment(word=36, n=6) -> "100100"
"""

import logging
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple

LOG = logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# LIMITS
# ------------------------------------------------------------------------------

# Word-backed assignments
WORD_CAP = 63

# Table-backed algorithms allocate Theta(2^n) memory
TABLE_CAP = int(os.getenv("SSAT_TABLE_CAP", "26"))


# ------------------------------------------------------------------------------
# EXCEPTIONS
# ------------------------------------------------------------------------------

class SatError(Exception):
    """Base exception for every error raised by this package"""
    pass


class EncodingError(SatError):
    """Raised for invalid digit strings, masks, clauses or assignments"""
    pass


class FormatError(EncodingError):
    """Raised when a DIMACS / tsat / ssat / result document is malformed"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapacityError(SatError):
    """Raised when n exceeds the word cap or the table cap"""
    pass


class UnsupportedInstanceError(SatError):
    """Raised when a Simple-only operation receives a General instance"""
    pass


class TableError(SatError):
    """Raised on candidate-table misuse (double removal, bad index)"""
    pass


class InvariantViolation(SatError):
    """Raised when a solver's self-check fails; indicates a bug"""
    pass


# ------------------------------------------------------------------------------
# CAPACITY CHECKS
# ------------------------------------------------------------------------------

def full_mask(n: int) -> int:
    """All n low bits set"""
    return (1 << n) - 1


def check_variable_count(n: int) -> None:
    """Validate n against the word cap (1 <= n <= 63)"""
    if not isinstance(n, int) or isinstance(n, bool):
        raise EncodingError(f"variable count must be an integer, got {n!r}")
    if n < 1:
        raise EncodingError(f"variable count must be at least 1, got {n}")
    if n > WORD_CAP:
        raise CapacityError(f"n={n} exceeds the word cap of {WORD_CAP}")


def check_table_capacity(n: int, cap: Optional[int] = None) -> None:
    """Validate n for algorithms that allocate one slot per candidate"""
    check_variable_count(n)
    limit = TABLE_CAP if cap is None else cap
    if n > limit:
        LOG.warning(f"[CAPACITY] ⚠️ n={n} refused, table cap is {limit}")
        raise CapacityError(
            f"n={n} exceeds the table cap of {limit} "
            f"(set SSAT_TABLE_CAP to raise it; memory grows as 2^n)"
        )


# ------------------------------------------------------------------------------
# ASSIGNMENTS
# ------------------------------------------------------------------------------

class Assignment(NamedTuple):
    """An n-bit word; bit i is the value of x_i"""

    word: int
    n: int

    @classmethod
    def of(cls, word: int, n: int) -> "Assignment":
        check_variable_count(n)
        if not 0 <= word <= full_mask(n):
            raise EncodingError(f"word {word} does not fit in {n} bits")
        return cls(word, n)

    @classmethod
    def from_bits(cls, bits: str) -> "Assignment":
        """Parse an MSB-first binary string ("010" -> x_1=1)"""
        if not bits or any(ch not in "01" for ch in bits):
            raise EncodingError(f"not a binary string: {bits!r}")
        return cls.of(int(bits, 2), len(bits))

    def bit(self, i: int) -> int:
        return (self.word >> i) & 1

    def __str__(self) -> str:
        return format(self.word, f"0{self.n}b")


def complement_word(word: int, n: int) -> int:
    return word ^ full_mask(n)


def complement(y: Assignment) -> Assignment:
    """Flip every bit below n"""
    return Assignment(complement_word(y.word, y.n), y.n)


def falsifying_assignment(row: Assignment) -> Assignment:
    """
    The unique assignment falsifying a full-width row clause.

    A full-width clause is false only when every literal is false, i.e. when
    each variable takes the opposite of the row's digit.
    """
    return complement(row)


# ------------------------------------------------------------------------------
# CLAUSES
# ------------------------------------------------------------------------------

class TernaryClause(NamedTuple):
    """
    One CNF clause as presence/sign masks.

    Ternary digit of variable i: 0 <-> present & ~sign, 1 <-> present & sign,
    2 <-> ~present.
    """

    present: int
    sign: int

    @classmethod
    def of(cls, present: int, sign: int, n: int) -> "TernaryClause":
        clause = cls(present, sign)
        validate_clause(clause, n)
        return clause

    @property
    def width(self) -> int:
        return self.present.bit_count()

    def is_full_width(self, n: int) -> bool:
        return self.present == full_mask(n)


def validate_clause(clause: TernaryClause, n: int) -> None:
    if clause.present == 0:
        raise EncodingError("clause has no variables")
    if clause.present < 0 or clause.present > full_mask(n):
        raise EncodingError(f"clause uses variables outside 0..{n - 1}")
    if clause.sign & ~clause.present:
        raise EncodingError("clause sign bits set on absent variables")


# ------------------------------------------------------------------------------
# INSTANCES
# ------------------------------------------------------------------------------

class InstanceKind(str, Enum):
    SIMPLE = "simple"
    GENERAL = "general"


class Instance:
    """
    A general SAT or full-width SSAT problem.

    Clause order is kept exactly as given; duplicates are allowed. The row
    list and the distinct-row index of a Simple instance are built lazily,
    once, and reused by every evaluation.
    """

    __slots__ = ("_n", "_clauses", "_kind", "_origin", "_rows", "_row_index")

    def __init__(self, n: int, clauses: Iterable[TernaryClause], origin: Optional[str] = None,
                 validate: bool = True):
        check_variable_count(n)
        clauses = tuple(clauses)
        mask = full_mask(n)
        simple = True
        for clause in clauses:
            if validate:
                validate_clause(clause, n)
            if clause.present != mask:
                simple = False
        self._n = n
        self._clauses = clauses
        self._kind = InstanceKind.SIMPLE if simple else InstanceKind.GENERAL
        self._origin = origin
        self._rows: Optional[Tuple[int, ...]] = None
        self._row_index: Optional[FrozenSet[int]] = None

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[int], origin: Optional[str] = None) -> "Instance":
        """Build a Simple instance from row words"""
        check_variable_count(n)
        mask = full_mask(n)
        clauses = []
        for word in rows:
            if not 0 <= word <= mask:
                raise EncodingError(f"row {word} does not fit in {n} bits")
            clauses.append(TernaryClause(mask, word))
        return cls(n, clauses, origin=origin, validate=False)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._clauses)

    @property
    def clauses(self) -> Tuple[TernaryClause, ...]:
        return self._clauses

    @property
    def kind(self) -> InstanceKind:
        return self._kind

    @property
    def origin(self) -> Optional[str]:
        """Provenance flag: the format or generator this instance came from"""
        return self._origin

    @property
    def is_simple(self) -> bool:
        return self._kind is InstanceKind.SIMPLE

    def require_simple(self, operation: str) -> None:
        if not self.is_simple:
            raise UnsupportedInstanceError(
                f"{operation} needs a Simple (full-width) instance; "
                f"convert General input with expand_to_simple first"
            )

    def row_words(self) -> Tuple[int, ...]:
        """Row words in input order (Simple only)"""
        self.require_simple("row_words")
        if self._rows is None:
            self._rows = tuple(clause.sign for clause in self._clauses)
        return self._rows

    def row_index(self) -> FrozenSet[int]:
        """Distinct row words (Simple only); built once per instance"""
        if self._row_index is None:
            self._row_index = frozenset(self.row_words())
        return self._row_index

    def with_origin(self, origin: Optional[str]) -> "Instance":
        return Instance(self._n, self._clauses, origin=origin, validate=False)

    def __iter__(self) -> Iterator[TernaryClause]:
        return iter(self._clauses)

    def __len__(self) -> int:
        return len(self._clauses)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return self._n == other._n and self._clauses == other._clauses

    def __hash__(self) -> int:
        return hash((self._n, self._clauses))

    def __repr__(self) -> str:
        return f"Instance(n={self._n}, m={self.m}, kind={self._kind.value})"


# ------------------------------------------------------------------------------
# SOLUTION SETS AND COUNTERS
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class SolutionSet:
    """The satisfying assignments of an instance, as words"""

    n: int
    members: FrozenSet[int]

    def __post_init__(self):
        check_variable_count(self.n)
        mask = full_mask(self.n)
        for word in self.members:
            if not 0 <= word <= mask:
                raise EncodingError(f"solution {word} does not fit in {self.n} bits")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "SolutionSet":
        return cls(n, frozenset(members))

    def sorted_members(self) -> List[int]:
        return sorted(self.members)

    def as_bits(self) -> List[str]:
        return [format(word, f"0{self.n}b") for word in self.sorted_members()]

    def __contains__(self, word: object) -> bool:
        if isinstance(word, Assignment):
            word = word.word
        return word in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_members())


@dataclass
class Counters:
    """
    Per-run instrumentation.

    `evaluations` counts whole-instance evaluations (one circuit pass each);
    `comparisons` counts the digit comparisons of the matching strategy;
    `removals` counts removal steps (a complement pair in the linked solver,
    a single candidate in the knowledge builder).
    """

    rows_read: int = 0
    evaluations: int = 0
    removals: int = 0
    oracle_calls: int = 0
    random_draws: int = 0
    comparisons: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {
            "rows_read": self.rows_read,
            "evaluations": self.evaluations,
            "removals": self.removals,
            "oracle_calls": self.oracle_calls,
            "random_draws": self.random_draws,
            "comparisons": self.comparisons,
        }


# ------------------------------------------------------------------------------
# VERDICTS
# ------------------------------------------------------------------------------

class Status(str, Enum):
    SAT = "sat"
    UNSAT = "unsat"
    EXHAUSTED = "exhausted"


class WitnessSource(str, Enum):
    ROW = "row"            # a row of the instance evaluated true
    RESIDUAL = "residual"  # first candidate left after every row was read
    ORACLE = "oracle"      # bit-by-bit extraction through the decision oracle
    BOARD = "board"        # read off the first incomplete pair of the board
    DRAW = "draw"          # uniform random draw


@dataclass
class Verdict:
    """
    Solver outcome.

    A SAT verdict without a witness means existence was established but no
    assignment was produced (the board builder's default answer).
    """

    status: Status
    counters: Counters = field(default_factory=Counters)
    witness: Optional[Assignment] = None
    source: Optional[WitnessSource] = None
    evidence: Any = None
    augmented: Optional[Instance] = None
    budget: Optional[int] = None

    @classmethod
    def sat(cls, witness: Optional[Assignment], source: Optional[WitnessSource],
            counters: Counters, evidence: Any = None,
            augmented: Optional[Instance] = None) -> "Verdict":
        return cls(Status.SAT, counters, witness, source, evidence, augmented)

    @classmethod
    def unsat(cls, counters: Counters, evidence: Any = None) -> "Verdict":
        return cls(Status.UNSAT, counters, evidence=evidence)

    @classmethod
    def exhausted(cls, budget: int, counters: Counters) -> "Verdict":
        return cls(Status.EXHAUSTED, counters, budget=budget)

    @property
    def is_sat(self) -> bool:
        return self.status is Status.SAT

    @property
    def is_unsat(self) -> bool:
        return self.status is Status.UNSAT

    def __str__(self) -> str:
        if self.status is Status.SAT and self.witness is not None:
            return f"sat witness={self.witness} source={self.source.value}"
        if self.status is Status.EXHAUSTED:
            return f"exhausted budget={self.budget}"
        return self.status.value
