"""
SAT Formats Module

Readers and writers for the three instance formats plus the visual board.

Formats:
- DIMACS CNF: "p cnf n m" header, signed literals terminated by 0. Literal
  v > 0 is x_{v-1}, v < 0 its negation. Comment lines start with "c"; a
  line holding "%" ends the clause section (SATLIB files).
- tsat: "tsat n m" header then m ternary digit lines (0/1/2, MSB first).
- ssat: "ssat n m" header then m binary digit lines (full-width rows only).

Every reader raises FormatError with the 1-based line number on malformed
input; every reader records its format as the instance origin, which
write_text uses to keep round trips byte-identical.

Usage:
    instance = read_text("ssat 3 2\\n101\\n100\\n")
    print(write_dimacs(instance))
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

from modules.sat_model import (
    EncodingError,
    FormatError,
    Instance,
    TernaryClause,
    UnsupportedInstanceError,
    check_variable_count,
)
from modules.ternary_encoding import parse_ternary, render_ternary

LOG = logging.getLogger(__name__)

DIMACS = "dimacs"
TSAT = "tsat"
SSAT = "ssat"
FORMATS = (DIMACS, TSAT, SSAT)

FILLED = "■"
EMPTY = "□"
ABSENT = "·"


# ------------------------------------------------------------------------------
# DIMACS CNF
# ------------------------------------------------------------------------------

def _parse_dimacs_header(tokens: List[str], line_no: int):
    if len(tokens) != 4 or tokens[1] != "cnf":
        raise FormatError(f"bad problem line {' '.join(tokens)!r}, expected 'p cnf n m'", line_no)
    try:
        n, m = int(tokens[2]), int(tokens[3])
    except ValueError:
        raise FormatError(f"non-integer counts in problem line {' '.join(tokens)!r}", line_no)
    if m < 0:
        raise FormatError(f"negative clause count {m}", line_no)
    try:
        check_variable_count(n)
    except EncodingError as e:
        raise FormatError(str(e), line_no)
    return n, m


def _dimacs_clause(literals: List[int], n: int, line_no: int) -> TernaryClause:
    if not literals:
        raise FormatError("empty clause (a clause needs at least one variable)", line_no)
    present = 0
    sign = 0
    for literal in literals:
        variable = abs(literal) - 1
        if variable >= n:
            raise FormatError(f"literal {literal} outside variables 1..{n}", line_no)
        bit = 1 << variable
        positive = literal > 0
        if present & bit:
            if bool(sign & bit) != positive:
                raise FormatError(f"variable {abs(literal)} occurs with both signs", line_no)
            continue
        present |= bit
        if positive:
            sign |= bit
    return TernaryClause(present, sign)


def read_dimacs(text: str) -> Instance:
    """
    Parse DIMACS CNF text.

    Same-sign repeats of a variable inside a clause are merged. A final
    clause missing its terminating 0 is accepted.

    Raises:
        FormatError: missing or bad header, empty clause, conflicting signs,
                     out-of-range literal, or clause count differing from m
    """
    header = None
    clauses: List[TernaryClause] = []
    pending: List[int] = []
    pending_line = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise FormatError("second problem line", line_no)
            header = _parse_dimacs_header(tokens, line_no)
            continue
        if header is None:
            raise FormatError("clause before the 'p cnf' problem line", line_no)

        n, _ = header
        for token in tokens:
            try:
                literal = int(token)
            except ValueError:
                raise FormatError(f"non-integer literal {token!r}", line_no)
            if literal == 0:
                clauses.append(_dimacs_clause(pending, n, line_no))
                pending = []
            else:
                if not pending:
                    pending_line = line_no
                pending.append(literal)

    if header is None:
        raise FormatError("missing 'p cnf n m' problem line")
    n, m = header
    if pending:
        clauses.append(_dimacs_clause(pending, n, pending_line))
    if len(clauses) != m:
        raise FormatError(f"header declares {m} clauses, found {len(clauses)}")

    instance = Instance(n, clauses, origin=DIMACS, validate=False)
    LOG.debug(f"[DIMACS] Read {instance!r}")
    return instance


def write_dimacs(instance: Instance) -> str:
    """DIMACS text; literals listed from the highest variable down"""
    lines = [f"p cnf {instance.n} {instance.m}"]
    for present, sign in instance.clauses:
        literals = []
        for i in range(instance.n - 1, -1, -1):
            bit = 1 << i
            if present & bit:
                literals.append(str(i + 1) if sign & bit else str(-(i + 1)))
        literals.append("0")
        lines.append(" ".join(literals))
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------------------
# TSAT / SSAT TEXT
# ------------------------------------------------------------------------------

def read_text(text: str) -> Instance:
    """
    Parse a tsat or ssat document. Blank lines are ignored.

    Raises:
        FormatError: bad header, wrong line count or length, foreign digit,
                     all-2 line, or digit 2 in an ssat file
    """
    lines = [(no, raw.strip()) for no, raw in enumerate(text.splitlines(), start=1) if raw.strip()]
    if not lines:
        raise FormatError("empty document")

    header_no, header = lines[0]
    tokens = header.split()
    if len(tokens) != 3 or tokens[0] not in (TSAT, SSAT):
        raise FormatError(f"bad header {header!r}, expected 'tsat n m' or 'ssat n m'", header_no)
    kind = tokens[0]
    try:
        n, m = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise FormatError(f"non-integer counts in header {header!r}", header_no)
    if m < 0:
        raise FormatError(f"negative clause count {m}", header_no)
    try:
        check_variable_count(n)
    except EncodingError as e:
        raise FormatError(str(e), header_no)

    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header declares {m} lines, found {len(body)}")

    clauses = []
    for line_no, digits in body:
        if kind == SSAT and "2" in digits:
            raise FormatError(f"digit 2 in ssat row {digits!r}", line_no)
        try:
            clauses.append(parse_ternary(digits, n))
        except EncodingError as e:
            raise FormatError(str(e), line_no)

    instance = Instance(n, clauses, origin=kind, validate=False)
    LOG.debug(f"[TEXT] Read {kind} {instance!r}")
    return instance


def text_kind(instance: Instance) -> str:
    """Header word write_text picks: the origin when it is tsat/ssat, else by kind"""
    if instance.origin in (TSAT, SSAT) and (instance.origin == TSAT or instance.is_simple):
        return instance.origin
    return SSAT if instance.is_simple else TSAT


def write_text(instance: Instance, kind: Optional[str] = None) -> str:
    """
    tsat or ssat document.

    Args:
        instance: Any instance
        kind: "tsat" or "ssat"; default from text_kind()

    Raises:
        UnsupportedInstanceError: ssat requested for a General instance
    """
    kind = kind or text_kind(instance)
    if kind not in (TSAT, SSAT):
        raise ValueError(f"Unknown text format: {kind}")
    if kind == SSAT:
        instance.require_simple("ssat output")
    n = instance.n
    lines = [f"{kind} {n} {instance.m}"]
    lines.extend(render_ternary(clause, n) for clause in instance.clauses)
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------------------
# FILES
# ------------------------------------------------------------------------------

def detect_format(text: str) -> str:
    """dimacs, tsat or ssat, from the first meaningful line"""
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        word = line.split()[0]
        if word == "p":
            return DIMACS
        if word in (TSAT, SSAT):
            return word
        break
    raise FormatError("unrecognised instance format (expected 'p cnf', 'tsat' or 'ssat' header)")


def parse_instance(text: str, fmt: Optional[str] = None) -> Instance:
    fmt = fmt or detect_format(text)
    if fmt == DIMACS:
        return read_dimacs(text)
    return read_text(text)


def decode_text(data: bytes, source: str = "input") -> str:
    """UTF-8 instance text; undecodable bytes are a format error"""
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise FormatError(f"{source} is not valid UTF-8 (byte {e.start}): {e.reason}") from e


def load_instance(path: Union[str, Path], fmt: Optional[str] = None) -> Instance:
    """Read an instance file, detecting the format unless given"""
    text = decode_text(Path(path).read_bytes(), str(path))
    instance = parse_instance(text, fmt)
    LOG.info(f"[FORMATS] Loaded {instance!r} from {path}")
    return instance


def format_instance(instance: Instance, fmt: Optional[str] = None) -> str:
    """Serialize to `fmt` (default: write_text's choice)"""
    if fmt == DIMACS:
        return write_dimacs(instance)
    return write_text(instance, fmt)


def dump_instance(instance: Instance, path: Union[str, Path], fmt: Optional[str] = None) -> None:
    Path(path).write_text(format_instance(instance, fmt), encoding="utf-8")
    LOG.info(f"[FORMATS] Wrote {instance!r} to {path}")


# ------------------------------------------------------------------------------
# VISUAL BOARD
# ------------------------------------------------------------------------------

_CELLS: Dict[str, str] = {"0": FILLED, "1": EMPTY, "2": ABSENT}


def render_board(instance: Instance) -> str:
    """
    One line per clause: ■ for digit 0, □ for digit 1, · for an absent
    variable. blocked_board(1) renders as "■" over "□".
    """
    n = instance.n
    lines = []
    for clause in instance.clauses:
        lines.append("".join(_CELLS[d] for d in render_ternary(clause, n)))
    return "\n".join(lines)
