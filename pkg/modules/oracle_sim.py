"""
Oracle Simulation Module

Classical simulation of the quantum-coupled decision device: one oracle call
answers whether the instance, with some variables fixed and the rest left
free, has a satisfying completion.

- extract_solution(): decide, then fix bits x_{n-1} .. x_0 preferring 0,
  one oracle call per bit (n + 1 calls on satisfiable input, 1 otherwise)
- verify_unsat(): after a top-level "no solution", re-ask with each single
  variable fixed to 0 and to 1; any "yes" means the device is inconsistent
  (at most 2n + 1 calls)

The oracle is pluggable so a faulty device can be injected; an honest device
never reports Inconsistent.

Usage:
    verdict = extract_solution(instance)
    check = verify_unsat(instance)
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from modules.evaluation import PartialAssignment, eval_word, exists_completion
from modules.sat_model import (
    Assignment,
    Counters,
    Instance,
    InvariantViolation,
    Verdict,
    WitnessSource,
)

LOG = logging.getLogger(__name__)


class CompletionOracle:
    """
    Honest decision device backed by exists_completion.

    Subclass and override decide() to model a faulty device.
    """

    def __init__(self, backend: Optional[str] = None):
        self.backend = backend

    def decide(self, instance: Instance, partial: PartialAssignment,
               counters: Optional[Counters] = None) -> bool:
        return exists_completion(instance, partial, counters, backend=self.backend)


def extract_solution(instance: Instance, oracle: Optional[CompletionOracle] = None,
                     counters: Optional[Counters] = None) -> Verdict:
    """
    Decision plus bit-by-bit witness construction.

    Every variable is fixed, MSB first. For each, the 0-branch is tried; if
    the oracle rejects it the bit becomes 1 without a second call, since the
    parent was satisfiable. The result is the smallest satisfying assignment.

    Args:
        instance: Any instance (Simple or General)
        oracle: Decision device (default: honest CompletionOracle)
        counters: Optional run counters (oracle_calls, evaluations)

    Returns:
        SAT (source=oracle) or UNSAT

    Raises:
        InvariantViolation: the extracted witness does not evaluate true
    """
    oracle = oracle or CompletionOracle()
    counters = counters if counters is not None else Counters()
    n = instance.n
    partial = PartialAssignment.empty(n)

    if not oracle.decide(instance, partial, counters):
        LOG.info(f"[QSOLVE] ❌ No solution for {instance!r} (oracle_calls={counters.oracle_calls})")
        return Verdict.unsat(counters, evidence="oracle")

    for variable in range(n - 1, -1, -1):
        trial = partial.with_bit(variable, 0)
        if oracle.decide(instance, trial, counters):
            partial = trial
        else:
            partial = partial.with_bit(variable, 1)

    witness = Assignment(partial.values, n)
    if not eval_word(instance, witness.word, counters):
        LOG.error(f"[QSOLVE] ❌ Extracted witness {witness} does not satisfy {instance!r}")
        raise InvariantViolation(f"extracted witness {witness} does not evaluate true")

    LOG.info(f"[QSOLVE] ✅ Witness {witness} (oracle_calls={counters.oracle_calls})")
    return Verdict.sat(witness, WitnessSource.ORACLE, counters)


class UnsatOutcome(str, Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"
    NOT_APPLICABLE = "not_applicable"


@dataclass
class UnsatCheck:
    outcome: UnsatOutcome
    counters: Counters = field(default_factory=Counters)
    variable: Optional[int] = None
    value: Optional[int] = None

    def __str__(self) -> str:
        if self.outcome is UnsatOutcome.INCONSISTENT:
            return f"inconsistent x{self.variable}={self.value}"
        return self.outcome.value


def verify_unsat(instance: Instance, oracle: Optional[CompletionOracle] = None,
                 counters: Optional[Counters] = None) -> UnsatCheck:
    """
    Check that a "no solution" answer is consistent under single-variable
    restrictions: every restriction of an unsatisfiable instance must also be
    unsatisfiable.

    Returns:
        NOT_APPLICABLE if the top-level oracle reports a solution,
        INCONSISTENT(variable, value) on the first restriction reported
        satisfiable (variables scanned x_{n-1} first, value 0 before 1),
        CONSISTENT otherwise
    """
    oracle = oracle or CompletionOracle()
    counters = counters if counters is not None else Counters()
    n = instance.n
    empty = PartialAssignment.empty(n)

    if oracle.decide(instance, empty, counters):
        LOG.info(f"[QVERIFY] {instance!r} has a solution; nothing to verify")
        return UnsatCheck(UnsatOutcome.NOT_APPLICABLE, counters)

    for variable in range(n - 1, -1, -1):
        for value in (0, 1):
            if oracle.decide(instance, empty.with_bit(variable, value), counters):
                LOG.warning(f"[QVERIFY] ⚠️ Inconsistent device: x{variable}={value} reported "
                            f"satisfiable under a top-level 'no solution'")
                return UnsatCheck(UnsatOutcome.INCONSISTENT, counters, variable, value)

    LOG.info(f"[QVERIFY] ✅ No solution is consistent (oracle_calls={counters.oracle_calls})")
    return UnsatCheck(UnsatOutcome.CONSISTENT, counters)
