"""
JSON Utilities Module

Result-object serialization for the CLI, and re-reading a saved result object
to check its witness against an instance.

Result object, one per run:
    {"status": "sat"|"unsat"|"exhausted",
     "witness": "<MSB-first binary string>" | null,
     "source": "row"|"residual"|"oracle"|"board"|"draw" | null,
     "counters": {...},
     "augmented_rows": m or m+1}
"""

import json
import logging
from typing import Any, Dict, Optional

from modules.evaluation import eval_circuit
from modules.sat_model import Assignment, FormatError, Instance, SolutionSet, Verdict

LOG = logging.getLogger(__name__)


def verdict_to_dict(verdict: Verdict, instance: Instance) -> Dict[str, Any]:
    """Result object for one solver run on `instance`"""
    document = {
        "status": verdict.status.value,
        "witness": str(verdict.witness) if verdict.witness is not None else None,
        "source": verdict.source.value if verdict.source is not None else None,
        "counters": verdict.counters.as_dict(),
        "augmented_rows": verdict.augmented.m if verdict.augmented is not None else instance.m,
    }
    if verdict.budget is not None:
        document["budget"] = verdict.budget
    return document


def solutions_to_dict(solutions: SolutionSet, counters: Dict[str, int], instance: Instance) -> Dict[str, Any]:
    """Result object for enumeration; status follows emptiness of the set"""
    members = solutions.as_bits()
    return {
        "status": "sat" if members else "unsat",
        "witness": members[0] if members else None,
        "source": None,
        "counters": counters,
        "augmented_rows": instance.m,
        "solutions": members,
    }


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, ensure_ascii=False)


def loads_result(text: str) -> Dict[str, Any]:
    """
    Parse a saved result object.

    Raises:
        FormatError: not JSON, or not an object with a "status" key
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"result is not valid JSON: {e.msg}", e.lineno) from e
    if not isinstance(document, dict) or "status" not in document:
        raise FormatError("result is not an object with a \"status\" key")
    LOG.debug(f"[JSON] Loaded result status={document['status']}")
    return document


def witness_from_result(document: Dict[str, Any], instance: Instance) -> Optional[Assignment]:
    """
    Witness of a result object, checked against a (re-read) instance.

    Raises:
        FormatError: witness is not an n-digit binary string, or does not
                     evaluate true on the instance
    """
    bits = document.get("witness")
    if bits is None:
        return None
    if not isinstance(bits, str) or len(bits) != instance.n or set(bits) - {"0", "1"}:
        raise FormatError(f"witness {bits!r} is not a {instance.n}-digit binary string")
    witness = Assignment.from_bits(bits)
    if not eval_circuit(instance, witness):
        raise FormatError(f"witness {bits} does not satisfy {instance!r}")
    return witness
