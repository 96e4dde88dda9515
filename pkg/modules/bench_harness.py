"""
Bench Harness Module

Runs (solver x instance family x n x m x seed x repetition) cells and reports
the counters each solver's cost claims are stated in: rows read, pair
removals, oracle calls, random draws.

Config (YAML, see bench/*.yaml):
    solvers: [linked, board]
    family: blocked
    n_range: [4, 10]
    m: null            # int, list of ints, or null for the family default
    seeds: 3           # count (0..k-1) or explicit list
    repetitions: 1
    budget: null       # probabilistic solver only
    workers: 1         # > 1 runs cells in a process pool
    cross_check: false # compare each verdict with exhaustive evaluation
    output: bench_results.csv

Report:
- records: one row per cell, fixed column order (RECORD_COLUMNS)
- summary: mean / median of every counter per solver, family and n
- slopes: least-squares slope of rows_read against m per solver, when m varies

Records are reproducible given the config except for wall time and RSS.
"""

import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import numpy as np
import pandas as pd
import yaml

from memory_monitor import memory_monitor
from modules.classical_solvers import (
    enumerate_solutions,
    solve_board,
    solve_linked,
    solve_probabilistic,
)
from modules.evaluation import solutions_by_exhaustion
from modules.instance_generators import (
    blocked_board,
    from_solution_set,
    paired_instance,
    random_instance,
    unique_solution_instance,
)
from modules.oracle_sim import extract_solution
from modules.sat_model import (
    Counters,
    Instance,
    InstanceKind,
    check_table_capacity,
    check_variable_count,
)
from modules.ternary_encoding import augment_with_witness, expand_to_simple

LOG = logging.getLogger(__name__)

DEFAULT_WORKERS = int(os.getenv("SSAT_BENCH_WORKERS", "1"))

# Exhaustive cross-check is skipped above this n
CROSS_CHECK_CAP = 16

COUNTER_COLUMNS = ["rows_read", "evaluations", "removals", "oracle_calls", "random_draws", "comparisons"]
RECORD_COLUMNS = (
    ["solver", "family", "n", "m", "seed", "repetition", "verdict"]
    + COUNTER_COLUMNS
    + ["agrees", "wall_time_s", "peak_rss_mb"]
)


# ------------------------------------------------------------------------------
# SOLVERS
# ------------------------------------------------------------------------------

def _run_board(instance: Instance, seed: int, budget: Optional[int], counters: Counters) -> str:
    return solve_board(expand_to_simple(instance), counters).status.value


def _run_linked(instance: Instance, seed: int, budget: Optional[int], counters: Counters) -> str:
    return solve_linked(expand_to_simple(instance), counters).status.value


def _run_enumerate(instance: Instance, seed: int, budget: Optional[int], counters: Counters) -> str:
    solutions = enumerate_solutions(expand_to_simple(instance), counters)
    return "sat" if len(solutions) else "unsat"


def _run_prob(instance: Instance, seed: int, budget: Optional[int], counters: Counters) -> str:
    return solve_probabilistic(instance, seed=seed, budget=budget, counters=counters).status.value


def _run_oracle(instance: Instance, seed: int, budget: Optional[int], counters: Counters) -> str:
    return extract_solution(instance, counters=counters).status.value


SolverFn = Callable[[Instance, int, Optional[int], Counters], str]

SOLVERS: Dict[str, SolverFn] = {
    "board": _run_board,
    "linked": _run_linked,
    "enumerate": _run_enumerate,
    "prob": _run_prob,
    "oracle": _run_oracle,
}

# Solvers that allocate one slot per candidate
TABLE_SOLVERS = {"board", "linked", "enumerate", "prob"}


# ------------------------------------------------------------------------------
# FAMILIES
# ------------------------------------------------------------------------------

def _blocked(n: int, m: Optional[int], seed: int) -> Instance:
    return blocked_board(n)


def _unique(n: int, m: Optional[int], seed: int) -> Instance:
    # separate stream from the solver seed so the first draw is not the witness
    witness = random.Random(f"witness:{seed}").randrange(1 << n)
    return unique_solution_instance(n, witness, seed=seed)


def _random_simple(n: int, m: Optional[int], seed: int) -> Instance:
    return random_instance(n, (1 << (n - 1)) if m is None else m, seed=seed)


def _random_general(n: int, m: Optional[int], seed: int) -> Instance:
    # fixed width 3 at 4n clauses sits near the sat/unsat threshold
    width = min(n, 3)
    return random_instance(n, 4 * n if m is None else m, seed=seed,
                           profile=InstanceKind.GENERAL, min_width=width, max_width=width)


def _solution_set(n: int, m: Optional[int], seed: int) -> Instance:
    rng = random.Random(seed)
    solutions = [z for z in range(1 << n) if rng.random() < 0.5]
    return from_solution_set(n, solutions, seed=seed)


def _paired(n: int, m: Optional[int], seed: int) -> Instance:
    pairs = (1 << (n - 2)) if m is None else m // 2
    return paired_instance(n, pairs, seed=seed)


def _augmented(n: int, m: Optional[int], seed: int) -> Instance:
    base = _random_simple(n, m, seed)
    verdict = solve_linked(base)
    if verdict.witness is None:
        return base
    return augment_with_witness(base, verdict.witness)


FamilyFn = Callable[[int, Optional[int], int], Instance]

FAMILIES: Dict[str, FamilyFn] = {
    "blocked": _blocked,
    "unique": _unique,
    "random-simple": _random_simple,
    "random-general": _random_general,
    "solution-set": _solution_set,
    "paired": _paired,
    "augmented": _augmented,
}

# Families whose generators enumerate all 2^n words
TABLE_FAMILIES = {"blocked", "unique", "solution-set", "augmented"}


# ------------------------------------------------------------------------------
# CONFIG
# ------------------------------------------------------------------------------

CONFIG_KEYS = {"solvers", "family", "n_range", "m", "seeds", "repetitions", "budget",
               "workers", "cross_check", "output"}


@dataclass
class BenchConfig:
    solvers: List[str]
    family: str
    n_range: List[int]
    m: List[Optional[int]] = field(default_factory=lambda: [None])
    seeds: List[int] = field(default_factory=lambda: [0])
    repetitions: int = 1
    budget: Optional[int] = None
    workers: int = DEFAULT_WORKERS
    cross_check: bool = False
    output: Optional[str] = None

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "BenchConfig":
        unknown = set(raw) - CONFIG_KEYS
        if unknown:
            raise ValueError(f"Unknown bench config keys: {sorted(unknown)}")
        for key in ("solvers", "family", "n_range"):
            if key not in raw:
                raise ValueError(f"Bench config is missing '{key}'")

        solvers = raw["solvers"]
        if isinstance(solvers, str):
            solvers = [solvers]
        m = raw.get("m")
        m_values = list(m) if isinstance(m, (list, tuple)) else [m]
        seeds = raw.get("seeds", 1)
        seed_list = list(range(seeds)) if isinstance(seeds, int) else [int(s) for s in seeds]

        config = cls(
            solvers=list(solvers),
            family=raw["family"],
            n_range=list(raw["n_range"]),
            m=m_values,
            seeds=seed_list,
            repetitions=int(raw.get("repetitions", 1)),
            budget=raw.get("budget"),
            workers=int(raw.get("workers") or DEFAULT_WORKERS),
            cross_check=bool(raw.get("cross_check", False)),
            output=raw.get("output"),
        )
        config.validate()
        return config

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "BenchConfig":
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {path}")
        with open(path, encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
        return cls.from_dict(raw)

    def n_values(self) -> List[int]:
        lo, hi = self.n_range
        return list(range(lo, hi + 1))

    def validate(self) -> None:
        """Fail fast on anything that would break mid-run"""
        for name in self.solvers:
            if name not in SOLVERS:
                raise ValueError(f"Unknown solver: {name} (known: {sorted(SOLVERS)})")
        if self.family not in FAMILIES:
            raise ValueError(f"Unknown family: {self.family} (known: {sorted(FAMILIES)})")
        if len(self.n_range) != 2 or self.n_range[0] > self.n_range[1]:
            raise ValueError(f"n_range must be [lo, hi] with lo <= hi, got {self.n_range}")
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be at least 1, got {self.repetitions}")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")
        if not self.seeds:
            raise ValueError("seeds must not be empty")

        lo, hi = self.n_range
        check_variable_count(lo)
        check_variable_count(hi)
        if self.family in TABLE_FAMILIES or TABLE_SOLVERS.intersection(self.solvers):
            check_table_capacity(hi)


# ------------------------------------------------------------------------------
# CELLS
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class BenchCell:
    solver: str
    family: str
    n: int
    m: Optional[int]
    seed: int
    repetition: int
    budget: Optional[int] = None
    cross_check: bool = False


def build_cells(config: BenchConfig) -> List[BenchCell]:
    """Cells in report order: n, m, seed, repetition, solver"""
    return [
        BenchCell(solver, config.family, n, m, seed, repetition, config.budget, config.cross_check)
        for n, m, seed, repetition, solver in product(
            config.n_values(), config.m, config.seeds, range(config.repetitions), config.solvers
        )
    ]


def run_cell(cell: BenchCell) -> Dict[str, Any]:
    """Generate the instance, run one solver, return one record"""
    instance = FAMILIES[cell.family](cell.n, cell.m, cell.seed)
    counters = Counters()

    with memory_monitor.measure(f"{cell.solver}_n{cell.n}") as rss:
        started = time.perf_counter()
        verdict = SOLVERS[cell.solver](instance, cell.seed, cell.budget, counters)
        elapsed = time.perf_counter() - started

    agrees = None
    if cell.cross_check and cell.n <= CROSS_CHECK_CAP and verdict != "exhausted":
        expected = "sat" if len(solutions_by_exhaustion(instance)) else "unsat"
        agrees = verdict == expected
        if not agrees:
            LOG.error(f"[BENCH] ❌ {cell.solver} said {verdict}, exhaustion says {expected} ({cell})")

    record = {
        "solver": cell.solver,
        "family": cell.family,
        "n": cell.n,
        "m": instance.m,
        "seed": cell.seed,
        "repetition": cell.repetition,
        "verdict": verdict,
        **counters.as_dict(),
        "agrees": agrees,
        "wall_time_s": elapsed,
        "peak_rss_mb": rss["peak_rss_mb"],
    }
    LOG.debug(f"[BENCH] {record}")
    return record


# ------------------------------------------------------------------------------
# REPORT
# ------------------------------------------------------------------------------

@dataclass
class BenchReport:
    records: pd.DataFrame
    summary: pd.DataFrame
    slopes: Dict[str, float]

    def to_csv(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.records.to_csv(path, index=False)
        LOG.info(f"[BENCH] Wrote {len(self.records)} records to {path}")


def summarize(records: pd.DataFrame) -> pd.DataFrame:
    """Mean and median of every counter per solver, family and n"""
    if records.empty:
        return pd.DataFrame()
    grouped = records.groupby(["solver", "family", "n"])[COUNTER_COLUMNS + ["wall_time_s"]]
    summary = grouped.agg(["mean", "median"])
    summary.columns = [f"{column}_{stat}" for column, stat in summary.columns]
    return summary.reset_index()


def fit_slopes(records: pd.DataFrame) -> Dict[str, float]:
    """Least-squares slope of rows_read against m, per solver with varying m"""
    slopes = {}
    for solver, group in records.groupby("solver"):
        if group["m"].nunique() < 2:
            continue
        slope, _ = np.polyfit(group["m"].to_numpy(dtype=float), group["rows_read"].to_numpy(dtype=float), 1)
        slopes[solver] = float(slope)
    return slopes


def run_bench(config: Union[BenchConfig, Dict[str, Any]]) -> BenchReport:
    """
    Run every cell of the config and collect the report.

    Args:
        config: BenchConfig or a raw dict (validated before any cell runs)

    Returns:
        BenchReport (also written to config.output when set)
    """
    if not isinstance(config, BenchConfig):
        config = BenchConfig.from_dict(config)
    cells = build_cells(config)
    LOG.info(f"[BENCH] Running {len(cells)} cells ({config.family}, solvers={config.solvers}, "
             f"workers={config.workers})")
    started = time.perf_counter()

    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            results = list(executor.map(run_cell, cells))
    else:
        results = [run_cell(cell) for cell in cells]
        LOG.debug(f"[BENCH] Memory {memory_monitor.summary()}")
        memory_monitor.clear()

    records = pd.DataFrame(results, columns=RECORD_COLUMNS)
    report = BenchReport(records, summarize(records), fit_slopes(records))
    LOG.info(f"[BENCH] ✅ {len(records)} records in {time.perf_counter() - started:.1f}s")

    if config.output:
        report.to_csv(config.output)
    return report


def load_and_run(path: Union[str, Path], overrides: Optional[Dict[str, Any]] = None) -> BenchReport:
    """Read a YAML config, apply overrides, run"""
    with open(path, encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    raw.update(overrides or {})
    return run_bench(raw)
