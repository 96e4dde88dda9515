#!/usr/bin/env python3
"""
Command-line front end for the SSAT toolkit.

Commands:
    board FILE [--render] [--locate]      direct-addressing board builder
    solve FILE [--reverse]                candidate-table solver
    enumerate FILE [--dump-table]         exact solution set
    prob FILE [--seed S] [--budget B]     uniform draws without replacement
    qsolve FILE [--backend B]             oracle bit-fixing extraction
    qverify FILE [--backend B]            consistency of a "no solution" answer
    check FILE RESULT                     re-verify a saved JSON witness
    gen --from-solutions W.. | --blocked | --random   instance generation
    convert FILE --to FMT [--simple]      format conversion
    bench --config YAML                   counter benchmark, CSV report

FILE may be "-" for stdin; the format (DIMACS, tsat, ssat) is detected.

Global flags: --format {text,json}, --counters, --log-level.

Exit codes:
    0 sat (or consistent / not applicable / success)
    1 unsat (or inconsistent)
    2 exhausted budget
    64 usage error, capacity error, unsupported instance
    65 parse error
    70 internal self-check failure

Examples:
    python3 ssat_cli.py solve examples.ssat
    python3 ssat_cli.py --format json qsolve problem.cnf
    python3 ssat_cli.py gen --from-solutions 000 001 100 101 110 111
"""

import argparse
import logging
import os
import sys
from typing import Optional, Sequence

from modules.bench_harness import load_and_run
from modules.classical_solvers import build_knowledge_table, solve_board, solve_linked, solve_probabilistic
from modules.evaluation import GENERAL_BACKEND, SIMPLE_BACKEND
from modules.instance_generators import blocked_board, from_solution_set, random_instance
from modules.json_utils import dumps, loads_result, solutions_to_dict, verdict_to_dict, witness_from_result
from modules.oracle_sim import CompletionOracle, UnsatOutcome, extract_solution, verify_unsat
from modules.sat_formats import FORMATS, decode_text, format_instance, parse_instance, render_board
from modules.sat_model import (
    Assignment,
    CapacityError,
    Counters,
    EncodingError,
    Instance,
    InstanceKind,
    InvariantViolation,
    SolutionSet,
    Status,
    UnsupportedInstanceError,
    Verdict,
)
from modules.ternary_encoding import expand_to_simple

LOG = logging.getLogger("ssat_cli")

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_EXHAUSTED = 2
EXIT_USAGE = 64
EXIT_PARSE = 65
EXIT_SOFTWARE = 70

STATUS_EXIT = {
    Status.SAT: EXIT_SAT,
    Status.UNSAT: EXIT_UNSAT,
    Status.EXHAUSTED: EXIT_EXHAUSTED,
}


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting with status 2"""

    def error(self, message: str):
        raise UsageError(message)


# ------------------------------------------------------------------------------
# INPUT / OUTPUT
# ------------------------------------------------------------------------------

def read_input(path: str) -> Instance:
    if path == "-":
        text = decode_text(sys.stdin.buffer.read(), "stdin")
    else:
        if not os.path.isfile(path):
            raise UsageError(f"File '{path}' does not exist")
        with open(path, "rb") as f:
            text = decode_text(f.read(), path)
    instance = parse_instance(text)
    LOG.info(f"[CLI] Read {instance!r} from {path}")
    return instance


def write_output(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        LOG.info(f"[CLI] Wrote {path}")
    else:
        sys.stdout.write(text)


def format_counters(counters: Counters) -> str:
    return "counters: " + " ".join(f"{key}={value}" for key, value in counters.as_dict().items())


def emit_verdict(args: argparse.Namespace, verdict: Verdict, instance: Instance) -> int:
    if args.format == "json":
        print(dumps(verdict_to_dict(verdict, instance)))
    else:
        print(verdict)
        if args.counters:
            print(format_counters(verdict.counters))
    return STATUS_EXIT[verdict.status]


def simple_input(args: argparse.Namespace) -> Instance:
    instance = read_input(args.file)
    return expand_to_simple(instance) if args.expand else instance


# ------------------------------------------------------------------------------
# COMMANDS
# ------------------------------------------------------------------------------

def cmd_board(args: argparse.Namespace) -> int:
    instance = simple_input(args)
    verdict = solve_board(instance, locate_witness=args.locate)
    code = emit_verdict(args, verdict, instance)
    if args.render and args.format == "text":
        print(render_board(instance))
    return code


def cmd_solve(args: argparse.Namespace) -> int:
    instance = simple_input(args)
    return emit_verdict(args, solve_linked(instance, reverse=args.reverse), instance)


def cmd_enumerate(args: argparse.Namespace) -> int:
    instance = simple_input(args)
    counters = Counters()
    table = build_knowledge_table(instance, counters)
    solutions = SolutionSet.of(instance.n, table)

    if args.format == "json":
        print(dumps(solutions_to_dict(solutions, counters.as_dict(), instance)))
    else:
        for bits in solutions.as_bits():
            print(bits)
        print(f"{len(solutions)} solutions")
        if args.counters:
            print(format_counters(counters))
        if args.dump_table:
            print(table.dump())
    return EXIT_SAT if len(solutions) else EXIT_UNSAT


def cmd_prob(args: argparse.Namespace) -> int:
    instance = read_input(args.file)
    verdict = solve_probabilistic(instance, seed=args.seed, budget=args.budget)
    return emit_verdict(args, verdict, instance)


def cmd_qsolve(args: argparse.Namespace) -> int:
    instance = read_input(args.file)
    verdict = extract_solution(instance, CompletionOracle(args.backend))
    return emit_verdict(args, verdict, instance)


def cmd_qverify(args: argparse.Namespace) -> int:
    instance = read_input(args.file)
    check = verify_unsat(instance, CompletionOracle(args.backend))
    if args.format == "json":
        print(dumps({
            "status": check.outcome.value,
            "variable": check.variable,
            "value": check.value,
            "counters": check.counters.as_dict(),
        }))
    else:
        print(check)
        if args.counters:
            print(format_counters(check.counters))
    return EXIT_UNSAT if check.outcome is UnsatOutcome.INCONSISTENT else EXIT_SAT


def cmd_check(args: argparse.Namespace) -> int:
    instance = read_input(args.file)
    if not os.path.isfile(args.result):
        raise UsageError(f"File '{args.result}' does not exist")
    with open(args.result, "rb") as f:
        document = loads_result(decode_text(f.read(), args.result))
    witness = witness_from_result(document, instance)

    if args.format == "json":
        print(dumps({"status": document["status"], "witness": str(witness) if witness is not None else None,
                     "verified": witness is not None}))
    elif witness is not None:
        print(f"verified witness={witness}")
    else:
        print(f"no witness (status={document['status']})")
    return EXIT_SAT


def cmd_gen(args: argparse.Namespace) -> int:
    if args.from_solutions is not None:
        if args.n is None and not args.from_solutions:
            raise UsageError("gen --from-solutions with no words needs -n")
        words = [Assignment.from_bits(bits) for bits in args.from_solutions]
        n = args.n if args.n is not None else words[0].n
        if any(w.n != n for w in words):
            raise EncodingError(f"every solution must have {n} digits")
        instance = from_solution_set(n, [w.word for w in words], seed=args.seed)
    else:
        if args.n is None:
            raise UsageError("gen --blocked/--random needs -n")
        if args.blocked:
            instance = blocked_board(args.n)
        else:
            if args.m is None:
                raise UsageError("gen --random needs -m")
            profile = InstanceKind.GENERAL if args.general else InstanceKind.SIMPLE
            instance = random_instance(args.n, args.m, seed=args.seed, profile=profile,
                                       max_width=args.max_width, distinct=args.distinct,
                                       min_width=args.min_width)
    write_output(format_instance(instance, args.to), args.output)
    return EXIT_SAT


def cmd_convert(args: argparse.Namespace) -> int:
    instance = read_input(args.file)
    if args.simple:
        instance = expand_to_simple(instance)
    write_output(format_instance(instance, args.to), args.output)
    return EXIT_SAT


def cmd_bench(args: argparse.Namespace) -> int:
    overrides = {}
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.output is not None:
        overrides["output"] = args.output
    if not os.path.isfile(args.config):
        raise UsageError(f"Config file '{args.config}' does not exist")
    report = load_and_run(args.config, overrides)

    if args.format == "json":
        print(dumps({
            "records": len(report.records),
            "summary": report.summary.to_dict(orient="records"),
            "slopes": report.slopes,
        }))
    else:
        print(report.summary.to_string(index=False))
        for solver, slope in report.slopes.items():
            print(f"slope rows_read/m [{solver}]: {slope:.4f}")
    return EXIT_SAT


# ------------------------------------------------------------------------------
# PARSER
# ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # Global flags are accepted before or after the command name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS,
                        help="Result format (default text)")
    common.add_argument("--counters", action="store_true", default=argparse.SUPPRESS,
                        help="Print run counters with text results")
    common.add_argument("--log-level", default=argparse.SUPPRESS,
                        help="Logging level (default $SSAT_LOG_LEVEL or WARNING)")

    parser = CliParser(prog="ssat_cli.py", description="Simple-SAT solvers, generators and benchmarks")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--counters", action="store_true", default=False)
    parser.add_argument("--log-level", default=os.getenv("SSAT_LOG_LEVEL", "WARNING"))
    sub = parser.add_subparsers(dest="command", parser_class=CliParser)
    sub.required = True

    def add(name: str, handler, help_text: str, with_file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        if with_file:
            p.add_argument("file", help="Instance file (DIMACS, tsat or ssat), '-' for stdin")
        p.set_defaults(handler=handler)
        return p

    p = add("board", cmd_board, "Direct-addressing board builder")
    p.add_argument("--render", action="store_true", help="Print the ■/□ board")
    p.add_argument("--locate", action="store_true", help="Read a witness off the first empty address")
    p.add_argument("--expand", action="store_true", help="Expand General input to full-width rows")

    p = add("solve", cmd_solve, "Candidate-table solver")
    p.add_argument("--reverse", action="store_true", help="Read rows last-to-first")
    p.add_argument("--expand", action="store_true", help="Expand General input to full-width rows")

    p = add("enumerate", cmd_enumerate, "Exact solution set")
    p.add_argument("--dump-table", action="store_true", help="Print the candidate-table links")
    p.add_argument("--expand", action="store_true", help="Expand General input to full-width rows")

    p = add("prob", cmd_prob, "Uniform draws without replacement")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=None, help="Maximum number of draws")

    for name, handler, help_text in (
        ("qsolve", cmd_qsolve, "Oracle bit-fixing witness extraction"),
        ("qverify", cmd_qverify, "Check a 'no solution' answer under single-variable restrictions"),
    ):
        p = add(name, handler, help_text)
        p.add_argument("--backend", choices=[SIMPLE_BACKEND, GENERAL_BACKEND], default=None)

    p = add("check", cmd_check, "Re-verify the witness of a saved JSON result")
    p.add_argument("result", help="JSON result object written by --format json")

    p = add("gen", cmd_gen, "Generate an instance", with_file=False)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--from-solutions", nargs="*", metavar="WORD",
                      help="Prescribed solution set as binary words")
    mode.add_argument("--blocked", action="store_true", help="All 2^n rows in board order")
    mode.add_argument("--random", action="store_true", help="Seeded random instance")
    p.add_argument("-n", type=int, default=None)
    p.add_argument("-m", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--general", action="store_true", help="Random clauses of width 1..max-width")
    p.add_argument("--max-width", type=int, default=None)
    p.add_argument("--min-width", type=int, default=1)
    p.add_argument("--distinct", action="store_true", help="Sample rows without replacement")
    p.add_argument("--to", choices=FORMATS, default=None)
    p.add_argument("-o", "--output", default=None)

    p = add("convert", cmd_convert, "Convert between formats")
    p.add_argument("--to", choices=FORMATS, required=True)
    p.add_argument("--simple", action="store_true", help="Expand to full-width rows first")
    p.add_argument("-o", "--output", default=None)

    p = add("bench", cmd_bench, "Run a benchmark config", with_file=False)
    p.add_argument("--config", required=True, help="YAML bench config")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--output", default=None, help="CSV path (overrides the config)")

    return parser


def setup_logging(level: str) -> None:
    numeric = getattr(logging, str(level).upper(), None)
    if not isinstance(numeric, int):
        raise UsageError(f"Unknown log level: {level}")
    logging.basicConfig(level=numeric, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        setup_logging(args.log_level)
        return args.handler(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EncodingError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (CapacityError, UnsupportedInstanceError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as e:
        LOG.error(f"[CLI] ❌ Self-check failed: {e}")
        return EXIT_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
