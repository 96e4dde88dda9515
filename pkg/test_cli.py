#!/usr/bin/env python3
"""
Tests for the command-line front end: commands, output formats and exit codes.
"""

import json
import sys

import pytest

import ssat_cli
from modules.json_utils import witness_from_result
from modules.sat_formats import read_dimacs, read_text

SSAT_3_2 = "ssat 3 2\n101\n100\n"
BLOCKED_2 = "ssat 2 4\n00\n11\n01\n10\n"
SAT_5_3 = "tsat 5 3\n10221\n21122\n01012\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def test_solve_text_and_counters(files, capsys):
    code = ssat_cli.main(["--counters", "solve", files("a.ssat", SSAT_3_2)])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "sat witness=101 source=row"
    assert out[1].startswith("counters: rows_read=1")
    print("✅ PASSED - solve prints the verdict and counters")


def test_solve_json_after_command(files, capsys):
    path = files("a.ssat", SSAT_3_2)
    code = ssat_cli.main(["solve", path, "--format", "json"])
    document = json.loads(capsys.readouterr().out)
    assert code == 0
    assert document["status"] == "sat" and document["source"] == "row"
    assert document["augmented_rows"] == 2
    assert witness_from_result(document, read_text(SSAT_3_2)).word == 5
    print("✅ PASSED - JSON result object")


def test_unsat_exit_codes(files, capsys):
    path = files("blocked.ssat", BLOCKED_2)
    assert ssat_cli.main(["solve", path]) == 1
    assert ssat_cli.main(["board", path]) == 1
    assert ssat_cli.main(["qsolve", path]) == 1
    assert ssat_cli.main(["prob", path, "--seed", "3"]) == 1
    assert ssat_cli.main(["prob", path, "--seed", "3", "--budget", "1"]) == 2
    assert ssat_cli.main(["qverify", path]) == 0
    out = capsys.readouterr().out
    assert "exhausted budget=1" in out
    assert "consistent" in out
    print("✅ PASSED - unsat and exhausted exit codes")


def test_board_render(files, capsys):
    code = ssat_cli.main(["board", files("b.ssat", "ssat 1 2\n0\n1\n"), "--render"])
    out = capsys.readouterr().out.splitlines()
    assert code == 1
    assert out == ["unsat", "■", "□"]
    print("✅ PASSED - board render")


def test_enumerate_dump(files, capsys):
    code = ssat_cli.main(["enumerate", files("a.ssat", SSAT_3_2), "--dump-table"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[:6] == ["000", "001", "100", "101", "110", "111"]
    assert out[6] == "6 solutions"
    assert out[7] == "first=0; last=7"
    assert out[-1] == "7 6 -1"
    print("✅ PASSED - enumerate with table dump")


def test_general_input(files, capsys):
    path = files("sat.tsat", SAT_5_3)
    assert ssat_cli.main(["solve", path]) == 64
    assert ssat_cli.main(["solve", path, "--expand"]) == 0
    assert ssat_cli.main(["--format", "json", "qsolve", path]) == 0
    lines = [line for line in capsys.readouterr().out.splitlines() if line.startswith("{")]
    assert witness_from_result(json.loads(lines[-1]), read_text(SAT_5_3)) is not None
    print("✅ PASSED - General input")


def test_parse_errors_exit_65(files, tmp_path):
    assert ssat_cli.main(["solve", files("empty.cnf", "p cnf 2 1\n0\n")]) == 65
    assert ssat_cli.main(["solve", files("all2.tsat", "tsat 3 1\n222\n")]) == 65
    assert ssat_cli.main(["solve", files("junk.txt", "hello\n")]) == 65
    undecodable = tmp_path / "bytes.ssat"
    undecodable.write_bytes(b"ssat 2 1\n0\xff\n")
    assert ssat_cli.main(["solve", str(undecodable)]) == 65
    print("✅ PASSED - parse errors exit 65")


def test_usage_errors_exit_64(files, tmp_path):
    assert ssat_cli.main([]) == 64
    assert ssat_cli.main(["fly"]) == 64
    assert ssat_cli.main(["solve", str(tmp_path / "missing.ssat")]) == 64
    assert ssat_cli.main(["prob", files("a.ssat", SSAT_3_2), "--seed", "x"]) == 64
    assert ssat_cli.main(["gen", "--random", "-n", "4"]) == 64
    assert ssat_cli.main(["gen", "--blocked", "-n", "40"]) == 64
    print("✅ PASSED - usage errors exit 64")


def test_gen_and_convert(files, capsys, tmp_path):
    assert ssat_cli.main(["gen", "--from-solutions", "000", "001", "100", "101", "110", "111"]) == 0
    assert capsys.readouterr().out == "ssat 3 2\n100\n101\n"

    assert ssat_cli.main(["gen", "--blocked", "-n", "2"]) == 0
    assert capsys.readouterr().out == "ssat 2 4\n00\n11\n01\n10\n"

    out_path = tmp_path / "random.cnf"
    assert ssat_cli.main(["gen", "--random", "-n", "5", "-m", "7", "--seed", "1", "--general",
                          "--to", "dimacs", "-o", str(out_path)]) == 0
    assert read_dimacs(out_path.read_text()).m == 7

    assert ssat_cli.main(["convert", files("sat.tsat", SAT_5_3), "--to", "dimacs"]) == 0
    dimacs = capsys.readouterr().out
    assert dimacs.startswith("p cnf 5 3\n5 -4 1 0\n")

    assert ssat_cli.main(["convert", files("sat.tsat", SAT_5_3), "--to", "ssat"]) == 64
    assert ssat_cli.main(["convert", files("sat.tsat", SAT_5_3), "--to", "ssat", "--simple"]) == 0
    converted = read_text(capsys.readouterr().out)
    assert converted.is_simple
    print("✅ PASSED - gen and convert")


def test_qverify_json(files, capsys):
    assert ssat_cli.main(["qverify", files("a.ssat", SSAT_3_2), "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["status"] == "not_applicable"
    assert document["counters"]["oracle_calls"] == 1
    print("✅ PASSED - qverify JSON")


def test_check_saved_result(files, capsys, tmp_path):
    path = files("a.ssat", SSAT_3_2)
    assert ssat_cli.main(["--format", "json", "solve", path]) == 0
    result = tmp_path / "result.json"
    result.write_text(capsys.readouterr().out)
    assert ssat_cli.main(["check", path, str(result)]) == 0
    assert capsys.readouterr().out.strip() == "verified witness=101"

    # 010 has complement 101, which is a row
    result.write_text('{"status": "sat", "witness": "010"}')
    assert ssat_cli.main(["check", path, str(result)]) == 65
    result.write_text("not json")
    assert ssat_cli.main(["check", path, str(result)]) == 65
    result.write_text('{"status": "unsat", "witness": null}')
    assert ssat_cli.main(["check", path, str(result)]) == 0
    assert "no witness" in capsys.readouterr().out
    print("✅ PASSED - saved results re-verify")


def test_bench_command(tmp_path, capsys):
    config = tmp_path / "bench.yaml"
    config.write_text("solvers: [linked]\nfamily: blocked\nn_range: [2, 4]\n")
    output = tmp_path / "out.csv"
    assert ssat_cli.main(["bench", "--config", str(config), "--output", str(output)]) == 0
    assert output.exists()
    assert "removals_mean" in capsys.readouterr().out
    assert ssat_cli.main(["bench", "--config", str(tmp_path / "none.yaml")]) == 64
    print("✅ PASSED - bench command")


if __name__ == "__main__":
    print("Run with: pytest test_cli.py")
    sys.exit(pytest.main([__file__, "-q"]))
