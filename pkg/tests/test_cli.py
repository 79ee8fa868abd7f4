from pathlib import Path

import pytest

from x3sat.cli import main
from x3sat.salum import replay
from x3sat.x3f import parse_report, parse_trace

PAPER = str(Path(__file__).resolve().parent.parent / "corpus" / "paper.x3f")
GOLDEN_TRACE = Path(__file__).resolve().parent.parent / "corpus" / "paper.lex-pos.trace"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_solve_salum_paper(capsys):
    code, out = run(capsys, "solve", PAPER, "--algorithm", "salum", "--order", "lex", "--polarity", "pos")
    assert code == 20
    assert out.splitlines()[0] == "s UNSAT"


def test_solve_brute_paper(capsys):
    code, out = run(capsys, "solve", PAPER, "--algorithm", "brute")
    assert code == 10
    assert "w 0,0,1,0,1" in out.splitlines()
    assert "c models 2" in out


def test_solve_dpll_paper(capsys):
    code, out = run(capsys, "solve", PAPER, "--algorithm", "dpll")
    assert code == 10 and out.startswith("s SAT")


def test_solve_salum_other_order_is_verified(capsys):
    code, out = run(capsys, "solve", PAPER, "--order", "freq")
    assert code == 10
    assert any(line.startswith("w ") for line in out.splitlines())


def test_solve_unverified_claim(tmp_path, capsys):
    f = tmp_path / "stale.x3f"
    f.write_text("p x3f 4 3\n1 0\n2 3 4 0\n-2 -3 -4 0\n")
    code, out = run(capsys, "solve", str(f))
    assert code == 30 and "UNVERIFIED" in out


def test_verify(capsys):
    assert run(capsys, "verify", PAPER, "0,0,1,0,1")[0] == 0
    assert run(capsys, "verify", PAPER, "1,0,0,1,0")[0] == 1
    assert run(capsys, "verify", PAPER, "1,0")[0] == 2


def test_trace_matches_golden_file(tmp_path, capsys):
    out = tmp_path / "run.trace"
    code, _ = run(capsys, "trace", PAPER, "--order", "lex", "--polarity", "pos", "--out", str(out))
    assert code == 0
    assert out.read_text() == GOLDEN_TRACE.read_text()
    trace, _ = parse_trace(out.read_text())
    replay(trace)


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.x3f"
    bad.write_text("p x3f 2 1\n1 1 0\n")
    assert main(["solve", str(bad)]) == 3
    assert "line 2" in capsys.readouterr().err


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        main(["solve"])
    assert info.value.code == 2
    assert main(["solve", PAPER, "--order", "sideways"]) == 2
    assert main(["solve", str(tmp_path / "missing.x3f")]) == 2
    assert main(["fuzz", "--seed", "1", "--num", "1", "--vars", "2", "--clauses", "1"]) == 2


def test_fuzz_then_shrink(tmp_path, capsys):
    reports = tmp_path / "reports"
    code, out = run(capsys, "fuzz", "--seed", "1", "--num", "40", "--vars", "6", "--clauses", "6",
                    "--report-dir", str(reports))
    assert code == 0
    count = int(out.splitlines()[-1].split()[1])
    files = sorted(reports.iterdir())
    assert len(files) == count > 0
    target = files[0]
    before = parse_report(target.read_text())[0]
    code, _ = run(capsys, "shrink", str(target))
    assert code == 0
    after, policy, salum, oracle, _ = parse_report(target.read_text())
    assert len(after.clauses) <= len(before.clauses)
    assert salum != "SAT" or oracle != "SAT"


def test_shrink_rejects_agreement(tmp_path, capsys):
    report = tmp_path / "ok.x3r"
    report.write_text("p x3f 2 1\n1 2 0\nv lex+pos SAT SAT\n")
    assert main(["shrink", str(report)]) == 1
