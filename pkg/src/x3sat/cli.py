"""Command-line entry point: ``x3sat {solve,trace,fuzz,shrink,verify}``.

Exit codes: 10 SAT, 20 UNSAT, 30 an unverified SAT claim from salum,
0/1 for verify and the bookkeeping commands, 2 usage, 3 parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness, x3f
from .formula import FormulaError, evaluate_formula
from .oracle import CapacityError, brute_force, dpll_solve
from .salum import Order, OrderingPolicy, Polarity, scan

EXIT_SAT, EXIT_UNSAT, EXIT_UNVERIFIED = 10, 20, 30
EXIT_USAGE, EXIT_PARSE = 2, 3


class UsageError(Exception):
    pass


def _policy(args) -> OrderingPolicy:
    pol = Polarity(args.polarity)
    if args.order.startswith("fixed:"):
        try:
            seq = tuple(int(v) for v in args.order[6:].split(",") if v)
            return OrderingPolicy(Order.FIXED, pol, seq)
        except ValueError as exc:
            raise UsageError(f"bad fixed order {args.order!r}: {exc}") from None
    try:
        return OrderingPolicy(Order(args.order), pol)
    except ValueError:
        raise UsageError(f"unknown order {args.order!r}") from None


def _add_policy_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", default="lex", help="lex, revlex, freq or fixed:<csv of ids>")
    p.add_argument("--polarity", default="pos", choices=["pos", "neg"])


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    return x3f.parse(data)


def _minterm_line(m) -> str:
    return "m " + " ".join(str(l) for l in m.sorted_literals()) + " 0"


def cmd_solve(args) -> int:
    f = _load(args.file)
    if args.algorithm == "brute":
        try:
            models = brute_force(f)
        except CapacityError as exc:
            raise UsageError(str(exc)) from None
        print("s SAT" if len(models) else "s UNSAT")
        print(f"c models {len(models)}")
        for m in models:
            print(f"w {m}")
        return EXIT_SAT if len(models) else EXIT_UNSAT
    if args.algorithm == "dpll":
        verdict = dpll_solve(f)
        print(f"s {verdict}")
        if verdict.sat:
            print(f"w {verdict.witness}")
        return EXIT_SAT if verdict.sat else EXIT_UNSAT

    policy = _policy(args)
    verdict = scan(f, policy)
    if not verdict.claimed_sat:
        print("s UNSAT")
        print(f"c salum {policy.token()} claims UNSAT after {verdict.removes} removes")
        return EXIT_UNSAT
    audit = harness.audit_claim(f, verdict.minterm)
    if audit.ok:
        print("s SAT")
        print(_minterm_line(verdict.minterm))
        print(f"w {audit.witness}")
        return EXIT_SAT
    print(f"s SAT UNVERIFIED ({audit.status.value})")
    print(_minterm_line(verdict.minterm))
    return EXIT_UNVERIFIED


def cmd_trace(args) -> int:
    f = _load(args.file)
    policy = _policy(args)
    verdict = scan(f, policy)
    text = x3f.serialize_trace(verdict.trace, policy)
    Path(args.out).write_text(text)
    print(f"c {len(verdict.trace)} events written to {args.out}")
    print(f"s {verdict.claim.value}")
    return 0


def cmd_fuzz(args) -> int:
    try:
        configs = [harness.GenConfig(args.seed + i, args.vars, args.clauses)
                   for i in range(args.num)]
    except harness.HarnessError as exc:
        raise UsageError(str(exc)) from None
    results = harness.campaign(configs, workers=args.workers)
    found = [r for r in results if isinstance(r.outcome, harness.Disagreement)]
    report_dir = Path(args.report_dir) if args.report_dir else None
    if report_dir:
        report_dir.mkdir(parents=True, exist_ok=True)
    for r in found:
        d = r.outcome
        print(f"c seed {r.seed} {r.policy.token()} {d.kind.value}")
        if report_dir:
            name = f"seed{r.seed}-{r.policy.kind.value}-{r.policy.polarity.value}.x3r"
            (report_dir / name).write_text(_report_text(d))
    print(f"disagreements {len(found)} of {len(results)} runs")
    return 0


def _report_text(d: harness.Disagreement) -> str:
    return x3f.serialize_report(d.formula, d.policy, d.salum_label, str(d.oracle), d.oracle.witness)


def cmd_shrink(args) -> int:
    path = Path(args.report)
    try:
        formula, policy, _, _, _ = x3f.parse_report(path.read_bytes())
    except OSError as exc:
        raise UsageError(str(exc)) from None
    result = harness.compare(formula, policy)
    if not isinstance(result, harness.Disagreement):
        print(f"error: {path} does not reproduce a disagreement", file=sys.stderr)
        return 1
    small = harness.shrink(result)
    path.write_text(_report_text(small))
    print(f"c shrunk {len(formula.clauses)} -> {len(small.formula.clauses)} clauses ({small.kind.value})")
    return 0


def cmd_verify(args) -> int:
    f = _load(args.file)
    try:
        m = x3f.parse_assignment(args.assignment, f.num_vars)
    except FormulaError as exc:
        raise UsageError(str(exc)) from None
    ok = evaluate_formula(m, f)
    print("c assignment satisfies the formula" if ok else "c assignment violates the formula")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="x3sat", description="exactly-one 3SAT toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide a formula")
    p.add_argument("file")
    p.add_argument("--algorithm", choices=["salum", "dpll", "brute"], default="salum")
    _add_policy_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("trace", help="write the salum execution trace")
    p.add_argument("file")
    _add_policy_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("fuzz", help="differential campaign over the 8-policy matrix")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--num", type=int, required=True)
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--clauses", type=int, required=True)
    p.add_argument("--report-dir")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("shrink", help="minimise a disagreement report in place")
    p.add_argument("report")
    p.set_defaults(func=cmd_shrink)

    p = sub.add_parser("verify", help="check a total assignment, e.g. 0,0,1,0,1")
    p.add_argument("file")
    p.add_argument("assignment")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except x3f.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
