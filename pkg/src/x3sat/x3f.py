"""Text formats: X3F formulas, run traces, and disagreement reports.

X3F is line oriented and every line ends in ``\\n``::

    c optional comment
    p x3f <num_vars> <num_clauses>
    s <id> <name>            (optional symbol lines)
    m <lit> ... 0            (optional minterm)
    <lit> <lit> [<lit>] 0    (exactly num_clauses clause lines)

A literal is a signed variable id; negative means negated.  The header
is deliberately not ``p cnf``: an exactly-one clause is not a CNF clause.
"""

from __future__ import annotations

from typing import Optional, Union

from .formula import (
    Clause,
    Conflict,
    FormulaError,
    FormulaState,
    Literal,
    PartialAssignment,
    TotalAssignment,
    bind,
)
from .salum import EventKind, OrderingPolicy, Trace, TraceEvent


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class HeaderError(ParseError):
    pass


class LiteralError(ParseError):
    pass


class DuplicateVariableError(ParseError):
    pass


class ClauseCountError(ParseError):
    pass


def _lines(text: Union[str, bytes]) -> list[str]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if text and not text.endswith("\n"):
        raise ParseError("missing trailing newline", text.count("\n") + 1)
    return text.split("\n")[:-1] if text else []


def _tokens(line: str, lineno: int) -> list[str]:
    parts = line.split(" ")
    if any(p == "" for p in parts):
        raise ParseError("tokens must be separated by single spaces", lineno)
    return parts


def _literals(tokens: list[str], num_vars: int, lineno: int) -> list[Literal]:
    if not tokens or tokens[-1] != "0":
        raise LiteralError("literal list must end with 0", lineno)
    out = []
    for tok in tokens[:-1]:
        try:
            value = int(tok)
        except ValueError:
            raise LiteralError(f"not an integer literal: {tok!r}", lineno) from None
        if value == 0:
            raise LiteralError("0 may only terminate a literal list", lineno)
        if abs(value) > num_vars:
            raise LiteralError(f"literal {value} exceeds num_vars={num_vars}", lineno)
        out.append(Literal.from_int(value))
    return out


def _parse_lines(lines: list[tuple[int, str]]) -> FormulaState:
    body = [(n, l) for n, l in lines if not (l == "c" or l.startswith("c "))]
    if not body:
        raise HeaderError("missing 'p x3f' header", 1)
    lineno, header = body[0]
    parts = header.split(" ")
    if len(parts) != 4 or parts[:2] != ["p", "x3f"]:
        raise HeaderError(f"expected 'p x3f <num_vars> <num_clauses>', got {header!r}", lineno)
    try:
        num_vars, num_clauses = int(parts[2]), int(parts[3])
    except ValueError:
        raise HeaderError("header counts must be integers", lineno) from None
    if num_vars < 0 or num_clauses < 0:
        raise HeaderError("header counts must be non-negative", lineno)

    symbols: dict[int, str] = {}
    minterm = PartialAssignment()
    clauses: list[Clause] = []
    seen_minterm = False
    for lineno, line in body[1:]:
        tokens = _tokens(line, lineno)
        if tokens[0] == "s":
            if seen_minterm or clauses or len(tokens) != 3:
                raise ParseError("symbol lines must be 's <id> <name>' right after the header", lineno)
            try:
                var = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad symbol id {tokens[1]!r}", lineno) from None
            if not 1 <= var <= num_vars or var in symbols:
                raise ParseError(f"bad or repeated symbol id {var}", lineno)
            symbols[var] = tokens[2]
        elif tokens[0] == "m":
            if seen_minterm or clauses:
                raise ParseError("at most one minterm line, before the clauses", lineno)
            seen_minterm = True
            for l in _literals(tokens[1:], num_vars, lineno):
                minterm = bind(minterm, l)
                if isinstance(minterm, Conflict):
                    raise LiteralError(f"minterm binds variable {l.var} both ways", lineno)
        else:
            lits = _literals(tokens, num_vars, lineno)
            if len({l.var for l in lits}) != len(lits):
                raise DuplicateVariableError("variable repeated within a clause", lineno)
            if not 1 <= len(lits) <= 3:
                raise LiteralError(f"clause must have 1 to 3 literals, got {len(lits)}", lineno)
            if len(clauses) == num_clauses:
                raise ClauseCountError(f"more than the declared {num_clauses} clauses", lineno)
            clauses.append(Clause(tuple(lits)))
    if len(clauses) != num_clauses:
        last = lines[-1][0] if lines else 1
        raise ClauseCountError(f"declared {num_clauses} clauses, found {len(clauses)}", last)
    return FormulaState(minterm, tuple(clauses), num_vars,
                        tuple(sorted(symbols.items())) if symbols else None)


def parse(text: Union[str, bytes]) -> FormulaState:
    return _parse_lines(list(enumerate(_lines(text), start=1)))


def _formula_lines(f: FormulaState, with_symbols: bool = True) -> list[str]:
    out = [f"p x3f {f.num_vars} {len(f.clauses)}"]
    if with_symbols and f.symbols:
        out.extend(f"s {var} {name}" for var, name in f.symbols)
    if f.minterm:
        out.append("m " + " ".join(str(l) for l in f.minterm.sorted_literals()) + " 0")
    out.extend(" ".join(str(l) for l in c) + " 0" for c in f.clauses)
    return out


def serialize(f: FormulaState) -> str:
    """Canonical X3F text: sorted minterm, clauses and literals in stored order."""
    return "".join(line + "\n" for line in _formula_lines(f))


# -- traces ------------------------------------------------------------------
#
#   c x3sat trace
#   t <policy-token>
#   <kind> <lit or 0> <clause index or -> <detail or -> [| <x3f line> | ...]
#
# Snapshots are inlined as their X3F lines (without symbols) joined by " | ".

SNAPSHOT_SEP = " | "


def serialize_trace(trace: Trace, policy: OrderingPolicy) -> str:
    lines = ["c x3sat trace", f"t {policy.token()}"]
    for e in trace.events:
        head = " ".join([
            e.kind.value,
            str(e.literal) if e.literal is not None else "0",
            str(e.clause_index) if e.clause_index is not None else "-",
            e.detail or "-",
        ])
        if e.snapshot is not None:
            head += SNAPSHOT_SEP + SNAPSHOT_SEP.join(_formula_lines(e.snapshot, with_symbols=False))
        lines.append(head)
    return "".join(line + "\n" for line in lines)


def parse_trace(text: Union[str, bytes]) -> tuple[Trace, OrderingPolicy]:
    lines = _lines(text)
    policy = None
    events = []
    for lineno, line in enumerate(lines, start=1):
        if line == "c" or line.startswith("c "):
            continue
        if line.startswith("t "):
            policy = OrderingPolicy.parse(line[2:])
            continue
        head, *snap = line.split(SNAPSHOT_SEP)
        tokens = _tokens(head, lineno)
        if len(tokens) != 4:
            raise ParseError(f"trace event needs 4 fields, got {len(tokens)}", lineno)
        try:
            kind = EventKind(tokens[0])
            value = int(tokens[1])
            index = None if tokens[2] == "-" else int(tokens[2])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        snapshot = None
        if snap:
            snapshot = _parse_lines([(lineno, s) for s in snap])
        detail = None if tokens[3] == "-" else tokens[3]
        events.append(TraceEvent(kind, Literal.from_int(value) if value else None, index, snapshot, detail))
    if policy is None:
        raise ParseError("trace lacks a 't <policy>' line")
    return Trace(events), policy


# -- disagreement reports -----------------------------------------------------
#
#   <X3F block>
#   v <policy-token> <salum verdict> <oracle verdict>
#   w <bit vector>           (oracle witness, when the oracle found one)


def serialize_report(formula: FormulaState, policy: OrderingPolicy, salum_label: str,
                     oracle_label: str, witness: Optional[TotalAssignment] = None) -> str:
    text = serialize(formula) + f"v {policy.token()} {salum_label} {oracle_label}\n"
    if witness is not None:
        text += "w " + "".join(str(b) for b in witness.bits()) + "\n"
    return text


def parse_report(text: Union[str, bytes]):
    """Return ``(formula, policy, salum_label, oracle_label, witness)``."""
    lines = list(enumerate(_lines(text), start=1))
    split = next((i for i, (_, l) in enumerate(lines) if l.startswith("v ")), None)
    if split is None:
        raise ParseError("report lacks a 'v' verdict line")
    formula = _parse_lines(lines[:split])
    lineno, vline = lines[split]
    tokens = _tokens(vline, lineno)
    if len(tokens) != 4:
        raise ParseError("expected 'v <policy> <salum> <oracle>'", lineno)
    try:
        policy = OrderingPolicy.parse(tokens[1])
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None
    witness = None
    for lineno, line in lines[split + 1:]:
        if line.startswith("w "):
            bits = line[2:]
            if len(bits) != formula.num_vars or set(bits) - {"0", "1"}:
                raise ParseError("witness must be one 0/1 digit per variable", lineno)
            witness = TotalAssignment.from_bits(int(b) for b in bits)
        elif not (line == "c" or line.startswith("c ")):
            raise ParseError(f"unexpected line after verdict: {line!r}", lineno)
    return formula, policy, tokens[2], tokens[3], witness


def parse_assignment(csv: str, num_vars: int) -> TotalAssignment:
    try:
        bits = [int(b) for b in csv.split(",")]
    except ValueError:
        raise FormulaError(f"assignment must be comma-separated 0/1 values: {csv!r}") from None
    if len(bits) != num_vars or set(bits) - {0, 1}:
        raise FormulaError(f"assignment needs exactly {num_vars} values, each 0 or 1")
    return TotalAssignment.from_bits(bits)
