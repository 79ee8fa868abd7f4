"""Instrumented transcription of the backtracking-free Reduce/Scope/Scan/Remove procedure.

The procedure decides variables one at a time.  ``scope`` propagates a
decision; if that runs into a conflict, ``remove`` commits the opposite
polarity and scanning restarts on the simplified formula.  A failed
``remove`` ends the run with an UNSAT claim.  There is no way to revisit
an earlier decision, which is exactly why the claims cannot be trusted.

Every step is recorded in a :class:`Trace` so that runs can be replayed
and compared against golden files.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from .formula import (
    Clause,
    Conflict,
    FormulaState,
    Literal,
    PartialAssignment,
    bind,
)


class Order(enum.Enum):
    LEX = "lex"
    REVLEX = "revlex"
    FREQ = "freq"
    FIXED = "fixed"


class Polarity(enum.Enum):
    POSITIVE = "pos"
    NEGATIVE = "neg"


@dataclass(frozen=True)
class OrderingPolicy:
    """Which variable to decide next and which polarity to try first.

    ``FREQ`` ranks variables by the number of clauses containing them
    (ties broken by id).  ``FIXED`` uses ``sequence`` first, then every
    unlisted variable in ascending id order.
    """

    kind: Order = Order.LEX
    polarity: Polarity = Polarity.POSITIVE
    sequence: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(self.sequence))
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError(f"fixed sequence lists a variable twice: {self.sequence}")
        if any(v < 1 for v in self.sequence):
            raise ValueError("fixed sequence entries must be positive variable ids")
        if self.sequence and self.kind is not Order.FIXED:
            raise ValueError("a sequence is only meaningful for the fixed ordering")

    def variable_order(self, f: FormulaState) -> list[int]:
        occurring = sorted(f.clause_variables())
        if self.kind is Order.LEX:
            return occurring
        if self.kind is Order.REVLEX:
            return occurring[::-1]
        if self.kind is Order.FREQ:
            counts = Counter(l.var for c in f.clauses for l in c)
            return sorted(occurring, key=lambda v: (-counts[v], v))
        listed = [v for v in self.sequence if v in set(occurring)]
        return listed + [v for v in occurring if v not in set(self.sequence)]

    def literals(self, var: int) -> tuple[Literal, Literal]:
        pos, neg = Literal(var, True), Literal(var, False)
        return (pos, neg) if self.polarity is Polarity.POSITIVE else (neg, pos)

    def token(self) -> str:
        head = self.kind.value
        if self.kind is Order.FIXED:
            head += ":" + ",".join(str(v) for v in self.sequence)
        return f"{head}+{self.polarity.value}"

    @classmethod
    def parse(cls, token: str) -> "OrderingPolicy":
        """Inverse of :meth:`token`, e.g. ``"freq+neg"`` or ``"fixed:3,1+pos"``."""
        try:
            head, pol = token.rsplit("+", 1)
            polarity = Polarity(pol)
            if head.startswith("fixed"):
                _, _, csv = head.partition(":")
                seq = tuple(int(v) for v in csv.split(",") if v)
                return cls(Order.FIXED, polarity, seq)
            return cls(Order(head), polarity)
        except ValueError as exc:
            raise ValueError(f"bad policy token {token!r}: {exc}") from None

    def __str__(self) -> str:
        return self.token()


LEX_POS = OrderingPolicy(Order.LEX, Polarity.POSITIVE)


class EventKind(enum.Enum):
    DECISION = "decision"
    PROPAGATION = "propagation"
    CLAUSE_DELETION = "clause-deletion"
    UNIT_MIGRATION = "unit-migration"
    CONFLICT = "conflict"
    REMOVE = "remove"
    SCAN = "scan"
    VERDICT = "verdict"


SNAPSHOT_KINDS = {EventKind.DECISION, EventKind.SCAN, EventKind.VERDICT}


@dataclass(frozen=True)
class TraceEvent:
    """One step of a run.

    ``detail`` carries the conflict site (``reduce``, ``merge`` or
    ``empty``) on conflict events and ``sat``/``unsat`` on the verdict.
    """

    kind: EventKind
    literal: Optional[Literal] = None
    clause_index: Optional[int] = None
    snapshot: Optional[FormulaState] = None
    detail: Optional[str] = None


@dataclass
class Trace:
    events: list[TraceEvent] = field(default_factory=list)

    def emit(self, kind: EventKind, literal=None, clause_index=None, snapshot=None, detail=None):
        self.events.append(TraceEvent(kind, literal, clause_index, snapshot, detail))

    def __iter__(self):
        return iter(self.events)

    def __len__(self):
        return len(self.events)

    def of_kind(self, kind: EventKind) -> list[TraceEvent]:
        return [e for e in self.events if e.kind is kind]


class _NullTrace(Trace):
    def emit(self, *args, **kwargs):
        pass


class Claim(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"


@dataclass
class SalumVerdict:
    claim: Claim
    minterm: Optional[PartialAssignment]
    formula: Optional[FormulaState]
    trace: Trace
    removes: int = 0

    @property
    def claimed_sat(self) -> bool:
        return self.claim is Claim.SAT


class ProgressError(AssertionError):
    """Scan re-entered more often than there are variables."""


def reduce(f: FormulaState, r: Literal, trace: Optional[Trace] = None):
    """Propagate ``r`` through ``f`` once, without cascading.

    Phase 1: every clause containing ``r`` is dropped and ``r`` plus the
    negations of its siblings are bound.  Phase 2: ``-r`` is deleted from
    every clause containing it; a clause left with one literal migrates
    that literal into the minterm, an emptied clause is a conflict.
    Literals bound here are not reduced in turn.

    Returns ``(derived, formula)`` where ``derived`` holds the literals
    this call produced, or a :class:`Conflict`.
    """
    trace = trace if trace is not None else _NullTrace()
    derived = PartialAssignment()
    minterm = f.minterm
    clauses = list(f.clauses)

    def add(l: Literal) -> Optional[Conflict]:
        nonlocal derived, minterm
        d = bind(derived, l)
        if isinstance(d, Conflict):
            return _fail(l, "reduce")
        m = bind(minterm, l)
        if isinstance(m, Conflict):
            return _fail(l, "merge")
        derived, minterm = d, m
        return None

    def _fail(l: Literal, site: str) -> Conflict:
        state = FormulaState(minterm, tuple(clauses), f.num_vars, f.symbols)
        trace.emit(EventKind.CONFLICT, l, None, state, site)
        return Conflict(l, state, site)

    i = 0
    while i < len(clauses):
        c = clauses[i]
        if r not in c.literals:
            i += 1
            continue
        trace.emit(EventKind.PROPAGATION, r, i)
        del clauses[i]
        for l in (r, *(-s for s in c.literals if s != r)):
            conflict = add(l)
            if conflict is not None:
                return conflict

    nr = -r
    i = 0
    while i < len(clauses):
        c = clauses[i]
        if nr not in c.literals:
            i += 1
            continue
        rest = c.without(nr)
        trace.emit(EventKind.CLAUSE_DELETION, nr, i)
        if not rest:
            del clauses[i]
            return _fail(nr, "empty")
        if len(rest) == 1:
            trace.emit(EventKind.UNIT_MIGRATION, rest[0], i)
            del clauses[i]
            conflict = add(rest[0])
            if conflict is not None:
                return conflict
            continue
        clauses[i] = Clause(rest)
        i += 1

    return derived, FormulaState(minterm, tuple(clauses), f.num_vars, f.symbols)


def scope(r: Literal, f: FormulaState, trace: Optional[Trace] = None):
    """Decide ``r`` and reduce every literal it implies, first-in-first-out.

    Returns ``(implied, formula)`` where ``implied`` starts with ``r``, or a
    :class:`Conflict` (including when ``-r`` is already in the minterm).
    """
    trace = trace if trace is not None else _NullTrace()
    trace.emit(EventKind.DECISION, r, None, f)
    m = bind(f.minterm, r)
    if isinstance(m, Conflict):
        trace.emit(EventKind.CONFLICT, r, None, f, "merge")
        return Conflict(r, f, "merge")
    implied = PartialAssignment.of_literals([r])
    worklist = [r]
    working = f.with_(minterm=m)
    position = 0
    while position < len(worklist):
        current = worklist[position]
        position += 1
        result = reduce(working, current, trace)
        if isinstance(result, Conflict):
            return result
        derived, working = result
        for l in derived.literals():
            merged = bind(implied, l)
            if isinstance(merged, Conflict):
                trace.emit(EventKind.CONFLICT, l, None, working, "merge")
                return Conflict(l, working, "merge")
            if merged is not implied:
                worklist.append(l)
            implied = merged
    return implied, working


def remove(r: Literal, f: FormulaState, trace: Optional[Trace] = None):
    """Commit ``-r`` after ``r`` failed: reduce ``-r`` and bind it.

    Returns the next formula to scan, or a :class:`Conflict` meaning the
    run ends with an UNSAT claim.  Conflicts raised by the reduction
    itself carry site ``reduce``/``empty``; clashes with the existing
    minterm carry site ``merge``.
    """
    trace = trace if trace is not None else _NullTrace()
    trace.emit(EventKind.REMOVE, r)
    result = reduce(f, -r, trace)
    if isinstance(result, Conflict):
        return result
    _, g = result
    m = bind(g.minterm, -r)
    if isinstance(m, Conflict):
        trace.emit(EventKind.CONFLICT, -r, None, g, "merge")
        return Conflict(-r, g, "merge")
    trace.emit(EventKind.PROPAGATION, -r)
    return g.with_(minterm=m)


def _stale_literal(f: FormulaState) -> Optional[Literal]:
    for c in f.clauses:
        for l in c:
            if f.minterm.falsifies(l):
                return l
    return None


def scan(f: FormulaState, policy: OrderingPolicy = LEX_POS) -> SalumVerdict:
    """Run the procedure on ``f`` under ``policy``.

    Each ``remove`` is followed by a fresh scan of the simplified formula;
    that re-entry is a loop here, and each pass must settle a new
    variable, so there are at most ``num_vars`` removes.
    """
    trace = Trace()
    state = f
    removes = 0
    settled: set[int] = set()
    while True:
        trace.emit(EventKind.SCAN, snapshot=state)
        target = _stale_literal(state)
        if target is None:
            for var in policy.variable_order(state):
                if var in state.minterm:
                    continue
                for r in policy.literals(var):
                    result = scope(r, state, trace)
                    if isinstance(result, Conflict):
                        target = r
                        break
                    _, state = result
                if target is not None:
                    break
        if target is None:
            trace.emit(EventKind.VERDICT, snapshot=state, detail="sat")
            return SalumVerdict(Claim.SAT, state.minterm, state, trace, removes)

        removes += 1
        if removes > f.num_vars or target.var in settled:
            raise ProgressError(f"remove #{removes} on variable {target.var} makes no progress")
        settled.add(target.var)
        result = remove(target, state, trace)
        if isinstance(result, Conflict):
            trace.emit(EventKind.VERDICT, snapshot=state, detail="unsat")
            return SalumVerdict(Claim.UNSAT, None, None, trace, removes)
        state = result


class TraceMismatch(AssertionError):
    pass


def _apply(state: FormulaState, event: TraceEvent) -> FormulaState:
    """Rewrite ``state`` as ``event`` describes.

    A binding that would clash is skipped, together with the rest of the
    event; the conflict event that follows is checked against the result.
    """
    clauses = list(state.clauses)
    k = event.kind
    if k is EventKind.DECISION or (k is EventKind.PROPAGATION and event.clause_index is None):
        to_bind = [event.literal]
    elif k is EventKind.PROPAGATION:
        c = clauses.pop(event.clause_index)
        if event.literal not in c.literals:
            raise TraceMismatch(f"clause {event.clause_index} does not contain {event.literal}")
        to_bind = [event.literal, *(-s for s in c.literals if s != event.literal)]
    elif k is EventKind.CLAUSE_DELETION:
        c = clauses[event.clause_index]
        if event.literal not in c.literals:
            raise TraceMismatch(f"clause {event.clause_index} does not contain {event.literal}")
        rest = c.without(event.literal)
        if rest:
            clauses[event.clause_index] = Clause(rest)
        else:
            del clauses[event.clause_index]
        to_bind = []
    elif k is EventKind.UNIT_MIGRATION:
        c = clauses.pop(event.clause_index)
        if c.literals != (event.literal,):
            raise TraceMismatch(f"clause {event.clause_index} is not the unit {event.literal}")
        to_bind = [event.literal]
    else:
        to_bind = []
    minterm = state.minterm
    for l in to_bind:
        m = bind(minterm, l)
        if isinstance(m, Conflict):
            break
        minterm = m
    return FormulaState(minterm, tuple(clauses), state.num_vars, state.symbols)


def replay(trace: Trace) -> list[Union[FormulaState, Conflict]]:
    """Re-apply every event's rewrite and check it against the snapshots.

    Returns the state after each event (a :class:`Conflict` for conflict
    events).  Raises :class:`TraceMismatch` if a recorded snapshot differs
    from the replayed one.
    """
    states: list[Union[FormulaState, Conflict]] = []
    working: Optional[FormulaState] = None
    checkpoint: Optional[FormulaState] = None
    for n, event in enumerate(trace.events):
        if event.kind in SNAPSHOT_KINDS:
            if event.snapshot is None:
                raise TraceMismatch(f"event {n} ({event.kind.value}) lacks a snapshot")
            if working is not None and event.snapshot != working:
                raise TraceMismatch(
                    f"event {n} ({event.kind.value}): snapshot {event.snapshot.pretty()} "
                    f"!= replayed {working.pretty()}"
                )
            working = checkpoint = event.snapshot
        if working is None:
            raise TraceMismatch("trace does not start with a snapshot")
        if event.kind is EventKind.CONFLICT:
            if event.snapshot is not None and event.snapshot != working:
                raise TraceMismatch(
                    f"event {n} (conflict): snapshot {event.snapshot.pretty()} "
                    f"!= replayed {working.pretty()}"
                )
            states.append(Conflict(event.literal, working, event.detail))
            # a failed scope or remove leaves the last checkpoint in force
            working = checkpoint
            continue
        working = _apply(working, event)
        states.append(working)
    return states
