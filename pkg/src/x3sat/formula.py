"""Exactly-one formulas: literals, clauses, minterms and their semantics.

A formula is a minterm (a conjunction of literals, kept as a partial
assignment) conjoined with a list of exactly-one clauses over 1 to 3
literals.  Variables are dense integer ids ``1..num_vars``; names only
exist in the I/O layer.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field, replace
from typing import Optional, Union


class FormulaError(ValueError):
    """A formula, clause or assignment violates a structural invariant."""


@dataclass(frozen=True, slots=True, order=True)
class Literal:
    var: int
    positive: bool = True

    def __post_init__(self):
        if not isinstance(self.var, int) or self.var < 1:
            raise FormulaError(f"variable id must be a positive integer, got {self.var!r}")

    @classmethod
    def from_int(cls, value: int) -> "Literal":
        if value == 0:
            raise FormulaError("0 is not a literal")
        return cls(abs(value), value > 0)

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __int__(self) -> int:
        return self.var if self.positive else -self.var

    def __repr__(self) -> str:
        return f"Literal({int(self)})"

    def __str__(self) -> str:
        return str(int(self))


def negate(lit: Literal) -> Literal:
    return -lit


def lit(value: int) -> Literal:
    """Shorthand: ``lit(-3)`` is the negation of variable 3."""
    return Literal.from_int(value)


@dataclass(frozen=True, slots=True)
class Clause:
    """Exactly-one constraint over 1-3 literals on distinct variables."""

    literals: tuple[Literal, ...]

    def __post_init__(self):
        lits = tuple(self.literals)
        object.__setattr__(self, "literals", lits)
        if not 1 <= len(lits) <= 3:
            raise FormulaError(f"clause must have 1 to 3 literals, got {len(lits)}")
        if len({l.var for l in lits}) != len(lits):
            raise FormulaError(f"repeated variable in clause {[int(l) for l in lits]}")

    @classmethod
    def of(cls, *values: int) -> "Clause":
        return cls(tuple(Literal.from_int(v) for v in values))

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __contains__(self, item) -> bool:
        return item in self.literals

    def variables(self) -> set[int]:
        return {l.var for l in self.literals}

    def without(self, dropped: Literal) -> tuple[Literal, ...]:
        # may be empty, so returned as a bare tuple rather than a Clause
        return tuple(l for l in self.literals if l != dropped)

    def __repr__(self) -> str:
        return f"Clause.of({', '.join(str(l) for l in self.literals)})"


@dataclass(frozen=True, slots=True)
class Conflict:
    """A variable was required to be both true and false.

    ``literal`` is the binding that was rejected.  ``state`` optionally
    records the formula at the moment of detection and ``site`` says
    which check fired (used by the instrumented solver).
    """

    literal: Optional[Literal] = None
    state: Optional["FormulaState"] = None
    site: Optional[str] = None


class PartialAssignment(Mapping):
    """Immutable, insertion-ordered map from variable id to truth value.

    Equality ignores insertion order.  Order is kept only because the
    solvers process newly derived literals first-in-first-out.
    """

    __slots__ = ("_bindings",)

    def __init__(self, bindings: Union[Mapping[int, bool], Iterable[tuple[int, bool]], None] = None):
        items = dict(bindings or {})
        for var, value in items.items():
            if not isinstance(var, int) or var < 1:
                raise FormulaError(f"variable id must be a positive integer, got {var!r}")
            items[var] = bool(value)
        self._bindings = items

    @classmethod
    def of_literals(cls, literals: Iterable[Literal]) -> "PartialAssignment":
        result = cls()
        for l in literals:
            result = bind(result, l)
            if isinstance(result, Conflict):
                raise FormulaError(f"conflicting literals, {l} clashes")
        return result

    def __getitem__(self, var: int) -> bool:
        return self._bindings[var]

    def __iter__(self) -> Iterator[int]:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __eq__(self, other) -> bool:
        if isinstance(other, PartialAssignment):
            return self._bindings == other._bindings
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._bindings.items()))

    def literals(self) -> list[Literal]:
        """Bound literals in insertion order."""
        return [Literal(v, b) for v, b in self._bindings.items()]

    def sorted_literals(self) -> list[Literal]:
        return [Literal(v, self._bindings[v]) for v in sorted(self._bindings)]

    def holds(self, l: Literal) -> bool:
        return self._bindings.get(l.var) is l.positive

    def falsifies(self, l: Literal) -> bool:
        return self._bindings.get(l.var) is (not l.positive)

    def __repr__(self) -> str:
        return "PartialAssignment({" + ", ".join(str(l) for l in self.literals()) + "})"


def bind(p: PartialAssignment, l: Literal) -> Union[PartialAssignment, Conflict]:
    """Add ``l`` to ``p``; a clash with an existing binding is returned as a Conflict."""
    current = p._bindings.get(l.var)
    if current is None:
        new = PartialAssignment.__new__(PartialAssignment)
        new._bindings = {**p._bindings, l.var: l.positive}
        return new
    if current == l.positive:
        return p
    return Conflict(l)


@dataclass(frozen=True)
class TotalAssignment:
    """Truth values for variables ``1..len(values)``; ``m[v]`` reads variable v."""

    values: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(bool(v) for v in self.values))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "TotalAssignment":
        return cls(tuple(bool(b) for b in bits))

    @property
    def num_vars(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, var: int) -> bool:
        if not 1 <= var <= len(self.values):
            raise FormulaError(f"variable {var} outside 1..{len(self.values)}")
        return self.values[var - 1]

    def value(self, l: Literal) -> bool:
        return self[l.var] == l.positive

    def bits(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.values)

    def __str__(self) -> str:
        return ",".join(str(b) for b in self.bits())


@dataclass(frozen=True)
class FormulaState:
    """``minterm AND clauses`` over variables ``1..num_vars``.

    ``symbols`` is an optional id -> name table carried for display and
    serialization only; it does not take part in equality.
    """

    minterm: PartialAssignment = field(default_factory=PartialAssignment)
    clauses: tuple[Clause, ...] = ()
    num_vars: int = 0
    symbols: Optional[tuple[tuple[int, str], ...]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if not isinstance(self.minterm, PartialAssignment):
            object.__setattr__(self, "minterm", PartialAssignment(self.minterm))
        if self.num_vars < 0:
            raise FormulaError("num_vars must be non-negative")
        for var in self.minterm:
            if var > self.num_vars:
                raise FormulaError(f"minterm variable {var} exceeds num_vars={self.num_vars}")
        for c in self.clauses:
            if not isinstance(c, Clause):
                raise FormulaError(f"expected Clause, got {c!r}")
            for l in c:
                if l.var > self.num_vars:
                    raise FormulaError(f"clause variable {l.var} exceeds num_vars={self.num_vars}")

    @classmethod
    def build(cls, clauses: Iterable[Iterable[int]], num_vars: Optional[int] = None,
              minterm: Iterable[int] = (), symbols=None) -> "FormulaState":
        """Convenience constructor from signed-integer clause lists."""
        cls_list = tuple(Clause.of(*c) for c in clauses)
        m = PartialAssignment.of_literals(Literal.from_int(v) for v in minterm)
        if num_vars is None:
            num_vars = max([l.var for c in cls_list for l in c] + list(m) + [0])
        if symbols is not None and isinstance(symbols, Mapping):
            symbols = tuple(sorted(symbols.items()))
        return cls(m, cls_list, num_vars, symbols)

    def with_(self, **changes) -> "FormulaState":
        return replace(self, **changes)

    def variables(self) -> list[int]:
        return list(range(1, self.num_vars + 1))

    def clause_variables(self) -> set[int]:
        return {l.var for c in self.clauses for l in c}

    def symbol_map(self) -> dict[int, str]:
        return dict(self.symbols or ())

    def name(self, l: Literal) -> str:
        names = self.symbol_map()
        base = names.get(l.var, f"v{l.var}")
        return base if l.positive else "~" + base

    def pretty(self) -> str:
        """Human-readable rendering, e.g. ``(a & ~b) & (b . x . y)``."""
        parts = []
        if self.minterm:
            parts.append("(" + " & ".join(self.name(l) for l in self.minterm.literals()) + ")")
        for c in self.clauses:
            parts.append("(" + " . ".join(self.name(l) for l in c) + ")")
        return " & ".join(parts) if parts else "TRUE"


def _check_range(m: TotalAssignment, var: int) -> None:
    if not 1 <= var <= len(m):
        raise FormulaError(f"variable {var} outside assignment range 1..{len(m)}")


def evaluate_clause(m: TotalAssignment, c: Clause) -> bool:
    """True iff exactly one literal of ``c`` is true under ``m``."""
    count = 0
    for l in c:
        _check_range(m, l.var)
        if m.value(l):
            count += 1
    return count == 1


def evaluate_formula(m: TotalAssignment, f: FormulaState) -> bool:
    if len(m) < f.num_vars:
        raise FormulaError(f"assignment covers {len(m)} variables, formula has {f.num_vars}")
    for var, value in f.minterm.items():
        if m[var] != value:
            return False
    return all(evaluate_clause(m, c) for c in f.clauses)


def condition(f: FormulaState, l: Literal) -> Union[FormulaState, Conflict]:
    """Return a formula equivalent to ``f AND l``, simplified to a fixpoint.

    Clauses containing a true literal force their siblings false and
    disappear; false literals are deleted; unit clauses migrate into the
    minterm, and every newly bound literal is propagated in turn.
    """
    minterm = bind(f.minterm, l)
    if isinstance(minterm, Conflict):
        return minterm
    clauses = list(f.clauses)
    queue = [l]
    while queue:
        p = queue.pop(0)
        np_ = -p
        kept = []
        forced = []
        for c in clauses:
            if p in c.literals:
                forced.extend(-s for s in c.literals if s != p)
            elif np_ in c.literals:
                rest = c.without(np_)
                if not rest:
                    return Conflict(np_)
                if len(rest) == 1:
                    forced.append(rest[0])
                else:
                    kept.append(Clause(rest))
            else:
                kept.append(c)
        clauses = kept
        for q in forced:
            if minterm.holds(q):
                continue
            minterm = bind(minterm, q)
            if isinstance(minterm, Conflict):
                return minterm
            queue.append(q)
    return FormulaState(minterm, tuple(clauses), f.num_vars, f.symbols)
