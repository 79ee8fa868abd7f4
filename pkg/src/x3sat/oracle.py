"""Ground-truth solvers: exhaustive enumeration and backtracking DPLL."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .formula import (
    Conflict,
    FormulaState,
    Literal,
    PartialAssignment,
    TotalAssignment,
    condition,
    evaluate_formula,
)

MAX_BRUTE_FORCE_VARS = 25
_CHUNK_BITS = 20


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class ModelSet:
    """All satisfying assignments, in lexicographic order of ``(x1, x2, ...)``."""

    models: tuple[TotalAssignment, ...]

    def __len__(self):
        return len(self.models)

    def __iter__(self):
        return iter(self.models)

    def __contains__(self, item) -> bool:
        if isinstance(item, TotalAssignment):
            return item in self.models
        return TotalAssignment.from_bits(item) in self.models

    def bit_tuples(self) -> list[tuple[int, ...]]:
        return [m.bits() for m in self.models]


@dataclass(frozen=True)
class OracleVerdict:
    witness: Optional[TotalAssignment]

    @property
    def sat(self) -> bool:
        return self.witness is not None

    def __str__(self) -> str:
        return "SAT" if self.sat else "UNSAT"


def _model_mask(f: FormulaState, indices: np.ndarray) -> np.ndarray:
    n = f.num_vars

    def column(var: int) -> np.ndarray:
        # variable 1 is the most significant bit, so ascending index = lex order
        return ((indices >> (n - var)) & 1).astype(np.int8)

    mask = np.ones(indices.shape, dtype=bool)
    for var, value in f.minterm.items():
        mask &= column(var) == int(value)
    for c in f.clauses:
        count = np.zeros(indices.shape, dtype=np.int8)
        for l in c:
            bits = column(l.var)
            count += bits if l.positive else 1 - bits
        mask &= count == 1
    return mask


def brute_force(f: FormulaState) -> ModelSet:
    """Enumerate all ``2**num_vars`` assignments and keep the satisfying ones."""
    n = f.num_vars
    if n > MAX_BRUTE_FORCE_VARS:
        raise CapacityError(f"brute force limited to {MAX_BRUTE_FORCE_VARS} variables, got {n}")
    total = 1 << n
    chunk = 1 << _CHUNK_BITS
    models = []
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        indices = np.arange(start, min(total, start + chunk), dtype=np.int64)
        hits = indices[_model_mask(f, indices)]
        if hits.size:
            bits = (hits[:, None] >> shifts[None, :]) & 1
            models.extend(TotalAssignment(tuple(bool(b) for b in row)) for row in bits)
    return ModelSet(tuple(models))


def _propagate_root(f: FormulaState):
    """Condition on the minterm literals and any unit clauses of ``f``."""
    state = FormulaState(PartialAssignment(), f.clauses, f.num_vars, f.symbols)
    pending = [Literal(v, b) for v, b in f.minterm.items()]
    while True:
        for l in pending:
            state = condition(state, l)
            if isinstance(state, Conflict):
                return state
        pending = [c.literals[0] for c in state.clauses if len(c) == 1]
        if not pending:
            return state


def _complete(state: FormulaState) -> TotalAssignment:
    return TotalAssignment(tuple(state.minterm.get(v, False) for v in range(1, state.num_vars + 1)))


def _search(state: FormulaState) -> Optional[FormulaState]:
    if not state.clauses:
        return state
    var = min(state.clause_variables())
    for value in (True, False):
        child = condition(state, Literal(var, value))
        if isinstance(child, Conflict):
            continue
        found = _search(child)
        if found is not None:
            return found
    return None


def dpll_solve(f: FormulaState) -> OracleVerdict:
    """Chronological backtracking over the lowest-id unbound clause variable.

    Variables eliminated without being bound default to false in the
    witness, which is then checked against ``f``.
    """
    root = _propagate_root(f)
    if isinstance(root, Conflict):
        return OracleVerdict(None)
    final = _search(root)
    if final is None:
        return OracleVerdict(None)
    witness = _complete(final)
    if not evaluate_formula(witness, f):
        raise AssertionError(f"DPLL produced an invalid witness {witness} for {f}")
    return OracleVerdict(witness)
