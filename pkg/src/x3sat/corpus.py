"""The counterexample formula, its variant families, and its golden checkpoints.

Variables ``a, b, c, x, y`` are ids 1..5 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .formula import Clause, Conflict, FormulaState, Literal, PartialAssignment

A, B, C, X, Y = 1, 2, 3, 4, 5
NAMES = {A: "a", B: "b", C: "c", X: "x", Y: "y"}

# the model printed alongside the counterexample, as (a, b, c, x, y)
PRINTED_WITNESS = (0, 0, 1, 0, 1)


def paper_counterexample() -> FormulaState:
    """``(a . b . c) & (b . x . y) & (c . x . ~y)``: satisfiable, yet claimed UNSAT."""
    return FormulaState.build(
        [[A, B, C], [B, X, Y], [C, X, -Y]], num_vars=5, symbols=NAMES
    )


Checkpoint = Union[FormulaState, Conflict]


@dataclass(frozen=True)
class GoldenTrace:
    checkpoints: tuple[tuple[str, Checkpoint], ...]

    def __post_init__(self):
        labels = [label for label, _ in self.checkpoints]
        if len(set(labels)) != len(labels):
            raise ValueError("checkpoint labels must be unique")

    def __getitem__(self, label: str) -> Checkpoint:
        return dict(self.checkpoints)[label]

    def labels(self) -> list[str]:
        return [label for label, _ in self.checkpoints]


def _state(minterm: Sequence[int], clauses: Sequence[Sequence[int]]) -> FormulaState:
    return FormulaState.build(clauses, num_vars=5, minterm=minterm, symbols=NAMES)


def golden_trace() -> GoldenTrace:
    """The four intermediate states of the lexicographic, positive-first run.

    The last one is the clash on ``y``: the minterm ``a ~b ~c x ~y`` plus
    the rejected binding ``y``, with no clauses left.
    """
    return GoldenTrace((
        ("reduce(phi,a)", _state([A, -B, -C], [[B, X, Y], [C, X, -Y]])),
        ("reduce(.,~b)", _state([A, -B, -C], [[X, Y], [C, X, -Y]])),
        ("scope(a,phi)", _state([A, -B, -C], [[X, Y], [X, -Y]])),
        ("conflict(y)", Conflict(Literal(Y), _state([A, -B, -C, X, -Y], []))),
    ))


def frequency_padded(k: int = 3) -> FormulaState:
    """Add ``k`` clauses ``(a . x_i . y_i)`` on fresh ids ``6, 7, 8, 9, ...``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    base = paper_counterexample()
    clauses = list(base.clauses)
    names = dict(NAMES)
    for i in range(1, k + 1):
        xi, yi = 5 + 2 * i - 1, 5 + 2 * i
        clauses.append(Clause.of(A, xi, yi))
        names[xi], names[yi] = f"x{i}", f"y{i}"
    return FormulaState(PartialAssignment(), tuple(clauses), 5 + 2 * k, tuple(sorted(names.items())))


def polarity_flipped() -> FormulaState:
    """The counterexample with ``~a`` in place of ``a``."""
    base = paper_counterexample()
    first = Clause((-base.clauses[0].literals[0],) + base.clauses[0].literals[1:])
    return base.with_(clauses=(first,) + base.clauses[1:])


def relabeled(perm: Sequence[int]) -> FormulaState:
    """Rename variable ``v`` to ``perm[v - 1]``; names stay attached to ids.

    ``perm`` must be a permutation of ``1..5``.
    """
    perm = list(perm)
    if sorted(perm) != list(range(1, 6)):
        raise ValueError(f"not a permutation of 1..5: {perm}")
    base = paper_counterexample()
    clauses = tuple(
        Clause(tuple(Literal(perm[l.var - 1], l.positive) for l in c)) for c in base.clauses
    )
    return base.with_(clauses=clauses)


REVERSAL = (Y, X, C, B, A)


def corpus() -> dict[str, FormulaState]:
    """Every shipped corpus formula by file stem."""
    return {
        "paper": paper_counterexample(),
        "padded3": frequency_padded(3),
        "padded10": frequency_padded(10),
        "flipped": polarity_flipped(),
        "relabeled": relabeled(REVERSAL),
    }
