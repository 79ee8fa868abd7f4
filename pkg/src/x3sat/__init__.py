"""Exactly-one 3SAT: a backtracking-free procedure, correct oracles, and a
differential harness that finds formulas the procedure gets wrong."""

from .formula import (
    Clause,
    Conflict,
    FormulaError,
    FormulaState,
    Literal,
    PartialAssignment,
    TotalAssignment,
    bind,
    condition,
    evaluate_clause,
    evaluate_formula,
    lit,
    negate,
)
from .oracle import ModelSet, OracleVerdict, brute_force, dpll_solve
from .salum import (
    Claim,
    Order,
    OrderingPolicy,
    Polarity,
    SalumVerdict,
    Trace,
    TraceEvent,
    EventKind,
    reduce,
    remove,
    replay,
    scan,
    scope,
)
from .harness import Agreement, Disagreement, GenConfig, Kind, compare, generate, shrink
from .x3f import parse, serialize

__version__ = "0.1.0"
