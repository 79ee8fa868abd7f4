"""Random formulas, differential comparison against the oracle, and shrinking."""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .formula import (
    Clause,
    FormulaState,
    Literal,
    PartialAssignment,
    TotalAssignment,
    evaluate_formula,
)
from .oracle import OracleVerdict, brute_force, dpll_solve, MAX_BRUTE_FORCE_VARS
from .rng import XorShift64Star
from .salum import Claim, Order, OrderingPolicy, Polarity, SalumVerdict, scan

# salt for the stream that draws the fixed decision order in campaigns
FIXED_ORDER_SALT = 0xF1ED_0D3E_5EED_0001
MAX_AUDIT_COMPLETION_VARS = 20


class HarnessError(ValueError):
    pass


@dataclass(frozen=True)
class GenConfig:
    seed: int
    num_vars: int
    num_clauses: int
    width_weights: tuple[int, int] = (1, 3)

    def __post_init__(self):
        w2, w3 = self.width_weights
        if not 0 <= self.seed < 2**64:
            raise HarnessError("seed must be an unsigned 64-bit integer")
        if w2 < 0 or w3 < 0 or w2 + w3 == 0:
            raise HarnessError("width weights must be non-negative and not both zero")
        if self.num_clauses < 1:
            raise HarnessError("num_clauses must be positive")
        if self.num_vars < 2:
            raise HarnessError("need at least 2 variables")
        if w3 > 0 and self.num_vars < 3:
            raise HarnessError("width-3 clauses need at least 3 variables")


def desk_config(seed: int, max_vars: int = 10, max_clauses: int = 12) -> GenConfig:
    """Size schedule used by the desk-scale campaigns: sizes cycle with the seed."""
    span = max_vars - 2
    return GenConfig(seed, 3 + seed % span, 1 + (seed // span) % max_clauses)


def generate(cfg: GenConfig) -> FormulaState:
    """Draw ``cfg.num_clauses`` clauses from the pinned generator.

    Per clause: width 2 if ``below(w2 + w3) < w2`` else 3; the variables
    are a partial Fisher-Yates sample of ``1..num_vars``; each polarity is
    the top bit of one draw.
    """
    rng = XorShift64Star(cfg.seed)
    w2, w3 = cfg.width_weights
    variables = list(range(1, cfg.num_vars + 1))
    clauses = []
    for _ in range(cfg.num_clauses):
        width = 2 if rng.below(w2 + w3) < w2 else 3
        chosen = rng.sample(variables, width)
        clauses.append(Clause(tuple(Literal(v, rng.coin()) for v in chosen)))
    return FormulaState(PartialAssignment(), tuple(clauses), cfg.num_vars)


def fixed_order(cfg: GenConfig) -> tuple[int, ...]:
    rng = XorShift64Star(cfg.seed ^ FIXED_ORDER_SALT)
    return tuple(rng.sample(list(range(1, cfg.num_vars + 1)), cfg.num_vars))


def policy_matrix(fixed: Iterable[int] = ()) -> list[OrderingPolicy]:
    fixed = tuple(fixed)
    out = []
    for kind in Order:
        for pol in Polarity:
            seq = fixed if kind is Order.FIXED else ()
            out.append(OrderingPolicy(kind, pol, seq))
    return out


class AuditStatus(enum.Enum):
    VERIFIED = "verified"
    INVALID = "invalid"
    UNVERIFIABLE = "unverifiable"


@dataclass(frozen=True)
class Audit:
    status: AuditStatus
    witness: Optional[TotalAssignment] = None

    @property
    def ok(self) -> bool:
        return self.status is AuditStatus.VERIFIED


def audit_claim(f: FormulaState, minterm: PartialAssignment) -> Audit:
    """Check a claimed SAT minterm against the original formula.

    Unbound variables that occur in a clause are completed exhaustively,
    false before true, lowest id most significant; the first satisfying
    completion wins.  Unbound variables outside every clause are false.
    """
    constrained = f.clause_variables()
    free = [v for v in range(1, f.num_vars + 1) if v not in minterm and v in constrained]
    if len(free) > MAX_AUDIT_COMPLETION_VARS:
        return Audit(AuditStatus.UNVERIFIABLE)
    base = [minterm.get(v, False) for v in range(1, f.num_vars + 1)]
    for values in itertools.product((False, True), repeat=len(free)):
        for v, b in zip(free, values):
            base[v - 1] = b
        m = TotalAssignment(tuple(base))
        if evaluate_formula(m, f):
            return Audit(AuditStatus.VERIFIED, m)
    return Audit(AuditStatus.UNVERIFIABLE if free else AuditStatus.INVALID)


class Kind(enum.Enum):
    FALSE_UNSAT = "false-unsat"
    FALSE_SAT = "false-sat"


@dataclass(frozen=True)
class Agreement:
    formula: FormulaState
    policy: OrderingPolicy
    sat: bool


@dataclass(frozen=True)
class Disagreement:
    """Salum and the oracle disagree on ``formula`` under ``policy``.

    ``subtag`` refines FALSE_SAT: ``oracle-unsat`` when no model exists at
    all, ``invalid-witness`` when one exists but the claimed one is wrong.
    """

    formula: FormulaState
    policy: OrderingPolicy
    salum_claim: Claim
    salum_minterm: Optional[PartialAssignment]
    audit: Optional[Audit]
    oracle: OracleVerdict
    kind: Kind
    subtag: Optional[str] = None

    @property
    def salum_label(self) -> str:
        if self.salum_claim is Claim.UNSAT:
            return "UNSAT"
        return "SAT" if self.audit.ok else f"SAT-{self.audit.status.value.upper()}"


def compare(f: FormulaState, policy: OrderingPolicy) -> Union[Agreement, Disagreement]:
    """Run both solvers and classify; SAT claims only count once audited."""
    return _classify(f, policy, scan(f, policy))


def _classify(f: FormulaState, policy: OrderingPolicy, verdict: SalumVerdict):
    oracle = dpll_solve(f)
    if verdict.claim is Claim.UNSAT:
        if oracle.sat:
            if not evaluate_formula(oracle.witness, f):
                raise AssertionError("oracle witness failed verification")
            return Disagreement(f, policy, Claim.UNSAT, None, None, oracle, Kind.FALSE_UNSAT)
        return Agreement(f, policy, False)
    audit = audit_claim(f, verdict.minterm)
    if audit.ok:
        if not oracle.sat:
            raise AssertionError(f"oracle says UNSAT but {audit.witness} satisfies the formula")
        return Agreement(f, policy, True)
    if oracle.sat:
        subtag = "invalid-witness"
    else:
        if f.num_vars <= MAX_BRUTE_FORCE_VARS and len(brute_force(f)):
            raise AssertionError("DPLL refuted a formula that has models")
        subtag = "oracle-unsat"
    return Disagreement(f, policy, Claim.SAT, verdict.minterm, audit, oracle, Kind.FALSE_SAT, subtag)


def _same_kind(f: FormulaState, policy: OrderingPolicy, kind: Kind) -> Optional[Disagreement]:
    result = compare(f, policy)
    if isinstance(result, Disagreement) and result.kind is kind:
        return result
    return None


def shrink(d: Disagreement) -> Disagreement:
    """Greedy one-step minimisation preserving the disagreement kind.

    Clause deletions are tried first, first to last, then deleting one
    literal from a 3-literal clause; any accepted edit restarts the sweep.
    The result is locally minimal with respect to both edit kinds.
    """
    current = _same_kind(d.formula, d.policy, d.kind)
    if current is None:
        raise HarnessError("input is not a reproducible disagreement of kind " + d.kind.value)
    while True:
        candidate = _first_accepted_edit(current)
        if candidate is None:
            return current
        current = candidate


def _edits(f: FormulaState):
    clauses = list(f.clauses)
    for i in range(len(clauses)):
        yield f.with_(clauses=tuple(clauses[:i] + clauses[i + 1:]))
    for i, c in enumerate(clauses):
        if len(c) != 3:
            continue
        for dropped in c.literals:
            smaller = Clause(c.without(dropped))
            yield f.with_(clauses=tuple(clauses[:i] + [smaller] + clauses[i + 1:]))


def _first_accepted_edit(d: Disagreement) -> Optional[Disagreement]:
    for candidate in _edits(d.formula):
        result = _same_kind(candidate, d.policy, d.kind)
        if result is not None:
            return result
    return None


@dataclass(frozen=True)
class CampaignResult:
    seed: int
    policy: OrderingPolicy
    outcome: Union[Agreement, Disagreement]
    removes: int


def _run_seed(cfg: GenConfig) -> list[CampaignResult]:
    f = generate(cfg)
    results = []
    for policy in policy_matrix(fixed_order(cfg)):
        verdict = scan(f, policy)
        results.append(CampaignResult(cfg.seed, policy, _classify(f, policy, verdict), verdict.removes))
    return results


def campaign(configs: Iterable[GenConfig], workers: int = 1) -> list[CampaignResult]:
    """Compare every generated formula under the 8-policy matrix.

    Results are ordered by (seed, policy) whatever the worker count.
    """
    configs = list(configs)
    if workers <= 1:
        chunks = [_run_seed(c) for c in configs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_seed, configs))
    results = [r for chunk in chunks for r in chunk]
    kinds, pols = list(Order), list(Polarity)
    results.sort(key=lambda r: (r.seed, kinds.index(r.policy.kind), pols.index(r.policy.polarity)))
    return results
