"""Exit criteria.  Each test records a PASS/FAIL line shown in the terminal summary."""

import time
from pathlib import Path

from x3sat.cli import main
from x3sat.corpus import (
    PRINTED_WITNESS,
    REVERSAL,
    corpus,
    frequency_padded,
    golden_trace,
    paper_counterexample,
    polarity_flipped,
    relabeled,
)
from x3sat.formula import Conflict, Literal, condition, evaluate_formula
from x3sat.harness import (
    Disagreement,
    Kind,
    _edits,
    _same_kind,
    compare,
    desk_config,
    fixed_order,
    generate,
    policy_matrix,
    shrink,
)
from x3sat.oracle import brute_force, dpll_solve
from x3sat.salum import Claim, LEX_POS, OrderingPolicy, replay, scan
from x3sat.x3f import parse, parse_trace, serialize

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
CAMPAIGN_SEEDS = range(1, 1001)


def _matches(checkpoint, state):
    # golden conflicts carry no detection site, so compare literal and state only
    if isinstance(checkpoint, Conflict):
        return (isinstance(state, Conflict) and state.literal == checkpoint.literal
                and state.state == checkpoint.state)
    return checkpoint == state


def _is_subsequence(needles, haystack):
    it = iter(haystack)
    return all(any(_matches(n, h) for h in it) for n in needles)


def test_criterion_1_golden_trace_replay(tmp_path, criterion):
    start = time.perf_counter()
    out = tmp_path / "paper.trace"
    code = main(["trace", str(CORPUS_DIR / "paper.x3f"), "--order", "lex", "--polarity", "pos",
                 "--out", str(out)])
    trace, policy = parse_trace(out.read_text())
    states = replay(trace)
    checkpoints = [state for _, state in golden_trace().checkpoints]
    found = _is_subsequence(checkpoints, states)
    verdict = trace.events[-1]
    unsat = verdict.detail == "unsat" and scan(paper_counterexample(), policy).claim is Claim.UNSAT
    elapsed = time.perf_counter() - start
    ok = code == 0 and found and unsat and elapsed < 1.0
    criterion(ok, f"4 checkpoints in order={found}, ClaimedUnsat={unsat}, {elapsed:.3f}s < 1s")
    assert ok


def test_criterion_2_thesis_reproduction(criterion):
    start = time.perf_counter()
    phi = paper_counterexample()
    d = compare(phi, LEX_POS)
    models = set(brute_force(phi).bit_tuples())
    elapsed = time.perf_counter() - start
    ok = (isinstance(d, Disagreement) and d.kind is Kind.FALSE_UNSAT
          and models == {(0, 1, 0, 0, 0), (0, 0, 1, 0, 1)}
          and PRINTED_WITNESS in models and elapsed < 1.0)
    criterion(ok, f"kind={getattr(d, 'kind', d)}, models={sorted(models)}, {elapsed:.3f}s < 1s")
    assert ok


def test_criterion_3_variant_matrix(criterion):
    start = time.perf_counter()
    cases = {
        "frequency_padded(3) freq+pos": (frequency_padded(3), "freq+pos"),
        "polarity_flipped lex+neg": (polarity_flipped(), "lex+neg"),
        "relabeled(reversal) revlex+pos": (relabeled(REVERSAL), "revlex+pos"),
    }
    kinds = {}
    for name, (f, token) in cases.items():
        d = compare(f, OrderingPolicy.parse(token))
        kinds[name] = d.kind if isinstance(d, Disagreement) else None
    elapsed = time.perf_counter() - start
    ok = all(k is Kind.FALSE_UNSAT for k in kinds.values()) and elapsed < 5.0
    criterion(ok, f"{sum(k is Kind.FALSE_UNSAT for k in kinds.values())}/3 FalseUnsat, {elapsed:.3f}s < 5s")
    assert ok


def test_criterion_4_oracle_cross_equivalence(criterion):
    start = time.perf_counter()
    agree = witnesses_ok = 0
    for seed in CAMPAIGN_SEEDS:
        f = generate(desk_config(seed))
        assert f.num_vars <= 10 and len(f.clauses) <= 12
        models = brute_force(f)
        verdict = dpll_solve(f)
        agree += verdict.sat == bool(len(models))
        witnesses_ok += (not verdict.sat) or (evaluate_formula(verdict.witness, f)
                                              and verdict.witness in models)
    elapsed = time.perf_counter() - start
    n = len(CAMPAIGN_SEEDS)
    ok = agree == n and witnesses_ok == n and elapsed < 60.0
    criterion(ok, f"agree {agree}/{n}, witnesses {witnesses_ok}/{n}, {elapsed:.1f}s < 60s")
    assert ok


def test_criterion_5_conditioning_soundness(criterion):
    start = time.perf_counter()
    mismatches = checked = 0
    for seed in range(1, 201):
        f = generate(desk_config(seed, max_vars=8))
        assert f.num_vars <= 8
        models = brute_force(f).bit_tuples()
        for var in range(1, f.num_vars + 1):
            for positive in (True, False):
                checked += 1
                expected = [m for m in models if m[var - 1] == int(positive)]
                g = condition(f, Literal(var, positive))
                if isinstance(g, Conflict):
                    mismatches += expected != []
                else:
                    mismatches += brute_force(g).bit_tuples() != expected
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60.0
    criterion(ok, f"{mismatches} mismatches over {checked} (formula, literal) pairs, {elapsed:.1f}s < 60s")
    assert ok


def test_criterion_6_shrinker(criterion):
    start = time.perf_counter()
    policy = OrderingPolicy.parse("freq+pos")
    d = compare(frequency_padded(10), policy)
    small = shrink(d)
    recheck = compare(small.formula, policy)
    still = isinstance(recheck, Disagreement) and recheck.kind is Kind.FALSE_UNSAT
    minimal = all(_same_kind(g, policy, Kind.FALSE_UNSAT) is None for g in _edits(small.formula))
    n_clauses = len(small.formula.clauses)
    elapsed = time.perf_counter() - start
    ok = still and minimal and n_clauses <= 3 and elapsed < 30.0
    criterion(ok, f"FalseUnsat={still}, locally minimal={minimal}, clauses={n_clauses} (need <= 3), "
                  f"{elapsed:.2f}s < 30s; result {small.formula.pretty()}")
    assert ok


def test_criterion_7_format_roundtrip(criterion):
    start = time.perf_counter()
    failures = 0
    files = sorted(CORPUS_DIR.glob("*.x3f"))
    for path in files:
        text = path.read_text()
        f = parse(text)
        failures += serialize(f) != text or parse(serialize(f)) != f
    for seed in CAMPAIGN_SEEDS:
        f = generate(desk_config(seed))
        text = serialize(f)
        failures += parse(text) != f or serialize(parse(text)) != text
    elapsed = time.perf_counter() - start
    ok = failures == 0 and len(files) == len(corpus()) and elapsed < 10.0
    criterion(ok, f"{failures} failures over {len(files)} corpus files + 1000 generated, {elapsed:.2f}s < 10s")
    assert ok


def test_criterion_8_termination(criterion):
    runs = violations = 0
    for seed in CAMPAIGN_SEEDS:
        cfg = desk_config(seed)
        f = generate(cfg)
        for policy in policy_matrix(fixed_order(cfg)):
            runs += 1
            verdict = scan(f, policy)
            violations += verdict.removes > f.num_vars
    ok = runs == 8000 and violations == 0
    criterion(ok, f"{runs} runs, {violations} remove-counter violations")
    assert ok
