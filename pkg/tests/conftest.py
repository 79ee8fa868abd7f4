import itertools

import pytest

from x3sat.corpus import paper_counterexample


def recount_models(f):
    """Plain loop over every assignment, written independently of the numpy path."""
    models = []
    for bits in itertools.product((0, 1), repeat=f.num_vars):
        if any(bits[v - 1] != int(b) for v, b in f.minterm.items()):
            continue
        if all(sum(1 for l in c if bits[l.var - 1] == int(l.positive)) == 1 for c in f.clauses):
            models.append(bits)
    return models


@pytest.fixture
def phi():
    return paper_counterexample()


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (ok, detail) before asserting."""
    def record(ok, detail):
        name = request.node.name
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
