import pytest
from hypothesis import given, settings, strategies as st

from x3sat.corpus import corpus, golden_trace
from x3sat.formula import PartialAssignment, TotalAssignment
from x3sat.harness import GenConfig, generate
from x3sat.salum import LEX_POS, OrderingPolicy, replay, scan
from x3sat.x3f import (
    ClauseCountError,
    DuplicateVariableError,
    HeaderError,
    LiteralError,
    ParseError,
    parse,
    parse_report,
    parse_trace,
    serialize,
    serialize_report,
    serialize_trace,
)

PAPER_TEXT = "p x3f 5 3\n1 2 3 0\n2 4 5 0\n3 4 -5 0\n"


def test_parse_paper(phi):
    assert parse(PAPER_TEXT) == phi
    assert parse(PAPER_TEXT.encode()) == phi


def test_parse_minterm_only():
    f = parse("p x3f 1 0\nm 1 0\n")
    assert f.minterm == PartialAssignment({1: True}) and f.clauses == ()


def test_serialize_roundtrip_canonical():
    assert serialize(parse(PAPER_TEXT)) == PAPER_TEXT


def test_comments_and_symbols():
    text = "c hello\np x3f 2 1\ns 1 a\ns 2 b\nc mid\n1 -2 0\n"
    f = parse(text)
    assert f.symbol_map() == {1: "a", 2: "b"}
    assert serialize(f) == "p x3f 2 1\ns 1 a\ns 2 b\n1 -2 0\n"


def test_minterm_serialized_in_id_order():
    f = parse("p x3f 3 0\nm -3 1 0\n")
    assert serialize(f) == "p x3f 3 0\nm 1 -3 0\n"


@pytest.mark.parametrize("text, error", [
    ("p x3f 2 1\n1 1 0\n", DuplicateVariableError),
    ("p cnf 2 1\n1 2 0\n", HeaderError),
    ("1 2 0\n", HeaderError),
    ("p x3f 2 1\n1 3 0\n", LiteralError),
    ("p x3f 2 1\n1 0 2 0\n", LiteralError),
    ("p x3f 2 1\n1 2\n", LiteralError),
    ("p x3f 2 2\n1 2 0\n", ClauseCountError),
    ("p x3f 2 0\n1 2 0\n", ClauseCountError),
    ("p x3f 4 1\n1 2 3 4 0\n", LiteralError),
    ("p x3f 2 1\n1  2 0\n", ParseError),
    ("p x3f 2 1\n1 2 0", ParseError),
    ("p x3f 2 0\nm 1 -1 0\n", LiteralError),
])
def test_parse_errors(text, error):
    with pytest.raises(error) as info:
        parse(text)
    assert info.value.line is not None


def test_parse_error_reports_line_number():
    with pytest.raises(DuplicateVariableError) as info:
        parse("c x\np x3f 3 2\n1 2 0\n3 -3 0\n")
    assert info.value.line == 4


def test_checkpoint_serialization():
    text = serialize(golden_trace()["scope(a,phi)"])
    assert "4 5 0\n" in text and "4 -5 0\n" in text


@pytest.mark.parametrize("stem", sorted(corpus()))
def test_corpus_roundtrip(stem):
    f = corpus()[stem]
    assert parse(serialize(f)) == f
    assert serialize(parse(serialize(f))) == serialize(f)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**64 - 1), st.integers(3, 12), st.integers(1, 15))
def test_generated_roundtrip(seed, nv, nc):
    f = generate(GenConfig(seed, nv, nc))
    text = serialize(f)
    assert parse(text) == f
    assert serialize(parse(text)) == text


def test_trace_file_roundtrip(phi):
    verdict = scan(phi, LEX_POS)
    text = serialize_trace(verdict.trace, LEX_POS)
    trace, policy = parse_trace(text)
    assert policy == LEX_POS
    assert serialize_trace(trace, policy) == text
    assert len(replay(trace)) == len(verdict.trace)


def test_report_roundtrip(phi):
    policy = OrderingPolicy.parse("fixed:3,1+neg")
    w = TotalAssignment.from_bits((0, 0, 1, 0, 1))
    text = serialize_report(phi, policy, "UNSAT", "SAT", w)
    assert text.endswith("v fixed:3,1+neg UNSAT SAT\nw 00101\n")
    f, p, salum, oracle, witness = parse_report(text)
    assert (f, p, salum, oracle, witness) == (phi, policy, "UNSAT", "SAT", w)
