from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import connected_planar_graphs, cycle_with_leaves
from defcolor.corpus import cycle_graph, dodecahedron
from defcolor.discharging import apply_builtin_rules, initial_charges, replay
from defcolor.embedding import find_embedding
from defcolor.rules import (
    DegreeRange,
    ParseError,
    RuleSet,
    evaluate,
    lint,
    load_builtin_rules,
    parse_rules,
)

C5 = find_embedding(cycle_graph(5))
BUILTIN = load_builtin_rules()


def test_parse_single_rule():
    rs = parse_rules("phase 1 rule R2: vertex deg=5 gives 1/5 to adjacent vertex deg<=3")
    (r,) = rs.rules
    assert (r.phase, r.name, r.sender, r.relation) == (1, "R2", "vertex", "adjacent")
    assert r.sender_deg == DegreeRange(5, 5) and r.receiver_deg == DegreeRange(0, 3)
    assert r.amount == F(1, 5) and not r.averages


def test_parse_averaging_rule():
    rs = parse_rules("phase 2 rule R6: face deg=5 with count(incident vertex deg=2)==2 averages incident vertex deg=2")
    (r,) = rs.rules
    assert r.averages and r.group_size == 2 and r.sender == "face"


def test_zero_denominator():
    with pytest.raises(ParseError) as info:
        parse_rules("rule X: vertex deg=4 gives 1/0 to adjacent vertex deg<=2")
    assert info.value.line == 1 and info.value.column > 1
    assert "denominator" in info.value.message


@pytest.mark.parametrize(
    "text, line",
    [
        ("rule A: vertex deg=4 gives 1 to adjacent vertex deg=2\nrule A: vertex deg=5 gives 1 to adjacent vertex deg=2", 2),
        ("phase 2 rule A: vertex deg=4 gives 1 to adjacent vertex deg=2\nphase 1 rule B: face deg=5 gives 1 to incident vertex deg=2", 2),
        ("rule A: vertex deg=4 gives 1 to incident vertex deg=2", 1),
        ("rule A: vertex deg=4 averages adjacent vertex deg=2", 1),
        ("rule A: face deg=5 averages incident vertex deg=2", 1),
        ("# comment\n\nrule A: vertex deg=4 gives to adjacent vertex deg=2", 3),
        ("rule A: vertex deg=4 gives 1 to adjacent vertex deg=2 extra", 1),
        ("rule A: vertex deg=4 gives 1 to adjacent vertex deg=2 $", 1),
        ("rule A: vertex deg?4 gives 1 to adjacent vertex deg=2", 1),
        ("rule A vertex deg=4 gives 1 to adjacent vertex deg=2", 1),
    ],
)
def test_parse_errors_are_positioned(text, line):
    with pytest.raises(ParseError) as info:
        parse_rules(text)
    assert info.value.line == line
    assert info.value.column >= 1
    assert str(info.value).startswith(f"{line}:{info.value.column}: ")


def test_phase_inherits():
    rs = parse_rules(
        "phase 2 rule A: vertex deg=4 gives 1 to adjacent vertex deg=2\n"
        "rule B: vertex deg=5 gives 1 to adjacent vertex deg=2\n"
    )
    assert [r.phase for r in rs.rules] == [2, 2]


def test_predicate_canonical_forms():
    a = parse_rules("rule A: vertex deg=4 with count(adjacent vertex deg>=4)<1 gives 1 to adjacent vertex deg=2").rules[0]
    b = parse_rules("rule A: vertex deg=4 with count(adjacent vertex deg>=4)<=0 gives 1 to adjacent vertex deg=2").rules[0]
    c = parse_rules("rule A: vertex deg=4 with not adjacent vertex deg>=4 gives 1 to adjacent vertex deg=2").rules[0]
    assert a.predicates == b.predicates
    assert [(p.op, p.value) for p in c.predicates] == [("==", 0)]
    d = parse_rules("rule A: vertex deg=4 with count(adjacent vertex deg>=4)>1 gives 1 to adjacent vertex deg=2").rules[0]
    assert [(p.op, p.value) for p in d.predicates] == [(">=", 2)]


def test_integer_and_improper_amounts():
    rs = parse_rules("rule A: face deg>=7 gives 1 to incident vertex deg=2\nrule B: face deg>=9 gives 6/4 to incident vertex deg=3")
    assert [r.amount for r in rs.rules] == [1, F(3, 2)]


def test_lint():
    assert lint(BUILTIN) == []
    rs = parse_rules(
        "rule A: vertex deg>=4 gives 1/9 to adjacent vertex deg=2\n"
        "rule B: vertex deg=4 with count(adjacent vertex deg>=4)==1 gives 1/6 to adjacent vertex deg<=3\n"
    )
    (warning,) = lint(rs)
    assert "A" in warning and "B" in warning


def test_empty_ruleset_is_identity():
    eg = dodecahedron()
    res = evaluate(eg, RuleSet())
    assert res.final == initial_charges(eg) and res.transfers == []


def test_single_rule_without_senders():
    rs = parse_rules("rule R5: face deg>=7 gives 1 to incident vertex deg=2")
    assert evaluate(C5, rs).transfers == []


def test_builtin_file_shape():
    assert len(BUILTIN.rules) == 11
    assert BUILTIN.phases() == [1, 2, 3]
    assert [r.name for r in BUILTIN.rules if r.averages] == ["R6"]


def _strip(rule_name: str) -> str:
    return rule_name[:2]


def _same(eg):
    a, b = apply_builtin_rules(eg), evaluate(eg, BUILTIN)
    assert a.final == b.final
    assert sorted((_strip(t.rule), t.sender, t.receiver, t.amount) for t in b.transfers) == sorted(
        (t.rule, t.sender, t.receiver, t.amount) for t in a.transfers
    )


def test_golden_equivalence_examples():
    for eg in (C5, dodecahedron(), cycle_with_leaves([0, 2, 0, 3, 2])[0], cycle_with_leaves([0, 1, 1, 1, 1, 2, 2])[0]):
        _same(eg)


def test_golden_equivalence_on_corpus(corpus):
    for entry in corpus:
        _same(entry.graph)


@settings(max_examples=150, deadline=None)
@given(connected_planar_graphs(min_n=3, max_n=14))
def test_golden_equivalence_on_planar_graphs(g):
    _same(find_embedding(g))


_PIECES = ["phase", "rule", "R1", ":", "vertex", "face", "deg", "=", ">=", "<=", "<", ">", "==", "with", "and",
           "count", "(", ")", "adjacent", "incident", "not", "gives", "to", "averages", "1", "2", "5", "0", "/",
           "#", "\n", "x", "-3", "!"]


@settings(max_examples=400, deadline=None)
@given(st.lists(st.sampled_from(_PIECES), max_size=30), st.lists(st.sampled_from(_PIECES), max_size=30))
def test_parser_and_evaluator_never_crash(prefix, suffix):
    valid = "rule Z: face deg>=5 with count(incident vertex deg=2)==2 averages incident vertex deg=2"
    for text in (" ".join(prefix), " ".join(prefix) + "\n" + valid, valid + "\n" + " ".join(suffix)):
        try:
            rs = parse_rules(text)
        except ParseError as exc:
            assert exc.line >= 1 and exc.column >= 1
            continue
        res = evaluate(C5, rs)
        assert res.final.total() == -8
        assert replay(res.initial, res.transfers) == res.final


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=80))
def test_parser_total_on_arbitrary_text(text):
    try:
        parse_rules(text)
    except ParseError:
        pass
