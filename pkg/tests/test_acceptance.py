"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also written to the terminal when output capture is on.
"""

import random
import time
from fractions import Fraction as F

import networkx as nx
import pytest

from defcolor.coloring import brute_force, enumerate_colorings, extend_after_vertex_deletion, solve, verify_coloring
from conftest import _family_entries
from defcolor.corpus import cycle_graph, dodecahedron, random_family_graph
from defcolor.discharging import apply_builtin_rules, case_analysis_check, replay
from defcolor.embedding import find_embedding
from defcolor.graph import build_graph
from defcolor.lemmas import minimal_counterexample_candidate, scan_all
from defcolor.rules import evaluate, load_builtin_rules
from test_discharging import rule_oracle

ORACLE_DEFECTS = [(0, 0), (0, 1), (1, 1), (2, 4), (3, 3), (0, 6)]
ORACLE_SEED = 7
ORACLE_RANDOM_GRAPHS = 500


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})")
        assert ok, detail

    return emit


def test_1_every_family_graph_is_2_4_colourable(report):
    # timed end to end: generation, file loading, family filter, embedding and solving
    start = time.perf_counter()
    corpus = _family_entries()
    bad = []
    for entry in corpus:
        g = entry.graph.graph
        a = solve(g, (2, 4))
        if a is None or verify_coloring(g, a, (2, 4)):
            bad.append(entry.name)
    elapsed = time.perf_counter() - start
    names = {e.name for e in corpus}
    assert {"C5", "C7", "C8", "C9", "dodecahedron", "cube-subdivided-1"} <= names
    assert max(e.graph.n for e in corpus) >= 16
    report(1, "(2,4)-colourability of the corpus", not bad and elapsed < 300,
           f"{len(corpus)} graphs, {len(bad)} violations, {elapsed:.1f}s")


def test_2_prior_results(corpus, report):
    bad = [(e.name, d) for e in corpus for d in ((0, 6), (3, 3)) if solve(e.graph.graph, d) is None]
    report(2, "(0,6) and (3,3) colourability", not bad, f"{2 * len(corpus)} instances, {len(bad)} unsatisfiable")


def _oracle_graphs():
    for h in nx.graph_atlas_g()[1:]:  # every graph on 1..7 vertices
        yield build_graph(h.number_of_nodes(), list(h.edges()))
    rng = random.Random(ORACLE_SEED)
    for i in range(ORACLE_RANDOM_GRAPHS):
        n = rng.randint(8, 12)
        if i % 2:
            yield random_family_graph(n, rng, fill=rng.random())
        else:
            p = rng.uniform(0.1, 0.6)
            yield build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_3_solver_matches_brute_force(report):
    instances, disagreements = 0, []
    for g in _oracle_graphs():
        for d in ORACLE_DEFECTS:
            instances += 1
            if (solve(g, d) is None) != (brute_force(g, d) is None):
                disagreements.append((g, d))
    report(3, "solver and brute force agree", instances >= 10_000 and not disagreements,
           f"{instances} instances, {len(disagreements)} disagreements")


def test_4_charge_conservation(corpus, report):
    bad = []
    for entry in corpus:
        res = apply_builtin_rules(entry.graph)
        if not (res.initial.total() == res.final.total() == -8 and replay(res.initial, res.transfers) == res.final):
            bad.append(entry.name)
    report(4, "charge conservation and replay", not bad, f"{len(corpus)} graphs, {len(bad)} failures")


def test_5_case_analysis_sound(corpus, report):
    unsound, unexplained, applicable = [], [], 0
    for entry in corpus:
        for c in case_analysis_check(entry.graph, apply_builtin_rules(entry.graph).final):
            applicable += c.applicable
            if not c.sound:
                unsound.append((entry.name, c))
            if c.mu_star < 0 and (c.applicable or c.violated_hypothesis is None or c.witness is None):
                unexplained.append((entry.name, c))
    report(5, "case analysis soundness", not unsound and not unexplained,
           f"{applicable} applicable elements, {len(unsound)} unsound, {len(unexplained)} negatives without witness")


def test_6_no_minimal_counterexample_candidate(corpus, report):
    bad = [e.name for e in corpus if minimal_counterexample_candidate(scan_all(e.graph))]
    report(6, "no graph passes every structural check", not bad, f"{len(corpus)} graphs, {len(bad)} candidates")


def test_7_reduction_extends_every_colouring(corpus, report):
    graphs = checked = 0
    bad = []
    for entry in corpus:
        g = entry.graph.graph
        if g.n > 10:
            continue
        configs = [v for v in range(g.n) if g.degree(v) == 4 and all(g.degree(w) <= 5 for w in g.adjacency[v])]
        graphs += bool(configs)
        for v in configs:
            seen = set()
            for a in enumerate_colorings(g.without_vertex_edges(v), (2, 4)):
                key = a[:v] + (None,) + a[v + 1 :]
                if key in seen:
                    continue
                seen.add(key)
                checked += 1
                out = extend_after_vertex_deletion(g, v, list(key))
                if verify_coloring(g, out, (2, 4)):
                    bad.append((entry.name, v, key))
    report(7, "reduction extends colourings", graphs > 0 and not bad,
           f"{graphs} graphs, {checked} colourings, {len(bad)} failures")


def test_8_dsl_matches_builtin(corpus, report):
    rs = load_builtin_rules()
    bad = [e.name for e in corpus if evaluate(e.graph, rs).final != apply_builtin_rules(e.graph).final]
    report(8, "rule file reproduces built-in rules", not bad, f"{len(corpus)} graphs, {len(bad)} mismatches")


def test_9_worked_examples(report):
    c5, dd = find_embedding(cycle_graph(5)), dodecahedron()
    got_c5, got_dd = apply_builtin_rules(c5).final, apply_builtin_rules(dd).final
    ok = (
        got_c5.vertex == [F(-1)] * 5
        and got_c5.face == [F(-3, 2)] * 2
        and got_dd.vertex == [F(-1, 3)] * 20
        and got_dd.face == [F(-1, 9)] * 12
        and got_c5.total() == got_dd.total() == -8
        and rule_oracle(c5) == got_c5
        and rule_oracle(dd) == got_dd
    )
    report(9, "worked examples", ok, "C5 -1 / -3/2, dodecahedron -1/3 / -1/9")
