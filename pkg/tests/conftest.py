from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import strategies as st

from defcolor.corpus import CorpusEntry, embedded, generate_family, hand_built, load_file
from defcolor.embedding import is_planar
from defcolor.family import is_in_family
from defcolor.graph import EmbeddedGraph, Graph, build_graph, is_connected

FIXTURES = Path(__file__).parent / "fixtures"


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 12, max_p: float = 1.0) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    p = draw(st.floats(0.0, max_p))
    mask = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [e for e, x in zip(pairs, mask) if x < p])


@st.composite
def connected_planar_graphs(draw, min_n: int = 1, max_n: int = 12) -> Graph:
    """A random spanning tree plus random extra edges that keep planarity."""
    n = draw(st.integers(min_n, max_n))
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    for u, v in extra:
        if u == v:
            continue
        trial = build_graph(n, edges + [(u, v)])
        if is_planar(trial):
            edges.append((u, v))
    return build_graph(n, edges)


def cycle_with_leaves(extra_degree: list[int]) -> tuple[EmbeddedGraph, int]:
    """A k-cycle whose vertex i gets ``extra_degree[i]`` leaves, all drawn outside.

    Returns the embedding and the id of the inner face, whose walk is the cycle.
    """
    k = len(extra_degree)
    edges = [(i, (i + 1) % k) for i in range(k)]
    rot: list[tuple[int, ...]] = [((i - 1) % k, (i + 1) % k) for i in range(k)]
    nxt = k
    for i, e in enumerate(extra_degree):
        leaves = tuple(range(nxt, nxt + e))
        edges += [(i, x) for x in leaves]
        rot[i] += leaves
        rot += [(i,) for _ in leaves]
        nxt += e
    eg = EmbeddedGraph(build_graph(nxt, edges), tuple(rot))
    inner = [f for f in eg.faces if f.degree == k and set(f.boundary_walk) == set(range(k))]
    assert len(inner) == 1
    return eg, inner[0].id


def _family_entries() -> list[CorpusEntry]:
    entries = [CorpusEntry(name, g) for name, g in hand_built()]
    entries += [CorpusEntry(f"gen-n{g.n}-{i}", g) for i, g in enumerate(generate_family(8))]
    entries += load_file(FIXTURES / "random_family.pc")
    out = []
    for e in entries:
        g = e.abstract
        if is_connected(g) and is_in_family(g):
            out.append(CorpusEntry(e.name, embedded(e)))
    return out


_CORPUS: list[CorpusEntry] | None = None


def family_corpus() -> list[CorpusEntry]:
    """Connected family members from every corpus source, all embedded."""
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = _family_entries()
    return _CORPUS


@pytest.fixture(scope="session")
def corpus() -> list[CorpusEntry]:
    return family_corpus()
