"""Named graphs, small exhaustive generation and corpus file loading."""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

import networkx as nx

from .embedding import PLANAR_CODE_HEADER, find_embedding, is_planar, parse_planar_code, to_networkx
from .graph import EmbeddedGraph, Graph, build_graph, is_connected, parse_edge_list

MAX_GENERATED_N = 8

# path lengths (in edges) that close a 3-, 4- or 6-cycle through one more vertex or edge
_VIA_VERTEX = frozenset({1, 2, 4})
_VIA_EDGE = frozenset({2, 3, 5})


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def dodecahedron_edges() -> list[tuple[int, int]]:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, 5 + 2 * i) for i in range(5)]
    ring = [(5 + j, 5 + (j + 1) % 10) for j in range(10)]
    inner_spokes = [(6 + 2 * i, 15 + i) for i in range(5)]
    inner = [(15 + i, 15 + (i + 1) % 5) for i in range(5)]
    return outer + spokes + ring + inner_spokes + inner


def dodecahedron_positions() -> list[tuple[float, float]]:
    """A straight-line plane drawing of :func:`dodecahedron_edges`."""
    pos = []
    for i in range(5):
        pos.append(_polar(3, 72 * i))
    for j in range(10):
        pos.append(_polar(2, 36 * j))
    for i in range(5):
        pos.append(_polar(1, 72 * i + 36))
    return pos


def _polar(r: float, degrees: float) -> tuple[float, float]:
    a = math.radians(degrees)
    return r * math.cos(a), r * math.sin(a)


def rotation_from_positions(g: Graph, pos: list[tuple[float, float]]) -> tuple[tuple[int, ...], ...]:
    """Clockwise neighbour order around each vertex of a straight-line drawing."""
    rot = []
    for v in range(g.n):
        x, y = pos[v]
        rot.append(tuple(sorted(g.adjacency[v], key=lambda w: -math.atan2(pos[w][1] - y, pos[w][0] - x))))
    return tuple(rot)


def dodecahedron() -> EmbeddedGraph:
    g = build_graph(20, dodecahedron_edges())
    return EmbeddedGraph(g, rotation_from_positions(g, dodecahedron_positions()), name="dodecahedron")


def subdivide(g: Graph, k: int) -> Graph:
    """Replace every edge by a path with ``k`` interior vertices."""
    edges = []
    n = g.n
    for u, v in g.edges():
        chain = [u] + list(range(n, n + k)) + [v]
        n += k
        edges += list(zip(chain, chain[1:]))
    return build_graph(n, edges)


def cube_graph() -> Graph:
    return build_graph(8, [(u, u ^ b) for u in range(8) for b in (1, 2, 4) if u < u ^ b])


def prism_graph() -> Graph:
    return build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


def theta_graph(a: int, b: int, c: int) -> Graph:
    """Two vertices joined by three internally disjoint paths of a, b, c edges."""
    edges = []
    n = 2
    for length in (a, b, c):
        chain = [0] + list(range(n, n + length - 1)) + [1]
        n += length - 1
        edges += list(zip(chain, chain[1:]))
    return build_graph(n, edges)


def hand_built() -> list[tuple[str, Graph | EmbeddedGraph]]:
    """Small named instances, family members and non-members alike."""
    return [
        ("C5", cycle_graph(5)),
        ("C6", cycle_graph(6)),
        ("C7", cycle_graph(7)),
        ("C8", cycle_graph(8)),
        ("C9", cycle_graph(9)),
        ("dodecahedron", dodecahedron()),
        ("K4", complete_graph(4)),
        ("K4-subdivided-1", subdivide(complete_graph(4), 1)),
        ("K4-subdivided-2", subdivide(complete_graph(4), 2)),
        ("cube-subdivided-1", subdivide(cube_graph(), 1)),
        ("prism-subdivided-3", subdivide(prism_graph(), 3)),
        ("theta-5-5-5", theta_graph(5, 5, 5)),
        ("theta-3-4-5", theta_graph(3, 4, 5)),
        ("star-4", star_graph(4)),
        ("star-6", star_graph(6)),
        ("P3", path_graph(3)),
        ("petersen", petersen_graph()),
    ]


# -- exhaustive generation ------------------------------------------------------


def _paths_by_length(g: Graph, max_len: int) -> dict[tuple[int, int], set[int]]:
    """Edge-lengths of simple paths between vertex pairs, up to ``max_len``."""
    found: dict[tuple[int, int], set[int]] = defaultdict(set)
    for s in range(g.n):
        stack = [(s, (s,))]
        while stack:
            u, path = stack.pop()
            if len(path) > 1:
                found[(s, u)].add(len(path) - 1)
            if len(path) - 1 == max_len:
                continue
            for w in g.adjacency[u]:
                if w not in path:
                    stack.append((w, path + (w,)))
    return found


def _attachment_sets(g: Graph) -> list[tuple[int, ...]]:
    paths = _paths_by_length(g, 4)
    bad = [[bool(paths.get((u, w), set()) & _VIA_VERTEX) for w in range(g.n)] for u in range(g.n)]
    out = []

    def grow(start: int, chosen: list[int]) -> None:
        out.append(tuple(chosen))
        for v in range(start, g.n):
            if not any(bad[v][u] for u in chosen):
                chosen.append(v)
                grow(v + 1, chosen)
                chosen.pop()

    grow(0, [])
    return out


class _IsoPool:
    def __init__(self) -> None:
        self.buckets: dict[str, list[nx.Graph]] = defaultdict(list)
        self.graphs: list[Graph] = []

    def add(self, g: Graph) -> bool:
        h = to_networkx(g)
        key = f"{sorted(g.degrees)}|{nx.weisfeiler_lehman_graph_hash(h, iterations=3)}"
        bucket = self.buckets[key]
        if any(nx.is_isomorphic(h, other) for other in bucket):
            return False
        bucket.append(h)
        self.graphs.append(g)
        return True


def generate_family(max_n: int, connected_only: bool = True) -> list[Graph]:
    """All planar graphs without 3-, 4- and 6-cycles on 1..max_n vertices, up to isomorphism.

    Built by vertex addition: every such graph minus its last vertex is again
    one, so extending each representative by a new vertex with every allowed
    neighbour set reaches every isomorphism class.
    """
    if max_n > MAX_GENERATED_N:
        raise ValueError(f"internal generation is limited to n <= {MAX_GENERATED_N}")
    level = [build_graph(1, [])]
    result = list(level)
    for n in range(2, max_n + 1):
        pool = _IsoPool()
        for g in level:
            for attach in _attachment_sets(g):
                h = build_graph(n, g.edges() + [(u, n - 1) for u in attach])
                if len(attach) >= 3 and not is_planar(h):
                    continue
                pool.add(h)
        level = pool.graphs
        result += level
    if connected_only:
        result = [g for g in result if is_connected(g)]
    return result


def random_family_graph(n: int, rng: random.Random, fill: float = 1.0, hubs: int = 0) -> Graph:
    """Random planar graph without 3-, 4-, 6-cycles by greedy edge insertion.

    Candidate edges are tried in random order, those touching the first
    ``hubs`` vertices first.  ``fill`` is the fraction of the candidates tried,
    so 1.0 gives an edge-maximal member of the family.
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    pairs.sort(key=lambda e: e[0] >= hubs)
    pairs = pairs[: max(1, int(len(pairs) * fill))]
    g = build_graph(n, [])
    for u, v in pairs:
        if _closes_forbidden_cycle(g, u, v):
            continue
        h = build_graph(n, g.edges() + [(u, v)])
        if is_planar(h):
            g = h
    return g


def two_core(g: Graph) -> Graph:
    """Strip degree-0 and degree-1 vertices repeatedly; survivors are relabelled in order."""
    alive = set(range(g.n))
    deg = list(g.degrees)
    stack = [v for v in alive if deg[v] < 2]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.adjacency[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] < 2:
                    stack.append(w)
    keep = sorted(alive)
    index = {v: i for i, v in enumerate(keep)}
    return build_graph(len(keep), [(index[u], index[v]) for u, v in g.edges() if u in alive and v in alive])


def _closes_forbidden_cycle(g: Graph, u: int, v: int) -> bool:
    stack = [(u, (u,))]
    while stack:
        x, path = stack.pop()
        if x == v and (len(path) - 1) in _VIA_EDGE:
            return True
        if len(path) - 1 == 5 or x == v:
            continue
        for w in g.adjacency[x]:
            if w not in path:
                stack.append((w, path + (w,)))
    return False


# -- files -----------------------------------------------------------------------------


@dataclass
class CorpusEntry:
    name: str
    graph: Graph | EmbeddedGraph

    @property
    def abstract(self) -> Graph:
        return self.graph.graph if isinstance(self.graph, EmbeddedGraph) else self.graph


def load_file(path: str | Path) -> list[CorpusEntry]:
    """Read a planar_code file or an edge-list text file."""
    path = Path(path)
    data = path.read_bytes()
    if data.startswith(PLANAR_CODE_HEADER):
        return [CorpusEntry(f"{path.name}#{i}", eg) for i, eg in enumerate(parse_planar_code(data))]
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ValueError(f"{path}: neither planar_code nor UTF-8 text") from exc
    return [CorpusEntry(path.name, parse_edge_list(text))]


def embedded(entry: CorpusEntry) -> EmbeddedGraph:
    if isinstance(entry.graph, EmbeddedGraph):
        return entry.graph
    return find_embedding(entry.graph, name=entry.name)
