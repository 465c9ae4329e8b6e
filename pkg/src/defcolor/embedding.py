"""Planarity testing, embedding search and planar_code ingestion."""

from __future__ import annotations

from itertools import permutations, product
from math import factorial, prod
from typing import Iterator

import networkx as nx

from .graph import (
    DisconnectedInput,
    EmbeddedGraph,
    Graph,
    GraphError,
    build_graph,
    components,
    is_connected,
    trace_faces,
)

PLANAR_CODE_HEADER = b">>planar_code<<"


class NotPlanar(GraphError):
    pass


class PlanarCodeError(GraphError):
    def __init__(self, offset: int, message: str):
        super().__init__(f"byte {offset}: {message}")
        self.offset = offset
        self.message = message


class BadHeader(PlanarCodeError):
    pass


class TruncatedRecord(PlanarCodeError):
    pass


class NeighborOutOfRange(PlanarCodeError):
    pass


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def is_planar(g: Graph) -> bool:
    planar, _ = nx.check_planarity(to_networkx(g))
    return planar


def find_embedding(g: Graph, name: str = "") -> EmbeddedGraph:
    """Return a planar rotation system for a connected graph.

    Raises :class:`NotPlanar` when none exists.  The traced faces are checked
    against Euler's formula before returning.
    """
    if not is_connected(g):
        raise DisconnectedInput(f"graph with components {components(g)} is not connected")
    planar, emb = nx.check_planarity(to_networkx(g))
    if not planar:
        raise NotPlanar(f"graph with n={g.n}, m={g.m} is not planar")
    rotation = tuple(tuple(emb.neighbors_cw_order(v)) if g.adjacency[v] else () for v in range(g.n))
    eg = EmbeddedGraph(g, rotation, name=name)
    if g.n - g.m + len(eg.faces) != 2:
        raise AssertionError("embedding from planarity test fails Euler's formula")
    return eg


def mirror(eg: EmbeddedGraph) -> EmbeddedGraph:
    """The reflected embedding (every rotation reversed)."""
    return EmbeddedGraph(eg.graph, tuple(tuple(reversed(r)) for r in eg.rotation), name=eg.name)


def rotation_system_count(g: Graph) -> int:
    return prod(factorial(max(d - 1, 0)) for d in g.degrees)


def all_planar_embeddings(g: Graph, limit: int = 20000) -> Iterator[EmbeddedGraph]:
    """Every rotation system of a connected graph that traces to a sphere.

    Rotations are normalised to start at the smallest neighbour, so each
    combinatorial embedding appears once.  Refuses graphs with more than
    ``limit`` rotation systems.
    """
    if not is_connected(g):
        raise DisconnectedInput("graph is not connected")
    if rotation_system_count(g) > limit:
        raise ValueError(f"{rotation_system_count(g)} rotation systems exceed limit {limit}")
    choices = []
    for nbrs in g.adjacency:
        if len(nbrs) <= 2:
            choices.append([tuple(nbrs)])
        else:
            first, rest = nbrs[0], nbrs[1:]
            choices.append([(first, *p) for p in permutations(rest)])
    target = 2 - g.n + g.m
    for rotation in product(*choices):
        if len(trace_faces(g, rotation)) == target:
            yield EmbeddedGraph(g, rotation)


# -- planar_code ----------------------------------------------------------------


def parse_planar_code(data: bytes) -> list[EmbeddedGraph]:
    """Decode a 1-byte, 1-based planar_code stream.

    Each record is the vertex count followed by, for every vertex, its
    clockwise neighbour list terminated by ``0``.
    """
    if not data.startswith(PLANAR_CODE_HEADER):
        raise BadHeader(0, f"expected header {PLANAR_CODE_HEADER!r}")
    pos = len(PLANAR_CODE_HEADER)
    graphs = []
    while pos < len(data):
        record_start = pos
        n = data[pos]
        pos += 1
        if n == 0:
            raise PlanarCodeError(record_start, "two-byte planar_code records are not supported")
        rotation: list[tuple[int, ...]] = []
        for v in range(n):
            nbrs = []
            while True:
                if pos >= len(data):
                    raise TruncatedRecord(pos, f"record at byte {record_start} ends inside vertex {v + 1}")
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise NeighborOutOfRange(pos - 1, f"neighbour {b} in a {n}-vertex graph")
                nbrs.append(b - 1)
            rotation.append(tuple(nbrs))
        edges = [(u, w) for u, r in enumerate(rotation) for w in r]
        try:
            g = build_graph(n, edges)
        except GraphError as exc:
            raise PlanarCodeError(record_start, str(exc)) from None
        for u, r in enumerate(rotation):
            if len(r) != len(g.adjacency[u]):
                raise PlanarCodeError(record_start, f"vertex {u + 1}: neighbour list is not symmetric")
        try:
            eg = EmbeddedGraph(g, tuple(rotation), name=f"planar_code#{len(graphs)}")
            ok = is_connected(g) and g.n - g.m + len(eg.faces) == 2
        except GraphError as exc:
            raise PlanarCodeError(record_start, str(exc)) from None
        if not ok:
            raise PlanarCodeError(record_start, "recorded rotation is not a connected plane embedding")
        graphs.append(eg)
    return graphs


def serialize_planar_code(graphs: list[EmbeddedGraph]) -> bytes:
    out = bytearray(PLANAR_CODE_HEADER)
    for eg in graphs:
        if not 0 < eg.n <= 255:
            raise ValueError(f"planar_code 1-byte records need 1 <= n <= 255, got {eg.n}")
        out.append(eg.n)
        for r in eg.rotation:
            out.extend(w + 1 for w in r)
            out.append(0)
    return bytes(out)
