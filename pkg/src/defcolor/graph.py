"""Simple graphs, rotation systems and face tracing.

Vertices are always ``0..n-1``.  An embedding is given combinatorially by a
rotation system: for every vertex the cyclic (clockwise) order of its
neighbours.  Faces are recovered by walking directed edges: after arriving at
``v`` along ``u -> v`` the walk continues to the neighbour that follows ``u``
in the rotation of ``v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


class LoopEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class InvalidRotation(GraphError):
    pass


class DisconnectedInput(GraphError):
    pass


class EdgeListFormatError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def without_vertex_edges(self, v: int) -> Graph:
        """Same vertex set with every edge at ``v`` removed (``v`` left isolated)."""
        adj = tuple(
            () if u == v else tuple(w for w in nbrs if w != v)
            for u, nbrs in enumerate(self.adjacency)
        )
        return Graph(self.n, adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a simple graph on ``0..n-1``; duplicate edges are dropped."""
    if n < 0:
        raise VertexOutOfRange(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class Face:
    id: int
    boundary_walk: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.boundary_walk)

    def is_cycle(self) -> bool:
        return len(set(self.boundary_walk)) == len(self.boundary_walk)


def _check_rotation(g: Graph, rotation: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    if len(rotation) != g.n:
        raise InvalidRotation(f"rotation has {len(rotation)} entries for {g.n} vertices")
    rot = tuple(tuple(r) for r in rotation)
    for v, r in enumerate(rot):
        if len(set(r)) != len(r):
            raise InvalidRotation(f"vertex {v}: duplicated neighbour in rotation {list(r)}")
        if sorted(r) != list(g.adjacency[v]):
            raise InvalidRotation(
                f"vertex {v}: rotation {list(r)} is not a permutation of neighbours {list(g.adjacency[v])}"
            )
    return rot


def trace_faces(g: Graph, rotation: Sequence[Sequence[int]]) -> list[Face]:
    """Trace every face of the rotation system.

    Faces are numbered in order of their smallest directed edge ``(u, v)``,
    and each boundary walk starts at the tail of that edge.  A graph with a
    single vertex and no edges has one face with an empty walk.
    """
    rot = _check_rotation(g, rotation)
    if g.n == 1 and not rot[0]:
        return [Face(0, ())]
    position = [{w: i for i, w in enumerate(r)} for r in rot]
    visited: set[tuple[int, int]] = set()
    faces: list[Face] = []
    darts = sorted((u, v) for u in range(g.n) for v in rot[u])
    for start in darts:
        if start in visited:
            continue
        walk = []
        u, v = start
        while (u, v) not in visited:
            visited.add((u, v))
            walk.append(u)
            r = rot[v]
            w = r[(position[v][u] + 1) % len(r)]
            u, v = v, w
        faces.append(Face(len(faces), tuple(walk)))
    return faces


@dataclass(frozen=True)
class EmbeddedGraph:
    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotation", _check_rotation(self.graph, self.rotation))

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(trace_faces(self.graph, self.rotation))

    @cached_property
    def vertex_faces(self) -> tuple[tuple[int, ...], ...]:
        """Face ids at each vertex, one entry per boundary-walk occurrence."""
        inc: list[list[int]] = [[] for _ in range(self.graph.n)]
        for f in self.faces:
            for v in f.boundary_walk:
                inc[v].append(f.id)
        return tuple(tuple(x) for x in inc)

    @property
    def n(self) -> int:
        return self.graph.n

    def degree(self, v: int) -> int:
        return self.graph.degree(v)


def incidence_count(eg: EmbeddedGraph, face: Face, t: int) -> int:
    """Number of ``t``-vertex occurrences on the face's boundary walk (with multiplicity)."""
    return sum(1 for v in face.boundary_walk if eg.graph.degree(v) == t)


def euler_check(eg: EmbeddedGraph) -> bool:
    if not is_connected(eg.graph):
        raise DisconnectedInput(f"graph with components {components(eg.graph)} is not connected")
    return eg.graph.n - eg.graph.m + len(eg.faces) == 2


def total_initial_charge(eg: EmbeddedGraph) -> Fraction:
    vsum = sum(d - 4 for d in eg.graph.degrees)
    fsum = sum(f.degree - 4 for f in eg.faces)
    return Fraction(vsum + fsum)


# -- edge-list text -----------------------------------------------------------


def parse_edge_list(text: str) -> Graph | EmbeddedGraph:
    """Parse ``n m`` + ``m`` lines ``u v``, with optional ``rot v: a b c`` lines.

    Returns an :class:`EmbeddedGraph` when rotation lines are present (they must
    then cover every vertex that has neighbours).
    """
    header = None
    edges: list[tuple[int, int]] = []
    rot: dict[int, tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("rot"):
            head, _, tail = line[3:].partition(":")
            try:
                v = int(head)
                order = tuple(int(x) for x in tail.split())
            except ValueError:
                raise EdgeListFormatError(lineno, f"bad rotation line {raw!r}") from None
            if v in rot:
                raise EdgeListFormatError(lineno, f"second rotation for vertex {v}")
            rot[v] = order
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise EdgeListFormatError(lineno, f"expected integers, got {raw!r}") from None
        if len(nums) != 2:
            raise EdgeListFormatError(lineno, f"expected two integers, got {raw!r}")
        if header is None:
            header = (nums[0], nums[1])
        else:
            edges.append((nums[0], nums[1]))
    if header is None:
        raise EdgeListFormatError(1, "missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise EdgeListFormatError(1, f"header announces {m} edges, found {len(edges)}")
    g = build_graph(n, edges)
    if not rot:
        return g
    rotation = []
    for v in range(n):
        if v not in rot and g.adjacency[v]:
            raise EdgeListFormatError(1, f"rotation missing for vertex {v}")
        rotation.append(rot.get(v, ()))
    return EmbeddedGraph(g, tuple(rotation))


def format_edge_list(g: Graph | EmbeddedGraph) -> str:
    graph = g.graph if isinstance(g, EmbeddedGraph) else g
    lines = [f"{graph.n} {graph.m}"]
    lines += [f"{u} {v}" for u, v in graph.edges()]
    if isinstance(g, EmbeddedGraph):
        lines += [f"rot {v}: " + " ".join(map(str, r)) for v, r in enumerate(g.rotation)]
    return "\n".join(lines) + "\n"
