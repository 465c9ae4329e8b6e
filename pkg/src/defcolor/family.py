"""Membership in the class of planar graphs without 3-, 4- and 6-cycles."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .embedding import is_planar
from .graph import EmbeddedGraph, Graph

FORBIDDEN_CYCLES = (3, 4, 6)


def find_cycle_of_length(g: Graph, length: int) -> tuple[int, ...] | None:
    """Some simple cycle on exactly ``length`` vertices, or None.

    Depth-bounded search from each start vertex ``s`` through vertices larger
    than ``s`` only, so every cycle is found from its smallest vertex.
    """
    if length < 3:
        raise ValueError(f"cycle length must be at least 3, got {length}")
    adj = g.adjacency
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend(u: int) -> bool:
            if len(path) == length:
                return s in adj[u]
            for w in adj[u]:
                if w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    if extend(w):
                        return True
                    path.pop()
                    on_path.discard(w)
            return False

        if extend(s):
            return tuple(path)
    return None


def has_cycle_of_length(g: Graph, length: int) -> bool:
    return find_cycle_of_length(g, length) is not None


def girth(g: Graph) -> float:
    """Length of a shortest cycle; ``math.inf`` for forests."""
    best = math.inf
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


@dataclass(frozen=True)
class FamilyVerdict:
    member: bool
    reason: str | None = None
    cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.member

    def to_json(self) -> dict:
        out: dict = {"member": self.member}
        if self.reason:
            out["reason"] = self.reason
        if self.cycle is not None:
            out["cycle"] = list(self.cycle)
        return out


def is_in_family(g: Graph | EmbeddedGraph) -> FamilyVerdict:
    """Planar and free of 3-, 4- and 6-cycles.

    Planarity is always re-tested on the abstract graph, even if an embedding
    is supplied.  The witness is the first forbidden cycle found (shortest
    forbidden length first), or ``not-planar``.
    """
    graph = g.graph if isinstance(g, EmbeddedGraph) else g
    for length in FORBIDDEN_CYCLES:
        cyc = find_cycle_of_length(graph, length)
        if cyc is not None:
            return FamilyVerdict(False, f"{length}-cycle", cyc)
    if not is_planar(graph):
        return FamilyVerdict(False, "not-planar")
    return FamilyVerdict(True)
