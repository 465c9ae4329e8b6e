"""Defective colourings: verification, exact search and a recolouring reduction.

Colours are ``1..k``.  A defect vector ``d`` gives the budget ``d[i-1]`` of
same-coloured neighbours allowed at a vertex of colour ``i``.  Assignments are
sequences indexed by vertex; ``None`` marks an uncoloured vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .graph import Graph

Coloring = tuple[int, ...]


class ColoringError(ValueError):
    pass


class IncompleteAssignment(ColoringError):
    pass


class InstanceTooLarge(ColoringError):
    pass


class InvalidInputColoring(ColoringError):
    pass


class PreconditionViolated(ColoringError):
    pass


BRUTE_FORCE_LIMIT = 2**24


def check_defects(d: Iterable[int]) -> tuple[int, ...]:
    d = tuple(int(x) for x in d)
    if not d:
        raise ValueError("defect vector needs at least one colour")
    if any(x < 0 for x in d):
        raise ValueError(f"defect budgets must be nonnegative: {d}")
    return d


def parse_defects(text: str) -> tuple[int, ...]:
    return check_defects(int(x) for x in text.split(","))


@dataclass(frozen=True)
class Violation:
    vertex: int
    color: int
    same_color_neighbors: int
    budget: int


def verify_coloring(g: Graph, colors: Sequence[Optional[int]], d: Sequence[int]) -> list[Violation]:
    """Vertices whose same-colour neighbour count exceeds their budget.

    An empty list means the colouring is valid.
    """
    d = check_defects(d)
    if len(colors) != g.n or any(c is None for c in colors):
        raise IncompleteAssignment("every vertex must be coloured")
    out = []
    for v in range(g.n):
        c = colors[v]
        if not 1 <= c <= len(d):
            raise ColoringError(f"vertex {v} has colour {c} outside 1..{len(d)}")
        same = sum(1 for w in g.adjacency[v] if colors[w] == c)
        if same > d[c - 1]:
            out.append(Violation(v, c, same, d[c - 1]))
    return out


def is_valid(g: Graph, colors: Sequence[Optional[int]], d: Sequence[int]) -> bool:
    return not verify_coloring(g, colors, d)


def solve(g: Graph, d: Sequence[int]) -> Coloring | None:
    """An exact defective colouring by backtracking, or None if none exists.

    Vertices are coloured in descending-degree order (ties by id), colours
    tried in increasing order.  A branch is cut when a budget is exceeded or
    an uncoloured neighbour of the last vertex has no colour left.
    """
    d = check_defects(d)
    k = len(d)
    adj = g.adjacency
    order = sorted(range(g.n), key=lambda v: (-len(adj[v]), v))
    color = [0] * g.n
    # same[v]: coloured neighbours of v sharing its colour
    same = [0] * g.n

    def fits(v: int, c: int) -> bool:
        cnt = 0
        for w in adj[v]:
            if color[w] == c:
                if same[w] >= d[c - 1]:
                    return False
                cnt += 1
        return cnt <= d[c - 1]

    def feasible(v: int) -> bool:
        return any(fits(v, c) for c in range(1, k + 1))

    def place(v: int, c: int, sign: int) -> None:
        for w in adj[v]:
            if color[w] == c:
                same[w] += sign
                same[v] += sign

    def search(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(1, k + 1):
            if not fits(v, c):
                continue
            color[v] = c
            place(v, c, +1)
            if all(color[w] or feasible(w) for w in adj[v]) and search(i + 1):
                return True
            place(v, c, -1)
            color[v] = 0
        return False

    return tuple(color) if search(0) else None


def brute_force(g: Graph, d: Sequence[int]) -> Coloring | None:
    """First valid colouring in lexicographic order (vertex 0 most significant).

    Exhaustive over all ``k**n`` assignments, evaluated in vectorised chunks.
    """
    d = check_defects(d)
    k, n = len(d), g.n
    if k**n > BRUTE_FORCE_LIMIT:
        raise InstanceTooLarge(f"{k}**{n} assignments exceed {BRUTE_FORCE_LIMIT}")
    if n == 0:
        return ()
    adj = np.zeros((n, n), dtype=np.int16)
    for u, v in g.edges():
        adj[u, v] = adj[v, u] = 1
    budgets = np.asarray(d, dtype=np.int16)
    weights = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    total = k**n
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        assign = (idx[:, None] // weights[None, :]) % k
        same = np.zeros(assign.shape, dtype=np.int16)
        for c in range(k):
            mask = (assign == c).astype(np.int16)
            same += mask * (mask @ adj)
        ok = np.all(same <= budgets[assign], axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            return tuple(int(x) + 1 for x in assign[hits[0]])
    return None


def enumerate_colorings(g: Graph, d: Sequence[int]) -> list[Coloring]:
    """All valid colourings, exhaustively (small graphs only)."""
    d = check_defects(d)
    k, n = len(d), g.n
    if k**n > BRUTE_FORCE_LIMIT:
        raise InstanceTooLarge(f"{k}**{n} assignments exceed {BRUTE_FORCE_LIMIT}")
    if n == 0:
        return [()]
    adj = np.zeros((n, n), dtype=np.int16)
    for u, v in g.edges():
        adj[u, v] = adj[v, u] = 1
    budgets = np.asarray(d, dtype=np.int16)
    weights = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    assign = (np.arange(k**n, dtype=np.int64)[:, None] // weights[None, :]) % k
    same = np.zeros(assign.shape, dtype=np.int16)
    for c in range(k):
        mask = (assign == c).astype(np.int16)
        same += mask * (mask @ adj)
    ok = np.all(same <= budgets[assign], axis=1)
    return [tuple(int(x) + 1 for x in row) for row in assign[ok]]


# -- (2,4) recolouring reduction ---------------------------------------------------

REDUCTION_DEFECTS = (2, 4)


def _recolor_pass(g: Graph, colors: list, candidates: Iterable[int]) -> bool:
    changed = False
    for v in candidates:
        if colors[v] == 2 and g.degree(v) <= 4 and all(colors[w] == 2 for w in g.adjacency[v]):
            colors[v] = 1
            changed = True
    return changed


def normalize_color2(g: Graph, colors: Sequence[int], order: Sequence[int] | None = None) -> Coloring:
    """Recolour to 1 every 4⁻-vertex of colour 2 whose neighbours all have colour 2.

    Input and output are valid (2,4)-colourings.  Passes repeat until nothing
    changes; ``order`` fixes the scan order within a pass (default: by id).
    """
    if len(colors) != g.n or verify_coloring(g, colors, REDUCTION_DEFECTS):
        raise InvalidInputColoring("input is not a valid (2,4)-colouring")
    out = list(colors)
    order = range(g.n) if order is None else order
    while _recolor_pass(g, out, order):
        pass
    return tuple(out)


def extend_after_vertex_deletion(
    g: Graph, v: int, colors: Sequence[Optional[int]], order: Sequence[int] | None = None
) -> Coloring:
    """Extend a (2,4)-colouring of ``g - v`` to ``g``.

    ``v`` must be a 4-vertex whose neighbours all have degree at most 5.
    ``colors[v]`` is ignored.  Neighbours of ``v`` that are colour 2 with an
    all-colour-2 neighbourhood in ``g - v`` move to colour 1, then ``v`` gets
    colour 2.
    """
    if g.degree(v) != 4:
        raise PreconditionViolated(f"vertex {v} has degree {g.degree(v)}, expected 4")
    heavy = [w for w in g.adjacency[v] if g.degree(w) > 5]
    if heavy:
        raise PreconditionViolated(f"vertex {v} has 6+-neighbours {heavy}")
    if len(colors) != g.n:
        raise IncompleteAssignment(f"expected {g.n} entries, got {len(colors)}")
    h = g.without_vertex_edges(v)
    rest = list(colors)
    rest[v] = 1  # placeholder: v is isolated in h
    if any(c is None for c in rest) or verify_coloring(h, rest, REDUCTION_DEFECTS):
        raise InvalidInputColoring(f"input is not a valid (2,4)-colouring of G - {v}")
    nbrs = g.adjacency[v] if order is None else [w for w in order if w in g.adjacency[v]]
    while _recolor_pass(h, rest, nbrs):
        pass
    rest[v] = 2
    return tuple(rest)


def format_coloring(colors: Sequence[int]) -> str:
    return "".join(f"{v} {c}\n" for v, c in enumerate(colors))


def parse_coloring(text: str, n: int) -> list[Optional[int]]:
    colors: list[Optional[int]] = [None] * n
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            v, c = (int(x) for x in line.split())
        except ValueError:
            raise ColoringError(f"line {lineno}: expected 'vertex colour', got {raw!r}") from None
        if not 0 <= v < n:
            raise ColoringError(f"line {lineno}: vertex {v} outside 0..{n - 1}")
        colors[v] = c
    return colors
