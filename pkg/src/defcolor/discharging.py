"""Exact discharging on embedded graphs.

Every vertex and face starts with charge ``degree - 4``; on a connected plane
graph these sum to -8.  The built-in rules move charge in three phases:

* phase 1, computed from degrees only:
  a 4-vertex pays each adjacent 2-vertex 1/9 when it has exactly one 4⁺-neighbour,
  1/6 otherwise; a 5-vertex pays each adjacent 3⁻-vertex 1/5; a 6⁺-vertex pays
  each adjacent 4⁻-vertex 1/3 when it has no 5⁺-neighbour, 2/5 otherwise;
  a 5-face pays each incident 2-vertex 5/9 when it has exactly one, 1/2
  otherwise; a 7⁺-face pays each incident 2-vertex 1;
* phase 2: the two 2-vertices on a 5-face level their charges;
* phase 3: a 5⁺-face pays each incident 3-vertex 2/9.

Face payments are per boundary-walk occurrence.  All arithmetic is in
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graph import EmbeddedGraph, incidence_count
from .lemmas import (
    face_degree_allowed,
    face_incidence_bounds,
    face_walk_is_cycle,
    four_vertex_support,
    light_vertex_support,
    two_vertex_five_faces,
)

VERTEX = "vertex"
FACE = "face"

Element = tuple[str, int]


@dataclass
class ChargeMap:
    vertex: list[Fraction]
    face: list[Fraction]

    def __getitem__(self, key: Element) -> Fraction:
        kind, i = key
        return self.vertex[i] if kind == VERTEX else self.face[i]

    def __setitem__(self, key: Element, value: Fraction) -> None:
        kind, i = key
        if kind == VERTEX:
            self.vertex[i] = value
        else:
            self.face[i] = value

    def total(self) -> Fraction:
        return sum(self.vertex, Fraction(0)) + sum(self.face, Fraction(0))

    def copy(self) -> ChargeMap:
        return ChargeMap(list(self.vertex), list(self.face))

    def items(self) -> Iterable[tuple[Element, Fraction]]:
        for i, x in enumerate(self.vertex):
            yield (VERTEX, i), x
        for i, x in enumerate(self.face):
            yield (FACE, i), x


@dataclass(frozen=True)
class Transfer:
    rule: str
    sender: Element
    receiver: Element
    amount: Fraction

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "from": {"kind": self.sender[0], "id": self.sender[1]},
            "to": {"kind": self.receiver[0], "id": self.receiver[1]},
            "amount": str(self.amount),
        }


@dataclass
class DischargeResult:
    initial: ChargeMap
    final: ChargeMap
    transfers: list[Transfer] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)


def initial_charges(eg: EmbeddedGraph) -> ChargeMap:
    return ChargeMap(
        [Fraction(d - 4) for d in eg.graph.degrees],
        [Fraction(f.degree - 4) for f in eg.faces],
    )


def replay(initial: ChargeMap, transfers: Iterable[Transfer]) -> ChargeMap:
    cm = initial.copy()
    for t in transfers:
        cm[t.sender] -= t.amount
        cm[t.receiver] += t.amount
    return cm


def negative_elements(cm: ChargeMap) -> list[tuple[Element, Fraction]]:
    neg = [(el, x) for el, x in cm.items() if x < 0]
    return sorted(neg, key=lambda item: (item[1], item[0]))


class _Ledger:
    def __init__(self, cm: ChargeMap):
        self.cm = cm
        self.transfers: list[Transfer] = []
        self._settled = 0

    def pay(self, rule: str, sender: Element, receiver: Element, amount: Fraction) -> None:
        self.transfers.append(Transfer(rule, sender, receiver, amount))

    def settle(self) -> None:
        """Apply the transfers recorded since the last settle."""
        for t in self.transfers[self._settled :]:
            self.cm[t.sender] -= t.amount
            self.cm[t.receiver] += t.amount
        self._settled = len(self.transfers)


def apply_builtin_rules(eg: EmbeddedGraph) -> DischargeResult:
    g = eg.graph
    deg = g.degrees
    initial = initial_charges(eg)
    ledger = _Ledger(initial.copy())
    diagnostics: list[str] = []

    for v in range(g.n):
        d = deg[v]
        nbrs = g.adjacency[v]
        if d == 4:
            heavy = sum(1 for w in nbrs if deg[w] >= 4)
            t = Fraction(1, 9) if heavy == 1 else Fraction(1, 6)
            for w in nbrs:
                if deg[w] == 2:
                    ledger.pay("R1", (VERTEX, v), (VERTEX, w), t)
        elif d == 5:
            for w in nbrs:
                if deg[w] <= 3:
                    ledger.pay("R2", (VERTEX, v), (VERTEX, w), Fraction(1, 5))
        elif d >= 6:
            t = Fraction(2, 5) if any(deg[w] >= 5 for w in nbrs) else Fraction(1, 3)
            for w in nbrs:
                if deg[w] <= 4:
                    ledger.pay("R3", (VERTEX, v), (VERTEX, w), t)

    for f in eg.faces:
        twos = [v for v in f.boundary_walk if deg[v] == 2]
        if f.degree == 5 and twos:
            t = Fraction(5, 9) if len(twos) == 1 else Fraction(1, 2)
            if len(twos) > 2:
                diagnostics.append(f"R4: face {f.id} has {len(twos)} incident 2-vertices; paying 1/2 each")
            for v in twos:
                ledger.pay("R4", (FACE, f.id), (VERTEX, v), t)
        elif f.degree >= 7:
            for v in twos:
                ledger.pay("R5", (FACE, f.id), (VERTEX, v), Fraction(1))
    ledger.settle()

    pairs: list[tuple[int, tuple[int, int]]] = []
    for f in eg.faces:
        if f.degree != 5:
            continue
        twos = [v for v in f.boundary_walk if deg[v] == 2]
        if len(twos) > 2:
            diagnostics.append(f"R6: face {f.id} has {len(twos)} incident 2-vertices; skipped")
        elif len(twos) == 2:
            if twos[0] == twos[1]:
                diagnostics.append(f"R6: face {f.id} meets 2-vertex {twos[0]} twice; skipped")
            else:
                pairs.append((f.id, (min(twos), max(twos))))
    uses: dict[int, int] = {}
    for _, pair in pairs:
        for v in pair:
            uses[v] = uses.get(v, 0) + 1
    for fid, (a, b) in pairs:
        shared = [v for v in (a, b) if uses[v] > 1]
        if shared:
            diagnostics.append(f"R6: face {fid} skipped; 2-vertices {shared} lie in several pairs")
            continue
        ca, cb = ledger.cm.vertex[a], ledger.cm.vertex[b]
        if ca != cb:
            hi, lo = (a, b) if ca > cb else (b, a)
            ledger.pay("R6", (VERTEX, hi), (VERTEX, lo), abs(ca - cb) / 2)
    ledger.settle()

    for f in eg.faces:
        if f.degree >= 5:
            for v in f.boundary_walk:
                if deg[v] == 3:
                    ledger.pay("R7", (FACE, f.id), (VERTEX, v), Fraction(2, 9))
    ledger.settle()

    return DischargeResult(initial, ledger.cm, ledger.transfers, diagnostics)


# -- case analysis --------------------------------------------------------------------


@dataclass(frozen=True)
class CaseVerdict:
    kind: str
    element: int
    case: str
    applicable: bool
    mu_star: Fraction
    violated_hypothesis: str | None = None
    witness: Element | None = None

    @property
    def sound(self) -> bool:
        return not self.applicable or self.mu_star >= 0


def _first(checks: Iterable[tuple[str | None, Element]]) -> tuple[str, Element] | None:
    for reason, where in checks:
        if reason:
            return reason, where
    return None


def _light_vertex_checks(eg: EmbeddedGraph, v: int):
    """Hypotheses a 2- or 3-vertex needs before its charge can be bounded."""
    g = eg.graph
    yield light_vertex_support(g, v), (VERTEX, v)
    for fid in eg.vertex_faces[v]:
        f = eg.faces[fid]
        reason = "degenerate-face" if f.degree < 3 else face_degree_allowed(f)
        yield reason, (FACE, fid)
    yield two_vertex_five_faces(eg, v), (VERTEX, v)


def _two_vertex_case(eg: EmbeddedGraph, v: int) -> tuple[str, tuple[str, Element] | None]:
    g = eg.graph
    failed = _first(_light_vertex_checks(eg, v))
    fives = [fid for fid in eg.vertex_faces[v] if eg.faces[fid].degree == 5]
    if not fives:
        return "2-vertex-no-5-face", failed
    f = eg.faces[fives[0]]
    n2 = incidence_count(eg, f, 2)
    case = "2-vertex-5-face-alone" if n2 == 1 else "2-vertex-5-face-pair"
    if failed:
        return case, failed
    failed = _first([(face_walk_is_cycle(f), (FACE, f.id)), (face_incidence_bounds(eg, f), (FACE, f.id))])
    if failed or n2 == 1:
        return case, failed
    (u,) = [w for w in f.boundary_walk if g.degree(w) == 2 and w != v]
    failed = _first(_light_vertex_checks(eg, u))
    if failed:
        return case, failed
    common = set(g.adjacency[v]) & set(g.adjacency[u])
    flank = [w for w in f.boundary_walk if w not in (v, u) and w not in common]
    return case, _first((four_vertex_support(g, w), (VERTEX, w)) for w in flank)


def case_analysis_check(eg: EmbeddedGraph, final: ChargeMap) -> list[CaseVerdict]:
    """Classify each vertex and face and check the local hypotheses its bound uses.

    An element is applicable when all of those hypotheses hold; for such
    elements the final charge must be nonnegative.
    """
    g = eg.graph
    out: list[CaseVerdict] = []
    for v in range(g.n):
        d = g.degree(v)
        failed = None
        if d <= 1:
            case, failed = "low-degree-vertex", ("degree-below-2", (VERTEX, v))
        elif d == 2:
            case, failed = _two_vertex_case(eg, v)
        elif d == 3:
            case = "3-vertex"
            failed = _first(_light_vertex_checks(eg, v))
        elif d == 4:
            case = "4-vertex"
            failed = _first([(four_vertex_support(g, v), (VERTEX, v))])
        elif d == 5:
            case = "5-vertex"
        else:
            case = "6plus-vertex"
        out.append(_verdict(VERTEX, v, case, failed, final.vertex[v]))
    for f in eg.faces:
        failed = None
        k = f.degree
        if k < 3:
            case, failed = "degenerate-face", ("degenerate-face", (FACE, f.id))
        elif k in (3, 4, 6):
            case, failed = f"{k}-face", (face_degree_allowed(f), (FACE, f.id))
        else:
            if k == 5:
                case = "5-face"
            elif incidence_count(eg, f, 2) == k // 2:
                case = "7plus-face-saturated"
            else:
                case = "7plus-face"
            failed = _first([(face_incidence_bounds(eg, f), (FACE, f.id))])
        out.append(_verdict(FACE, f.id, case, failed, final.face[f.id]))
    return out


def _verdict(kind: str, i: int, case: str, failed, mu_star: Fraction) -> CaseVerdict:
    if failed is None:
        return CaseVerdict(kind, i, case, True, mu_star)
    reason, where = failed
    return CaseVerdict(kind, i, case, False, mu_star, reason, where)


SCHEMA = "defcolor.discharge/1"


def discharge_report(eg: EmbeddedGraph, result: DischargeResult, verdicts: list[CaseVerdict]) -> dict:
    by_key = {(c.kind, c.element): c for c in verdicts}
    elements = []
    for key, mu in result.initial.items():
        c = by_key[key]
        entry = {
            "id": key[1],
            "kind": key[0],
            "mu": str(mu),
            "mu_star": str(result.final[key]),
            "case": c.case,
            "applicable": c.applicable,
        }
        if not c.applicable:
            entry["violated_hypothesis"] = {
                "hypothesis": c.violated_hypothesis,
                "kind": c.witness[0],
                "id": c.witness[1],
            }
        elements.append(entry)
    return {
        "schema": SCHEMA,
        "graph": eg.name,
        "initial": str(result.initial.total()),
        "final": str(result.final.total()),
        "negative": [{"kind": k, "id": i, "mu_star": str(x)} for (k, i), x in negative_elements(result.final)],
        "elements": elements,
        "transfers": [t.to_json() for t in result.transfers],
        "diagnostics": list(result.diagnostics),
    }
