"""Structural predicates of a smallest non-(2,4)-colourable graph in the family.

Every check runs on arbitrary embedded graphs and reports where the structure
fails; none of them looks at colourings.  Per-element helpers return a reason
code (or None when the element is fine) so the discharging case analysis can
reuse them as local hypotheses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .family import is_in_family
from .graph import EmbeddedGraph, Face, Graph, incidence_count

FORBIDDEN_FACE_DEGREES = frozenset({3, 4, 6})


class NotInFamily(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    element: int
    kind: str  # "vertex" | "face"
    reason: str

    def to_json(self) -> dict:
        return {"element": self.element, "kind": self.kind, "reason": self.reason}


@dataclass
class LemmaReport:
    lemma: str
    witnesses: list[Witness] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.witnesses

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "violated"

    def reasons(self) -> set[str]:
        return {w.reason for w in self.witnesses}

    def elements(self, reason: str | None = None) -> list[int]:
        return [w.element for w in self.witnesses if reason is None or w.reason == reason]

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


# -- per-element predicates ----------------------------------------------------


def light_vertex_support(g: Graph, v: int, d1: int = 2, d2: int = 4) -> str | None:
    """A 3⁻-vertex needs two (d1+2)⁺-neighbours, one of them a (d2+2)⁺-neighbour."""
    if g.degree(v) > 3:
        return None
    nbr_deg = [g.degree(w) for w in g.adjacency[v]]
    if sum(1 for x in nbr_deg if x >= d1 + 2) < 2:
        return "light-vertex-few-heavy-neighbors"
    if not any(x >= d2 + 2 for x in nbr_deg):
        return "light-vertex-no-big-neighbor"
    return None


def four_vertex_support(g: Graph, v: int) -> str | None:
    if g.degree(v) == 4 and not any(g.degree(w) >= 6 for w in g.adjacency[v]):
        return "4-vertex-no-6plus-neighbor"
    return None


def face_walk_is_cycle(face: Face) -> str | None:
    if 3 <= face.degree <= 9 and not face.is_cycle():
        return "face-walk-not-cycle"
    return None


def face_degree_allowed(face: Face) -> str | None:
    if face.degree in FORBIDDEN_FACE_DEGREES:
        return f"forbidden-{face.degree}-face"
    return None


def two_vertex_five_faces(eg: EmbeddedGraph, v: int) -> str | None:
    if eg.degree(v) != 2:
        return None
    fives = sum(1 for f in eg.vertex_faces[v] if eg.faces[f].degree == 5)
    if fives >= 2:
        return "2-vertex-on-two-5-faces"
    return None


def face_incidence_bounds(eg: EmbeddedGraph, face: Face) -> str | None:
    k = face.degree
    n2 = incidence_count(eg, face, 2)
    n3 = incidence_count(eg, face, 3)
    half = k // 2
    if n2 > half:
        return "too-many-2-vertices"
    if n2 < half and n3 > k - 2 * n2 - 1:
        return "too-many-3-vertices"
    if n2 == half and n3 != 0:
        return "3-vertex-on-saturated-face"
    return None


# -- whole-graph checks ----------------------------------------------------------


def _vertex_report(lemma: str, g: Graph, predicate) -> LemmaReport:
    report = LemmaReport(lemma)
    for v in range(g.n):
        reason = predicate(v)
        if reason:
            report.witnesses.append(Witness(v, "vertex", reason))
    return report


def check_light_vertex_support(g: Graph, d1: int, d2: int) -> LemmaReport:
    """Every 3⁻-vertex of a minimal non-(d1,d2)-colourable graph has heavy neighbours."""
    if d1 > d2:
        raise ValueError(f"need d1 <= d2, got ({d1}, {d2})")
    return _vertex_report(f"light-vertex-support({d1},{d2})", g, lambda v: light_vertex_support(g, v, d1, d2))


def check_neighbor_degrees(g: Graph) -> LemmaReport:
    """3⁻-vertices see two 4⁺-vertices (one 6⁺); 4-vertices see a 6⁺-vertex."""

    def predicate(v: int) -> str | None:
        return light_vertex_support(g, v, 2, 4) or four_vertex_support(g, v)

    return _vertex_report("neighbor-degrees", g, predicate)


def check_face_structure(eg: EmbeddedGraph) -> LemmaReport:
    report = LemmaReport("face-structure")
    for f in eg.faces:
        for reason in (face_walk_is_cycle(f), face_degree_allowed(f)):
            if reason:
                report.witnesses.append(Witness(f.id, "face", reason))
    for v in range(eg.n):
        reason = two_vertex_five_faces(eg, v)
        if reason:
            report.witnesses.append(Witness(v, "vertex", reason))
    return report


def check_face_incidences(eg: EmbeddedGraph) -> LemmaReport:
    report = LemmaReport("face-incidences")
    for f in eg.faces:
        reason = face_incidence_bounds(eg, f)
        if reason:
            report.witnesses.append(Witness(f.id, "face", reason))
    return report


def check_min_degree(g: Graph) -> LemmaReport:
    return _vertex_report("min-degree", g, lambda v: "degree-below-2" if g.degree(v) < 2 else None)


def scan_all(eg: EmbeddedGraph) -> list[LemmaReport]:
    verdict = is_in_family(eg)
    if not verdict:
        raise NotInFamily(f"graph is outside the family ({verdict.reason})")
    g = eg.graph
    return [
        check_min_degree(g),
        check_light_vertex_support(g, 2, 4),
        check_neighbor_degrees(g),
        check_face_structure(eg),
        check_face_incidences(eg),
    ]


def minimal_counterexample_candidate(reports: list[LemmaReport]) -> bool:
    """True when min-degree and the three (2,4)-specific checks all hold."""
    needed = {"min-degree", "neighbor-degrees", "face-structure", "face-incidences"}
    return all(r.holds for r in reports if r.lemma in needed)
