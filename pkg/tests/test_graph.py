from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import connected_planar_graphs
from defcolor.corpus import cycle_graph, dodecahedron_edges, path_graph
from defcolor.embedding import find_embedding
from defcolor.graph import (
    DisconnectedInput,
    EdgeListFormatError,
    EmbeddedGraph,
    InvalidRotation,
    LoopEdge,
    VertexOutOfRange,
    build_graph,
    euler_check,
    format_edge_list,
    incidence_count,
    parse_edge_list,
    total_initial_charge,
    trace_faces,
)

# Hand-entered counter-clockwise rotations of the dodecahedron drawn with the
# outer pentagon 0..4, the middle ring 5..14 and the inner pentagon 15..19.
DODECAHEDRON_ROTATION = (
    (1, 5, 4), (2, 7, 0), (3, 9, 1), (4, 11, 2), (0, 13, 3),
    (0, 6, 14), (7, 15, 5), (1, 8, 6), (9, 16, 7), (2, 10, 8),
    (11, 17, 9), (3, 12, 10), (13, 18, 11), (4, 14, 12), (5, 19, 13),
    (6, 16, 19), (8, 17, 15), (10, 18, 16), (12, 19, 17), (14, 15, 18),
)


def dodecahedron_by_hand() -> EmbeddedGraph:
    return EmbeddedGraph(build_graph(20, dodecahedron_edges()), DODECAHEDRON_ROTATION)


def test_build_cycle():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert g.degrees == (2, 2, 2, 2, 2)
    assert g.m == 5


def test_build_complete():
    g = build_graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert g.degrees == (3, 3, 3, 3)


def test_build_drops_duplicate_edges():
    g = build_graph(2, [(0, 1), (0, 1), (1, 0)])
    assert g.degrees == (1, 1)
    assert g.edges() == [(0, 1)]


def test_build_errors():
    with pytest.raises(LoopEdge):
        build_graph(3, [(1, 1)])
    with pytest.raises(VertexOutOfRange):
        build_graph(3, [(0, 3)])


def test_neighbour_lists_sorted():
    g = build_graph(4, [(3, 0), (2, 0), (1, 0)])
    assert g.adjacency[0] == (1, 2, 3)


def test_cycle_faces():
    c5 = cycle_graph(5)
    faces = trace_faces(c5, [((i - 1) % 5, (i + 1) % 5) for i in range(5)])
    assert [f.degree for f in faces] == [5, 5]


def test_dodecahedron_faces_by_hand():
    eg = dodecahedron_by_hand()
    assert len(eg.faces) == 12
    assert {f.degree for f in eg.faces} == {5}
    assert 20 - 30 + len(eg.faces) == 2
    assert euler_check(eg)


def test_path_single_face_walk():
    p3 = path_graph(3)
    (face,) = trace_faces(p3, [(1,), (0, 2), (1,)])
    assert face.degree == 4
    assert face.boundary_walk.count(1) == 2


def test_single_vertex_face():
    eg = EmbeddedGraph(build_graph(1, []), ((),))
    assert [f.degree for f in eg.faces] == [0]
    assert euler_check(eg)
    assert total_initial_charge(eg) == -8


def test_trace_rejects_bad_rotation():
    c5 = cycle_graph(5)
    rot = [((i - 1) % 5, (i + 1) % 5) for i in range(5)]
    rot[0] = (1, 1)
    with pytest.raises(InvalidRotation):
        trace_faces(c5, rot)
    rot[0] = (1,)
    with pytest.raises(InvalidRotation):
        trace_faces(c5, rot)


def test_incidence_counts():
    c5 = EmbeddedGraph(cycle_graph(5), tuple(((i - 1) % 5, (i + 1) % 5) for i in range(5)))
    assert incidence_count(c5, c5.faces[0], 2) == 5
    dodeca = dodecahedron_by_hand()
    assert incidence_count(dodeca, dodeca.faces[3], 3) == 5
    p3 = EmbeddedGraph(path_graph(3), ((1,), (0, 2), (1,)))
    assert incidence_count(p3, p3.faces[0], 2) == 2


def test_euler_check_detects_torus_rotation():
    # K4 with a rotation that does not trace to a sphere
    k4 = build_graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    eg = EmbeddedGraph(k4, ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)))
    assert k4.n - k4.m + len(eg.faces) != 2
    assert not euler_check(eg)


def test_euler_check_rejects_disconnected():
    g = build_graph(4, [(0, 1), (2, 3)])
    eg = EmbeddedGraph(g, ((1,), (0,), (3,), (2,)))
    with pytest.raises(DisconnectedInput):
        euler_check(eg)


def test_faces_deterministic():
    a = dodecahedron_by_hand()
    b = dodecahedron_by_hand()
    assert a.faces == b.faces
    # faces start at their smallest directed edge, in increasing order
    starts = [(f.boundary_walk[0], f.boundary_walk[1]) for f in a.faces]
    assert starts == sorted(starts)


@settings(max_examples=150, deadline=None)
@given(connected_planar_graphs(min_n=1, max_n=14))
def test_handshake_and_charge_identity(g):
    eg = find_embedding(g)
    assert sum(g.degrees) == 2 * g.m
    assert sum(f.degree for f in eg.faces) == 2 * g.m
    darts = [(f.boundary_walk[i], f.boundary_walk[(i + 1) % f.degree]) for f in eg.faces for i in range(f.degree)]
    assert sorted(darts) == sorted((u, v) for u in range(g.n) for v in g.adjacency[u])
    assert euler_check(eg)
    total = sum(Fraction(d - 4) for d in g.degrees) + sum(Fraction(f.degree - 4) for f in eg.faces)
    assert total == -8
    # N_t summed over t recovers the face degree
    for f in eg.faces:
        assert sum(incidence_count(eg, f, t) for t in set(g.degrees)) == f.degree


def test_edge_list_roundtrip():
    eg = dodecahedron_by_hand()
    text = format_edge_list(eg)
    back = parse_edge_list(text)
    assert isinstance(back, EmbeddedGraph)
    assert back.graph == eg.graph and back.rotation == eg.rotation
    plain = parse_edge_list(format_edge_list(eg.graph))
    assert plain == eg.graph


def test_edge_list_errors():
    with pytest.raises(EdgeListFormatError):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(EdgeListFormatError):
        parse_edge_list("3 1\n0 x\n")
    with pytest.raises(EdgeListFormatError):
        parse_edge_list("")
    with pytest.raises(EdgeListFormatError):
        parse_edge_list("3 2\n0 1\n1 2\nrot 0: 1\n")
