import pytest

from decograph import (
    BadBoundaryMap,
    DanglingPair,
    DuplicateHalfEdge,
    GraphError,
    HalfEdgeInTwoVertices,
    InvalidCycle,
    OrientedCycle,
    SelfPairing,
    boundary_isomorphism,
    build_graph,
    cycle_basis,
    graph_stats,
    is_connected,
)
from conftest import fig_a_graph, triangle_graph, wheel_graph


class TestBuildGraph:
    def test_basic_counts(self):
        g = fig_a_graph()
        s = graph_stats(g)
        assert (s.v, s.i, s.e) == (2, 1, 4)
        assert 3 * s.v == 2 * s.i + s.e
        assert s.genus == (0,)

    def test_auto_named_vertices(self):
        g = build_graph([("a", "b", "c")])
        assert g.vertex_names() == ["v0"]

    def test_duplicate_half_edge(self):
        with pytest.raises(DuplicateHalfEdge):
            build_graph([("a", "a", "b")])

    def test_half_edge_in_two_vertices(self):
        with pytest.raises(HalfEdgeInTwoVertices):
            build_graph([("a", "b", "c"), ("a", "d", "e")])

    def test_self_pairing(self):
        with pytest.raises(SelfPairing):
            build_graph([("a", "b", "c")], [("a", "a")])

    def test_dangling_pair(self):
        with pytest.raises(DanglingPair):
            build_graph([("a", "b", "c")], [("a", "zzz")])

    def test_bad_declared_boundary(self):
        with pytest.raises(GraphError):
            build_graph([("a", "b", "c")], boundary=("a", "b"))

    def test_wrong_triple_size(self):
        with pytest.raises(GraphError):
            build_graph([("a", "b")])


class TestStatsAndCycles:
    def test_wheel_genus_one(self):
        g = wheel_graph()
        assert graph_stats(g).genus == (1,)
        (c,) = cycle_basis(g)
        c.validate(g)
        assert len(c.steps) == 1

    def test_triangle_cycle(self):
        g = triangle_graph()
        basis = cycle_basis(g)
        assert len(basis) == 1
        assert len(basis[0].steps) == 3

    def test_cycle_validation_rejects_non_edge(self):
        g = fig_a_graph()
        with pytest.raises(InvalidCycle):
            OrientedCycle((("x", "y"),)).validate(g)

    def test_reversed_cycle_valid(self):
        g = triangle_graph()
        c = cycle_basis(g)[0]
        c.reversed().validate(g)

    def test_disconnected(self):
        g = build_graph([("a", "b", "c"), ("d", "e", "f")])
        assert not is_connected(g)
        assert graph_stats(g).components == 2


class TestBoundaryIsomorphism:
    def test_identity(self):
        g = fig_a_graph()
        iso = boundary_isomorphism(g, g, {h: h for h in g.boundary})
        assert iso is not None
        assert all(iso[h] == h for h in g.boundary)

    def test_relabelled(self):
        g1 = fig_a_graph()
        g2 = build_graph(
            {"P": ("p", "q", "m"), "Q": ("r", "s", "n")}, [("m", "n")]
        )
        iso = boundary_isomorphism(
            g1, g2, {"x": "p", "y": "q", "z": "r", "w": "s"}
        )
        assert iso is not None
        assert iso["u"] in ("m", "n")

    def test_incompatible_map(self):
        g1 = fig_a_graph()
        g2 = build_graph(
            {"P": ("p", "q", "m"), "Q": ("r", "s", "n")}, [("m", "n")]
        )
        # x, z sit at different vertices of g1 but p, q share one in g2
        iso = boundary_isomorphism(
            g1, g2, {"x": "p", "z": "q", "y": "r", "w": "s"}
        )
        assert iso is None

    def test_bad_boundary_map(self):
        g = fig_a_graph()
        with pytest.raises(BadBoundaryMap):
            boundary_isomorphism(g, g, {"x": "x"})

    def test_different_shape(self):
        g1 = wheel_graph()
        g2 = triangle_graph()
        with pytest.raises(BadBoundaryMap):
            boundary_isomorphism(g1, g2, {"z": "r1"})
