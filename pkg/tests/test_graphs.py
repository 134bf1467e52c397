import random

import pytest

from corpus import brute_force_vc, random_subcubic
from vcgen.errors import CapacityError, InputDomainError
from vcgen.graphs import (
    Graph,
    Instance,
    VertexCoverSolver,
    complete_graph,
    cycle_graph,
    delete_vertices,
    enumerate_cycles,
    format_graph,
    format_instance,
    parse_graph,
    parse_instance,
    path_graph,
    petersen_graph,
    vc_cover,
    vc_oracle,
)


def test_delete_identity_on_empty():
    g = Graph()
    assert delete_vertices(g, set()) == g


def test_delete_vertex_from_clique():
    g = complete_graph(4)
    assert delete_vertices(g, {0}) == complete_graph(4).without({0})
    assert sorted(delete_vertices(g, {0}).vertices) == [1, 2, 3]
    assert delete_vertices(g, {0}).edge_count() == 3


def test_delete_two_from_c5_leaves_path():
    # C5 a-b-c-d-e as 0-1-2-3-4; removing {1, 2} leaves the path 3-4-0
    g = cycle_graph(5)
    h = delete_vertices(g, {1, 2})
    assert sorted(h.vertices) == [0, 3, 4]
    assert sorted(h.edges()) == [(0, 4), (3, 4)]


def test_delete_unknown_vertex_rejected():
    with pytest.raises(InputDomainError):
        delete_vertices(cycle_graph(3), {7})


def test_delete_composes_over_disjoint_sets():
    rng = random.Random(7)
    for _ in range(25):
        g = random_subcubic(rng, 9)
        a = set(rng.sample(sorted(g.vertices), 2))
        b = set(rng.sample(sorted(g.vertices - a), 2))
        assert delete_vertices(delete_vertices(g, a), b) == delete_vertices(g, a | b)


def test_no_self_loops_or_parallel_edges():
    with pytest.raises(InputDomainError):
        Graph([0], [(0, 0)])
    g = Graph([0, 1], [(0, 1), (1, 0), (0, 1)])
    assert g.edge_count() == 1


def test_oracle_trivial_and_known_values():
    assert vc_oracle(Graph()) == 0
    assert vc_oracle(complete_graph(4)) == 3  # a 4-clique needs three vertices
    assert vc_oracle(cycle_graph(5)) == 3
    assert vc_oracle(petersen_graph()) == 6
    assert vc_oracle(path_graph(4)) == 2


def test_oracle_cap():
    with pytest.raises(CapacityError):
        vc_oracle(Graph(range(25)))


def test_oracle_matches_brute_force():
    rng = random.Random(11)
    for _ in range(60):
        g = random_subcubic(rng, rng.randint(1, 9))
        assert vc_oracle(g) == brute_force_vc(g)


def test_oracle_vertex_removal_bracket():
    # VC(G - v) <= VC(G) <= VC(G - v) + 1 for every vertex
    rng = random.Random(13)
    for _ in range(20):
        g = random_subcubic(rng, 8)
        vc = vc_oracle(g)
        for v in g.vertices:
            sub = vc_oracle(g.without({v}))
            assert sub <= vc <= sub + 1


def test_oracle_monotone_under_edge_deletion():
    rng = random.Random(17)
    for _ in range(20):
        g = random_subcubic(rng, 8)
        vc = vc_oracle(g)
        for u, v in g.edges():
            keep = [e for e in g.edges() if e != (u, v)]
            assert vc_oracle(Graph(g.vertices, keep)) <= vc


def test_cover_witness_is_optimal_cover():
    rng = random.Random(19)
    for _ in range(30):
        g = random_subcubic(rng, 9)
        cover = vc_cover(g)
        assert len(cover) == vc_oracle(g)
        assert all(u in cover or v in cover for u, v in g.edges())


def test_solver_masks_reusable():
    g = cycle_graph(6)
    solver = VertexCoverSolver(g)
    assert solver.vc() == 3
    assert solver.vc(solver.mask_of({0, 1, 2})) == 1
    assert solver.vc(solver.mask_of(set())) == 0


def test_cycles_triangle():
    assert enumerate_cycles(cycle_graph(3), 8) == [(0, 1, 2)]


def test_cycles_k4_counts():
    cycles = enumerate_cycles(complete_graph(4), 8)
    assert sum(1 for c in cycles if len(c) == 3) == 4
    assert sum(1 for c in cycles if len(c) == 4) == 3
    assert len(cycles) == 7


def test_cycles_c8():
    cycles = enumerate_cycles(cycle_graph(8), 8)
    assert cycles == [(0, 1, 2, 3, 4, 5, 6, 7)]
    assert enumerate_cycles(cycle_graph(8), 7) == []


def test_cycles_are_canonical_and_valid():
    rng = random.Random(23)
    for _ in range(25):
        g = random_subcubic(rng, 10)
        cycles = enumerate_cycles(g, 8)
        assert len(set(cycles)) == len(cycles)
        for c in cycles:
            assert c[0] == min(c)
            assert c[1] < c[-1]
            for i in range(len(c)):
                assert g.has_edge(c[i], c[(i + 1) % len(c)])


def test_petersen_girth_five():
    cycles = enumerate_cycles(petersen_graph(), 8)
    assert min(len(c) for c in cycles) == 5


def test_graph_roundtrip():
    g = random_subcubic(random.Random(29), 8)
    assert parse_graph(format_graph(g)) == g


def test_instance_roundtrip_and_comments():
    inst = Instance(cycle_graph(5), 3)
    text = "c a comment\n" + format_instance(inst)
    back = parse_instance(text)
    assert back == inst


def test_parse_errors():
    with pytest.raises(InputDomainError):
        parse_graph("e 0 1\n")
    with pytest.raises(InputDomainError):
        parse_graph("p vc 2 1\ne 0 5\n")
    with pytest.raises(InputDomainError):
        parse_instance(format_graph(cycle_graph(3)))
