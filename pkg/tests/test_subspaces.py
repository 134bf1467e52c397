import random

import pytest

from corpus import random_subcubic
from vcgen.configs import LocalConfiguration, instance_as_config, is_expansion
from vcgen.errors import InputDomainError
from vcgen.graphs import (
    Graph,
    Instance,
    complete_graph,
    cycle_graph,
    petersen_graph,
)
from vcgen.simplify import simplify_fixpoint
from vcgen.subspaces import (
    SUBSPACE_IDS,
    assertions_for,
    classify,
    contains_forbidden,
    cost_lemma_for,
    descriptor,
    parse_subspace,
    root_config,
    subspace_name,
)


def test_classify_k4_p7():
    assert classify(complete_graph(4)) == 7


def test_classify_c8_p6():
    assert classify(cycle_graph(8)) == 6


def test_classify_petersen_p9():
    assert classify(petersen_graph()) == 9


def test_classify_examples_more():
    assert classify(Graph([0])) == 1  # isolated vertex
    assert classify(cycle_graph(3)) == 6  # degree-2 vertices come first
    # degree-3 vertex 0 with two degree-2 neighbors, no degree <= 1 anywhere
    g = Graph(
        range(8),
        [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (3, 7), (4, 5), (6, 7)],
    )
    assert classify(g) == 2


def test_classify_rejects_degree4():
    star = Graph(range(5), [(0, i) for i in range(1, 5)])
    with pytest.raises(InputDomainError):
        classify(star)


def test_classify_stable_under_relabeling():
    rng = random.Random(71)
    for _ in range(40):
        g = random_subcubic(rng, rng.randint(4, 12))
        sid = classify(g)
        vs = sorted(g.vertices)
        shuffled = vs[:]
        rng.shuffle(shuffled)
        mapping = dict(zip(vs, shuffled))
        g2 = Graph(shuffled, [(mapping[u], mapping[v]) for u, v in g.edges()])
        assert classify(g2) == sid


def test_roots_fire_their_own_detector_not_earlier():
    for sid in SUBSPACE_IDS:
        root = root_config(sid)
        assert not contains_forbidden(root, sid), sid
        # the root's own structure is certain in the configuration
        if sid < 19:
            from vcgen.subspaces import _Structures, _detector

            s = _Structures(root.h, root.true_degree)
            assert _detector(sid)(s), sid


def test_root_examples():
    r19 = root_config(19)
    assert sorted(r19.h.vertices) == [0] and r19.d[0] == 3
    r7 = root_config(7)
    assert r7.h == cycle_graph(3) and all(r7.d[v] == 1 for v in range(3))
    r6 = root_config(6)
    assert r6.d[0] == 2 and r6.h.degree(0) == 0
    r3 = root_config(3)
    assert r3.h == cycle_graph(4)
    assert sorted(r3.true_degree(v) for v in range(4)) == [2, 3, 3, 3]


def test_root_true_degrees_three_for_regular_subspaces():
    for sid in (7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19):
        root = root_config(sid)
        assert all(root.true_degree(v) == 3 for v in root.h.vertices), sid


def test_contains_forbidden_examples():
    assert not contains_forbidden(root_config(7), 7)
    tri = LocalConfiguration(cycle_graph(3), {v: 1 for v in range(3)})
    assert contains_forbidden(tri, 8)  # triangle is P7 structure
    deg2 = LocalConfiguration(Graph([0]), {0: 2})
    assert contains_forbidden(deg2, 7)  # true degree 2 is P6 structure
    assert not contains_forbidden(deg2, 6)


def test_assertions_and_cost_lemmas():
    for sid in SUBSPACE_IDS:
        a = assertions_for(sid)
        assert a.no_degree_le1 == (sid >= 2)
        assert a.no_deg3_with_two_deg2 == (sid >= 3)
        assert a.no_degree_2 == (sid >= 7)
        assert a.excluded_subspaces == tuple(range(1, sid))
    assert cost_lemma_for(2) == 12
    assert cost_lemma_for(3) == 13
    assert cost_lemma_for(6) == 13
    assert cost_lemma_for(7) == 14
    assert cost_lemma_for(19) == 14


def test_descriptor_bundles():
    d = descriptor(7)
    assert d.name == "P7" and d.cost_lemma == 14
    assert d.root == root_config(7)
    assert d.assertions == assertions_for(7)
    assert d.detect(complete_graph(4))
    assert not descriptor(3).detect(complete_graph(4))


def test_names_roundtrip():
    for sid in SUBSPACE_IDS:
        assert parse_subspace(subspace_name(sid)) == sid
    with pytest.raises(InputDomainError):
        parse_subspace("P20")
    with pytest.raises(InputDomainError):
        parse_subspace("Q1")


def simplification_free_corpus(seed, count, n_lo=6, n_hi=14):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_subcubic(rng, rng.randint(n_lo, n_hi))
        reduced, _ = simplify_fixpoint(Instance(g, 0))
        if reduced.graph.edge_count() > 0:
            out.append(reduced.graph)
    return out


def test_lemma_precondition_soundness_on_corpus():
    for g in simplification_free_corpus(73, 60):
        sid = classify(g)
        if sid >= 7:
            assert all(g.degree(v) != 2 for v in g.vertices)
        if sid >= 3:
            assert not any(
                g.degree(v) == 3
                and sum(1 for u in g.neighbors(v) if g.degree(u) == 2) >= 2
                for v in g.vertices
            )
        if sid >= 2:
            assert all(g.degree(v) >= 2 for v in g.vertices)


def test_root_anchors_every_corpus_instance():
    # consistency: an instance of subspace sid expands root_config(sid)
    for g in simplification_free_corpus(79, 40):
        sid = classify(g)
        phi = is_expansion(instance_as_config(g), root_config(sid))
        assert phi is not None, (sid, g)


def test_classify_simplification_free_never_p1():
    for g in simplification_free_corpus(83, 30):
        assert classify(g) != 1
