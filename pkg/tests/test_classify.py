import itertools
import json

import pytest
from hypothesis import given, settings

from beireg.classify import (NO_EDGES, Block, RegClass, build_counterexample, build_threshold,
                             classify_cm_gorenstein, graph_of_regularity, join_decompose,
                             reconstruct, regularity_class, structural_regularity)
from beireg.graph import (complete, cycle, disjoint_union, empty,
                          enumerate_small_graphs, induced_subgraph, is_isomorphic,
                          is_weakly_closed, join, path, star)

from test_graph import graphs

twoK2 = disjoint_union(complete(2), complete(2))


def test_join_decompose_examples():
    c = join_decompose(cycle(4))
    assert c.kind == "join"
    assert [ch.block for ch in c.children] == [Block(0, 0, 2), Block(0, 0, 2)]
    c = join_decompose(star(3))
    assert c.kind == "join"
    assert [ch.block for ch in c.children] == [Block(0, 0, 1), Block(0, 0, 3)]
    c = join_decompose(path(4))
    assert c.kind == "leaf" and c.block is None
    assert c.to_json()["block"] == "path"
    c = join_decompose(cycle(5))
    assert c.to_json()["block"] == "irreducible-general"


def test_certificate_json():
    doc = json.loads(join_decompose(cycle(4)).dumps())
    assert doc["kind"] == "join" and doc["predicted_reg"] == 3
    assert doc["children"][0]["block"] == {"r": 0, "s": 0, "t": 2}
    assert json.loads(join_decompose(empty(2)).dumps())["predicted_reg"] == "NoEdges"


@pytest.mark.parametrize("n", range(1, 7))
def test_certificates_reconstruct(n):
    for G in enumerate_small_graphs(n):
        cert = join_decompose(G)
        assert reconstruct(cert) == G
        for node in _nodes(cert):
            if node.kind == "join":
                assert len(node.children) == 2
                parts = [set(ch.vertices) for ch in node.children]
                assert parts[0].isdisjoint(parts[1]) and parts[0] | parts[1] == set(node.vertices)
            if node.kind == "union":
                assert len(node.children) >= 2
            if node.block is not None:
                assert sum(node.block) >= 1


def _nodes(cert):
    yield cert
    for ch in cert.children:
        yield from _nodes(ch)


def test_regularity_class_examples():
    assert regularity_class(path(3)) == RegClass.THREE
    assert regularity_class(twoK2) == RegClass.THREE
    assert regularity_class(path(4)) == RegClass.AT_LEAST_FOUR
    assert regularity_class(complete(5)) == RegClass.TWO
    assert regularity_class(disjoint_union(complete(3), empty(2))) == RegClass.TWO
    assert regularity_class(empty(4)) == RegClass.NO_EDGES
    assert str(RegClass.AT_LEAST_FOUR) == "AtLeastFour"


@settings(max_examples=80)
@given(graphs())
def test_no_edges_class(G):
    assert (regularity_class(G) == RegClass.NO_EDGES) == (G.num_edges == 0)


def test_structural_examples():
    assert structural_regularity(join(empty(1), disjoint_union(path(3), path(3)))).value == 5
    for n in range(2, 9):
        assert structural_regularity(path(n)).value == n
    for r, s in [(2, 2), (2, 3), (4, 3)]:
        assert structural_regularity(disjoint_union(complete(r), complete(s))).value == 3
    res = structural_regularity(cycle(5))
    assert res.value is None and res.status == "Unknown"
    assert structural_regularity(empty(3)).value is NO_EDGES


def test_structural_additivity_and_isolated_vertices():
    G = disjoint_union(path(4), path(3), empty(2))
    assert structural_regularity(G).value == 4 + 3 - 1
    assert structural_regularity(disjoint_union(path(5), empty(3))).value == 5


@pytest.mark.parametrize("n", range(1, 8))
def test_class_three_iff_structural_three(n):
    for G in enumerate_small_graphs(n):
        three = regularity_class(G) == RegClass.THREE
        assert three == (structural_regularity(G).value == 3), G


@pytest.mark.parametrize("n", range(2, 8))
def test_class_three_bottoms_out_in_blocks(n):
    for G in enumerate_small_graphs(n):
        if regularity_class(G) == RegClass.THREE:
            assert all(leaf.block is not None for leaf in join_decompose(G).leaves())


def test_four_vertex_census():
    named = [
        twoK2,
        join(empty(2), empty(2)),
        join(empty(2), complete(2)),
        join(disjoint_union(complete(2), empty(1)), empty(1)),
        star(3),
        disjoint_union(empty(1), join(empty(1), empty(2))),
    ]
    found = [G for G in enumerate_small_graphs(4) if regularity_class(G) == RegClass.THREE]
    assert len(found) == 6
    for H in named:
        assert sum(is_isomorphic(G, H) for G in found) == 1


@pytest.mark.parametrize("n", range(2, 7))
def test_class_monotone_under_induced_subgraphs(n):
    for G in enumerate_small_graphs(n):
        if regularity_class(G) == RegClass.AT_LEAST_FOUR:
            continue
        for k in range(2, n):
            for W in itertools.combinations(G.vertices, k):
                assert regularity_class(induced_subgraph(G, W)) != RegClass.AT_LEAST_FOUR


def test_existence_sweep():
    for n in range(3, 8):
        for t in range(3, n + 1):
            G = graph_of_regularity(n, t)
            assert G.n == n and G.is_connected()
            assert structural_regularity(G).value == t


def test_threshold_examples():
    assert build_threshold(["isolated", "dominating"]) == complete(2)
    assert is_isomorphic(build_threshold(["isolated", "isolated", "dominating"]), path(3))
    with pytest.raises(ValueError):
        build_threshold([])
    with pytest.raises(ValueError):
        build_threshold(["sideways"])


@pytest.mark.parametrize("length", range(2, 8))
def test_threshold_graphs_have_regularity_at_most_three(length):
    for word in itertools.product("id", repeat=length):
        G = build_threshold(word)
        if G.num_edges:
            assert regularity_class(G) in (RegClass.TWO, RegClass.THREE)


def test_cm_gorenstein_examples():
    r = classify_cm_gorenstein(join(complete(1), disjoint_union(complete(2), complete(3))))
    assert r.cm_reg3 and not r.extremal_gorenstein
    r = classify_cm_gorenstein(twoK2)
    assert r.cm_reg3 and r.extremal_gorenstein
    r = classify_cm_gorenstein(cycle(4))
    assert not r.cm_reg3 and not r.extremal_gorenstein
    assert classify_cm_gorenstein(path(3)).extremal_gorenstein
    with pytest.raises(ValueError):
        classify_cm_gorenstein(disjoint_union(path(3), empty(1)))


def test_cm_patterns_have_regularity_three():
    for n in range(3, 7):
        for G in enumerate_small_graphs(n):
            if not G.isolated_vertices() and classify_cm_gorenstein(G).cm_reg3:
                assert regularity_class(G) == RegClass.THREE


@pytest.mark.parametrize("q,t,reg,ell1", [
    (2, (3, 3), 5, 3),
    (2, (3, 4), 6, 4),
    (3, (9, 9, 9), 25, 9),
    (2, (4, 4), 7, 4),
])
def test_counterexample_family(q, t, reg, ell1):
    ce = build_counterexample(q, t)
    assert (ce.predicted_reg, ce.ell_plus_1) == (reg, ell1)
    assert ce.graph.is_connected()
    assert structural_regularity(ce.graph).value == reg


@pytest.mark.parametrize("q,t", [(2, (3, 3)), (2, (3, 4))])
def test_counterexample_is_weakly_closed(q, t):
    assert is_weakly_closed(build_counterexample(q, t).graph).weakly_closed


def test_counterexample_bounds():
    with pytest.raises(ValueError):
        build_counterexample(1, [3])
    with pytest.raises(ValueError):
        build_counterexample(2, [2, 3])
    with pytest.raises(ValueError):
        build_counterexample(2, [3, 3, 3])
