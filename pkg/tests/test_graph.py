import itertools

import pytest
from hypothesis import given, settings, strategies as st

from beireg.graph import (Graph, Graph6ByteError, Graph6Error, Graph6HeaderError,
                          Graph6TrailingError, Graph6TruncatedError, canonical_code,
                          complete, components, compose, cycle, disjoint_union, empty,
                          enumerate_small_graphs, graph_class, induced_subgraph,
                          is_isomorphic, is_weakly_closed, join, longest_induced_path_length,
                          maximal_clique_count, maximal_cliques, min_connected_dominating_set,
                          parse_edge_list, parse_graph6, path, read_graph6, star,
                          strip_isolated, to_edge_list, to_graph6)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, chosen)


def test_graph_rejects_loops_and_bad_labels():
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, [(1, 4)])


@given(graphs())
def test_neighborhoods_symmetric(G):
    for v in G.vertices:
        assert v not in G.N(v)
        assert G.N_closed(v) == G.N(v) | {v}
        for w in G.N(v):
            assert v in G.N(w)


def test_graph6_examples():
    assert parse_graph6("A_") == complete(2)
    assert parse_graph6("B?") == empty(3)
    # "BW" sets the bits of {1,3} and {2,3}: a path centered at 3
    G = parse_graph6("BW")
    assert G.edges == {(1, 3), (2, 3)}
    assert is_isomorphic(G, path(3))
    assert parse_graph6("Bg") == path(3)


def test_graph6_errors_name_offsets():
    with pytest.raises(Graph6HeaderError):
        parse_graph6("")
    with pytest.raises(Graph6TruncatedError):
        parse_graph6("D")
    with pytest.raises(Graph6TrailingError) as exc:
        parse_graph6("A_x")
    assert exc.value.offset == 2
    with pytest.raises(Graph6ByteError) as exc:
        parse_graph6("B ")
    assert exc.value.offset == 1
    with pytest.raises(Graph6Error, match="line 2"):
        list(read_graph6(["A_", "Q"]))


@given(graphs(max_n=12))
def test_graph6_round_trip(G):
    assert parse_graph6(to_graph6(G)) == G


@given(graphs())
def test_edge_list_round_trip(G):
    assert parse_edge_list(to_edge_list(G)) == G


def test_edge_list_errors():
    with pytest.raises(ValueError, match="line 2"):
        parse_edge_list("3\n1 2 3\n")
    with pytest.raises(ValueError):
        parse_edge_list("")


@pytest.mark.parametrize("n,connected,count", [
    (1, False, 1), (2, False, 2), (3, False, 4), (4, False, 11), (5, False, 34), (6, False, 156),
    (3, True, 2), (4, True, 6), (5, True, 21), (6, True, 112),
])
def test_enumeration_counts(n, connected, count):
    assert len(list(enumerate_small_graphs(n, connected))) == count


def test_enumeration_pairwise_non_isomorphic():
    gs = list(enumerate_small_graphs(5))
    assert len({canonical_code(G) for G in gs}) == len(gs)
    assert list(enumerate_small_graphs(5)) == gs


def test_enumeration_range():
    with pytest.raises(ValueError):
        list(enumerate_small_graphs(8))
    with pytest.raises(ValueError):
        list(enumerate_small_graphs(0))


@given(graphs(max_n=6), st.permutations(range(6)))
def test_canonical_code_invariant_under_relabeling(G, perm):
    perm = [p + 1 for p in perm if p < G.n]
    H = G.relabel({v: perm[v - 1] for v in G.vertices})
    assert canonical_code(G) == canonical_code(H)


def test_compose_examples():
    assert is_isomorphic(compose(empty(1), empty(2), "join"), path(3))
    assert is_isomorphic(compose(empty(2), empty(2), "join"), cycle(4))
    assert disjoint_union(complete(2), complete(2)).edges == {(1, 2), (3, 4)}
    with pytest.raises(ValueError):
        compose(empty(1), empty(1), "product")


@given(graphs(max_n=4), graphs(max_n=4))
def test_join_complement_duality(G1, G2):
    G = compose(G1, G2, "join")
    parts = components(G, of_complement=True)
    assert len(parts) >= 2
    rebuilt = join(*(induced_subgraph(G, p) for p in parts))
    assert is_isomorphic(rebuilt, G)
    assert G.complement() == disjoint_union(G1.complement(), G2.complement())


def test_components_examples():
    assert components(disjoint_union(complete(2), complete(2))) == [{1, 2}, {3, 4}]
    assert [len(p) for p in components(cycle(4), of_complement=True)] == [2, 2]
    assert components(complete(4)) == [{1, 2, 3, 4}]


def test_induced_subgraph_examples():
    assert induced_subgraph(path(4), [1, 2, 3]) == path(3)
    assert induced_subgraph(cycle(4), [1, 2, 3]) == path(3)
    G = cycle(5)
    assert induced_subgraph(G, G.vertices) == G
    with pytest.raises(ValueError):
        induced_subgraph(G, [1, 9])


def test_graph_class_tags():
    assert graph_class(complete(4)).kind == "complete"
    assert graph_class(empty(3)).kind == "empty"
    assert graph_class(path(5)) == ("path", 5)
    assert graph_class(cycle(5)) == ("cycle", 5)
    assert graph_class(star(4)).kind == "star"
    assert graph_class(Graph(5, [(1, 2), (2, 3), (3, 1), (3, 4)])).kind == "general"


def _is_path(H):
    return (H.num_edges == H.n - 1 and H.is_connected()
            and all(H.degree(v) <= 2 for v in H.vertices))


def _brute_ell(G):
    best = 0
    for k in range(2, G.n + 1):
        for W in itertools.combinations(G.vertices, k):
            if _is_path(induced_subgraph(G, W)):
                best = max(best, k - 1)
    return best


def test_longest_induced_path_examples():
    assert longest_induced_path_length(path(6)) == 5
    assert longest_induced_path_length(complete(5)) == 1
    assert longest_induced_path_length(cycle(4)) == 2
    assert longest_induced_path_length(empty(3)) == 0


@settings(max_examples=60)
@given(graphs())
def test_longest_induced_path_matches_subset_scan(G):
    assert longest_induced_path_length(G) == _brute_ell(G)


def test_clique_examples():
    assert maximal_clique_count(complete(5)) == 1
    assert maximal_clique_count(cycle(5)) == 5
    assert sorted(maximal_cliques(Graph(4, [(1, 2), (2, 3), (1, 3), (3, 4)]))) == [(1, 2, 3), (3, 4)]


@given(graphs(max_n=4), graphs(max_n=4))
def test_clique_count_multiplies_under_join(G1, G2):
    assert maximal_clique_count(join(G1, G2)) == maximal_clique_count(G1) * maximal_clique_count(G2)


@given(graphs())
def test_triangle_free_clique_count_is_edge_count(G):
    if any(G.adjacent(a, b) and G.adjacent(b, c) and G.adjacent(a, c)
           for a, b, c in itertools.combinations(G.vertices, 3)):
        return
    expected = G.num_edges + len(G.isolated_vertices())
    assert maximal_clique_count(G) == expected


def _weak_ok(G, labeling):
    pos = {v: k for k, v in enumerate(labeling)}
    for u, v in G.edges:
        i, j = sorted((pos[u], pos[v]))
        for k in range(i + 1, j):
            w = labeling[k]
            if not (G.adjacent(labeling[i], w) or G.adjacent(labeling[j], w)):
                return False
    return True


def test_weakly_closed_examples():
    assert is_weakly_closed(path(5)).weakly_closed
    assert is_weakly_closed(path(5)).closed
    res = is_weakly_closed(star(3))
    assert res.weakly_closed and _weak_ok(star(3), res.labeling)
    # the labeling with the center second also works
    assert _weak_ok(star(3), (2, 1, 3, 4))
    assert not is_weakly_closed(cycle(5)).weakly_closed
    with pytest.raises(ValueError):
        is_weakly_closed(path(11))


@settings(max_examples=60)
@given(graphs(max_n=6))
def test_weakly_closed_witness_valid(G):
    res = is_weakly_closed(G)
    if res.weakly_closed:
        assert sorted(res.labeling) == list(G.vertices)
        assert _weak_ok(G, res.labeling)
    if res.closed:
        assert res.weakly_closed


def test_min_connected_dominating_set_examples():
    assert min_connected_dominating_set(star(3)) == (1,)
    assert min_connected_dominating_set(path(4)) == (2, 3)
    assert min_connected_dominating_set(complete(4)) == (1,)
    with pytest.raises(ValueError):
        min_connected_dominating_set(empty(2))


def _has_induced_path(G, k):
    return any(_is_path(induced_subgraph(G, W)) for W in itertools.combinations(G.vertices, k))


@pytest.mark.parametrize("k", [4, 5])
def test_dominating_set_of_path_free_graphs(k):
    for n in range(2, 7):
        for G in enumerate_small_graphs(n, connected_only=True):
            if _has_induced_path(G, k):
                continue
            X = min_connected_dominating_set(G)
            H = induced_subgraph(G, X)
            assert not _has_induced_path(H, k - 2) or (H.n == k - 2 and _is_path(H))


def test_strip_isolated():
    G = disjoint_union(path(3), empty(2))
    assert strip_isolated(G) == path(3)
