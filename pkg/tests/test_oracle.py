import json

import pytest

from beireg.classify import NO_EDGES, RegClass, join_decompose, regularity_class, structural_regularity
from beireg.graph import (complete, components, cycle, disjoint_union, empty,
                          enumerate_small_graphs, induced_subgraph, join, path)
from beireg.groebner import DEGREVLEX, LEX, Binomial, edge_binomials, graded_piece, variable, variables_of
from beireg.oracle import (VerificationReport, _slice, join_q_pair, regularity_certified,
                           regularity_initial, verify_conjectures, verify_initial_additivity,
                           verify_join_regularity, verify_primary_decomposition)
from beireg.primes import cut_point_sets, intersection_block_dims, prime_of_cutset

twoK2 = disjoint_union(complete(2), complete(2))
counterexample = join(empty(1), disjoint_union(path(3), path(3)))


def test_regularity_initial_examples():
    assert regularity_initial(path(3)) == 3
    assert regularity_initial(path(4)) == 4
    for n in range(2, 6):
        assert regularity_initial(complete(n), LEX) == 2
        assert regularity_initial(complete(n), DEGREVLEX) == 2
    assert regularity_initial(empty(3)) is NO_EDGES


def test_regularity_initial_cap():
    with pytest.raises(ValueError):
        regularity_initial(cycle(9))
    # isolated vertices do not count towards the cap
    assert regularity_initial(disjoint_union(path(3), empty(7))) == 3


def test_regularity_certified_examples():
    r = regularity_certified(twoK2)
    assert (r.value, r.status, r.method, r.consistent) == (3, "Exact", "Both", True)
    r = regularity_certified(counterexample)
    assert (r.value, r.status) == (5, "Exact")
    assert r.initial_values == {2: 5}
    r = regularity_certified(path(4))
    assert (r.value, r.status, r.consistent) == (4, "Exact", True)
    assert r.certificate.kind == "leaf"


def test_regularity_certified_without_structure():
    r = regularity_certified(cycle(5))
    assert r.method == "InitialIdeal"
    assert r.value >= 4 and r.status == "UpperBoundOnly"
    # a value of 3 from the initial ideal is exact
    r = regularity_certified(cycle(4))
    assert r.status == "Exact"
    doc = json.loads(json.dumps(r.to_json()))
    assert doc["value"] == 3


def test_primary_decomposition_examples():
    assert verify_primary_decomposition(path(3), 5).passed
    assert verify_primary_decomposition(cycle(4), 6).passed
    rep = verify_primary_decomposition(complete(3), 4)
    assert rep.passed and rep.instances == 5
    with pytest.raises(ValueError):
        verify_primary_decomposition(path(7))


def test_dropping_a_minimal_prime_is_detected():
    G = cycle(4)
    primes = [prime_of_cutset(G, cs) for cs in cut_point_sets(G)]
    piece = graded_piece(edge_binomials(G), 4, 8)
    full = sum(intersection_block_dims(primes, 4, 4).values())
    short = sum(intersection_block_dims(primes[:-1], 4, 4).values())
    assert full == piece.dim and short > full


def test_join_regularity_examples():
    rep = verify_join_regularity(empty(2), empty(2))
    assert rep.passed and rep.details["join"] == 3
    rep = verify_join_regularity(complete(2), complete(3))
    assert rep.passed and rep.details["join"] == 2
    rep = verify_join_regularity(path(4), empty(1))
    assert rep.passed and rep.details["join"] == 4
    with pytest.raises(ValueError):
        verify_join_regularity(path(5), path(4))


def test_initial_additivity_examples():
    f12 = edge_binomials(complete(2))
    rep = verify_initial_additivity(f12, f12, 4)
    assert rep.passed and rep.details["sum_equality"]
    Q, Qp = join_q_pair(empty(2), empty(2))
    rep = verify_initial_additivity(Q, Qp, 8, D=5)
    assert rep.passed and rep.details["sum_equality"] and rep.details["intersection_equality"]
    rep = verify_initial_additivity(f12, variables_of(2, [1]), 4)
    assert rep.passed and rep.details["sum_equality"]


def test_initial_additivity_failure_co_occurs():
    # (x1 - x2) + (x1 - y1) contains x2 - y1, whose lead x2 is new
    n = 2
    x1, x2, y1 = variable(n, 1, "x"), variable(n, 2, "x"), variable(n, 1, "y")
    rep = verify_initial_additivity([Binomial(x1, x2)], [Binomial(x1, y1)], 4, D=3)
    assert rep.passed
    assert not rep.details["sum_equality"] and not rep.details["intersection_equality"]


def test_q_pair_matches_definition():
    # Q is the intersection of the P_T with V1 inside T
    G1 = disjoint_union(complete(2), empty(1))
    G2 = empty(2)
    G = join(G1, G2)
    Q, Qp = join_q_pair(G1, G2)
    V1 = set(range(1, G1.n + 1))
    primes = [prime_of_cutset(G, cs) for cs in cut_point_sets(G)]
    inside = [P for P in primes if V1 <= P.variables]
    outside = [P for P in primes if not V1 <= P.variables]
    nvars = 2 * G.n
    for d in range(5):
        assert graded_piece(Q, d, nvars).dim == sum(intersection_block_dims(inside, G.n, d).values())
        qp = sum(len(rows) for _, rows in _slice(Qp, d, nvars, 2).values())
        assert qp == sum(intersection_block_dims(outside, G.n, d).values())


def test_conjecture_examples():
    connected = [G for n in range(1, 6) for G in enumerate_small_graphs(n, True)]
    assert verify_conjectures(connected, "sk_cliques").passed
    rep = verify_conjectures([counterexample], "weakly_closed_ell")
    assert not rep.passed
    assert rep.failures[0]["reg"] == 5 and rep.failures[0]["ell_plus_1"] == 3
    every = [G for n in range(1, 6) for G in enumerate_small_graphs(n)]
    assert verify_conjectures(every, "ehh_equality").passed
    with pytest.raises(ValueError):
        verify_conjectures([], "nonsense")


def test_conjecture_sweep_skips_oversized_graphs():
    rep = verify_conjectures([path(3), cycle(9)], "sk_cliques")
    assert rep.instances == 1 and len(rep.skipped) == 1


def test_report_json_round_trip():
    rep = VerificationReport("demo", 2, [{"x": 1}])
    doc = json.loads(rep.dumps())
    assert doc["passed"] is False and doc["instances"] == 2
    merged = rep.merge(VerificationReport("demo", 3))
    assert merged.instances == 5 and len(merged.failures) == 1
    with pytest.raises(ValueError):
        rep.merge(VerificationReport("other"))


@pytest.mark.parametrize("n", range(1, 7))
def test_initial_value_bounds_structural(n):
    for G in enumerate_small_graphs(n):
        s = structural_regularity(G)
        if s.exact and s.value is not NO_EDGES:
            assert regularity_initial(G) >= s.value


@pytest.mark.parametrize("n", range(2, 7))
def test_initial_regularity_monotone_on_join_factors(n):
    for G in enumerate_small_graphs(n, connected_only=True):
        cert = join_decompose(G)
        if cert.kind != "join" or not G.edges:
            continue
        top = regularity_initial(G)
        for child in cert.children:
            v = regularity_initial(child.graph)
            assert v is NO_EDGES or v <= top


@pytest.mark.parametrize("n", range(4, 7))
def test_disjoint_union_additivity(n):
    for G in enumerate_small_graphs(n):
        parts = [p for p in components(G) if len(p) > 1]
        if len(parts) < 2:
            continue
        values = [regularity_initial(induced_subgraph(G, p)) for p in parts]
        assert regularity_initial(G) == sum(values) - len(values) + 1


@pytest.mark.parametrize("n", range(2, 7))
def test_characteristic_stability_for_small_regularity(n):
    for G in enumerate_small_graphs(n):
        if regularity_class(G) in (RegClass.TWO, RegClass.THREE):
            assert regularity_initial(G, LEX, 2) == regularity_initial(G, LEX, 32003)
