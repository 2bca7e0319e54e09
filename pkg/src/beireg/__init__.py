"""Regularity of binomial edge ideals: combinatorial classification plus a
Groebner basis and Hochster-formula oracle for small graphs."""

from .classify import (NO_EDGES, JoinCertificate, RegClass, build_counterexample,
                       build_threshold, classify_cm_gorenstein, join_decompose,
                       regularity_class, structural_regularity)
from .graph import (Graph, canonical_form, complete, cycle, empty, enumerate_small_graphs,
                    is_isomorphic, parse_graph6, path, star, to_graph6)
from .groebner import DEGREVLEX, LEX, TermOrder, buchberger, edge_binomials, initial_ideal
from .monres import BettiTable, betti_table, taylor_betti_table
from .oracle import (RegularityResult, VerificationReport, regularity_certified,
                     regularity_initial, verify_conjectures, verify_join_regularity,
                     verify_primary_decomposition)
from .primes import cut_point_sets, prime_of_cutset

__version__ = "0.1.0"

__all__ = [
    "BettiTable",
    "DEGREVLEX",
    "Graph",
    "JoinCertificate",
    "LEX",
    "NO_EDGES",
    "RegClass",
    "RegularityResult",
    "TermOrder",
    "VerificationReport",
    "betti_table",
    "buchberger",
    "build_counterexample",
    "build_threshold",
    "canonical_form",
    "classify_cm_gorenstein",
    "complete",
    "cut_point_sets",
    "cycle",
    "edge_binomials",
    "empty",
    "enumerate_small_graphs",
    "initial_ideal",
    "is_isomorphic",
    "join_decompose",
    "parse_graph6",
    "path",
    "prime_of_cutset",
    "regularity_certified",
    "regularity_class",
    "regularity_initial",
    "star",
    "structural_regularity",
    "taylor_betti_table",
    "to_graph6",
    "verify_conjectures",
    "verify_join_regularity",
    "verify_primary_decomposition",
]
