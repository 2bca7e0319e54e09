"""Certified answers built from the algebra engines.

The regularity of ``ini J_G`` comes from Buchberger, the initial ideal and
Hochster's formula.  The transfer to ``J_G`` itself is only claimed where it is
known to hold: ``reg J_G <= reg ini J_G`` always, with equality when the
value is 2 or 3.  Larger values without a structural derivation are reported
as upper bounds.
"""

from __future__ import annotations

import itertools
import json
import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Sequence

from .classify import NO_EDGES, RegularityResult, _value_json, structural_regularity
from .graph import (Graph, complete, components, compose, graph_class, is_weakly_closed,
                    longest_induced_path_length, maximal_clique_count, strip_isolated,
                    to_graph6)
from .groebner import (LEX, Binomial, TermOrder, buchberger, edge_binomials, graded_piece,
                       initial_ideal, variables_of)
from .linalg import nullspace, rref
from .monres import BettiTable, betti_table
from .primes import PrimeDescription, cut_point_sets, cutset, intersection_block_dims

__all__ = [
    "ORACLE_VERTEX_CAP",
    "DECOMPOSITION_VERTEX_CAP",
    "RegularityResult",
    "VerificationReport",
    "initial_betti",
    "regularity_initial",
    "regularity_certified",
    "verify_primary_decomposition",
    "verify_join_regularity",
    "verify_initial_additivity",
    "join_q_pair",
    "verify_conjectures",
    "CONJECTURES",
]

log = logging.getLogger(__name__)

ORACLE_VERTEX_CAP = 8
DECOMPOSITION_VERTEX_CAP = 6
CONJECTURES = ("ehh_equality", "sk_cliques", "weakly_closed_ell")


@dataclass
class VerificationReport:
    """Outcome of checking one claim over a batch of instances."""

    claim: str
    instances: int = 0
    failures: list[dict] = field(default_factory=list)
    runtime: float = 0.0
    skipped: list[dict] = field(default_factory=list)
    inconclusive: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: VerificationReport) -> VerificationReport:
        if other.claim != self.claim:
            raise ValueError("cannot merge reports for different claims")
        return VerificationReport(self.claim, self.instances + other.instances,
                                  self.failures + other.failures, self.runtime + other.runtime,
                                  self.skipped + other.skipped,
                                  self.inconclusive + other.inconclusive,
                                  {**self.details, **other.details})

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "passed": self.passed,
            "instances": self.instances,
            "failures": self.failures,
            "skipped": self.skipped,
            "inconclusive": self.inconclusive,
            "details": self.details,
            "runtime": round(self.runtime, 6),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# regularity of the initial ideal

def _check_cap(G: Graph, cap: int = ORACLE_VERTEX_CAP) -> None:
    if G.n > cap:
        raise ValueError(f"{G.n} vertices exceed the oracle cap {cap}")


@lru_cache(maxsize=4096)
def _initial_betti(G: Graph, order: TermOrder, p: int) -> BettiTable:
    basis = buchberger(edge_binomials(G, order), order)
    return betti_table(initial_ideal(basis, order), p)


def initial_betti(G: Graph, order: TermOrder = LEX, p: int = 2) -> BettiTable:
    """Betti table of ``ini_< J_G`` (isolated vertices removed first)."""
    H = strip_isolated(G)
    _check_cap(H)
    return _initial_betti(H, order, p)


def regularity_initial(G: Graph, order: TermOrder = LEX, p: int = 2) -> Any:
    """``reg ini_< J_G``, or ``NO_EDGES`` for an edgeless graph."""
    if G.num_edges == 0:
        return NO_EDGES
    return initial_betti(G, order, p).reg


def _path_leaves(cert) -> bool:
    return all(leaf.block is not None or graph_class(leaf.graph).kind == "path"
               for leaf in cert.leaves())


def regularity_certified(G: Graph, characteristics: Sequence[int] = (2,),
                         order: TermOrder = LEX, confirm: bool = True) -> RegularityResult:
    """``reg J_G`` with an explicit exactness status.

    A structural value is exact.  When ``confirm`` is set and the graph is
    within the oracle cap, the initial-ideal value is computed as well; it must
    be at least the structural value, and equal to it when the value is at most
    3 or the certificate leaves are blocks and paths.
    Without a structural value the initial-ideal value is exact when it is at
    most 3 and an upper bound otherwise.
    """
    res = structural_regularity(G)
    in_cap = strip_isolated(G).n <= ORACLE_VERTEX_CAP
    if res.exact:
        if res.value is NO_EDGES or not confirm or not in_cap:
            return res
        res.initial_values = {p: regularity_initial(G, order, p) for p in characteristics}
        res.method = "Both"
        must_agree = res.value <= 3 or _path_leaves(res.certificate)
        res.consistent = all(v >= res.value and (v == res.value or not must_agree)
                             for v in res.initial_values.values())
        return res
    if not in_cap:
        raise ValueError(f"no structural value and {G.n} vertices exceed the oracle cap")
    values = {p: regularity_initial(G, order, p) for p in characteristics}
    v = max(values.values())
    status = "Exact" if v <= 3 else "UpperBoundOnly"
    return RegularityResult(v, status, "InitialIdeal", res.certificate, values,
                            initial_betti(G, order, characteristics[0]))


# graded slices of intersections and sums

def _as_meet(ideal) -> list[list[Binomial]]:
    """An ideal is a generator list, or a list of generator lists meaning
    their intersection."""
    ideal = list(ideal)
    if ideal and isinstance(ideal[0], Binomial):
        return [ideal]
    return [list(g) for g in ideal]


def _slice(ideal, d: int, nvars: int, p: int) -> dict:
    """Degree-``d`` slice as {block: (columns, basis rows)}."""
    pieces = [graded_piece(g, d, nvars, p) for g in _as_meet(ideal)]
    out = {}
    for key in pieces[0].blocks:
        if len(pieces) == 1:
            out[key] = pieces[0].basis_vectors(key)
            continue
        cols = pieces[0].blocks[key]
        rows = []
        for P in pieces:
            if P.blocks[key] != cols:
                raise ValueError("pieces use different gradings")
            rows.extend([1 if u in c else 0 for u in cols] for c in P.annihilator(key))
        out[key] = (cols, nullspace(rows, len(cols), p) if rows else
                    [[int(i == j) for j in range(len(cols))] for i in range(len(cols))])
    return out


def _slice_sum(a: dict, b: dict) -> dict:
    return {k: (a[k][0], a[k][1] + b[k][1]) for k in a}


def _slice_initial(s: dict, order: TermOrder, p: int) -> set:
    out = set()
    for cols, rows in s.values():
        perm = sorted(range(len(cols)), key=lambda c: order.key(cols[c]), reverse=True)
        R = [[r[c] for c in perm] for r in rows]
        out.update(cols[perm[c]] for c in rref(R, len(cols), p)[1])
    return out


# primary decomposition

def _prime(G: Graph, T: Iterable[int]) -> PrimeDescription:
    cs = cutset(G, T)
    return PrimeDescription(G.n, cs.T, cs.parts)


def verify_primary_decomposition(G: Graph, D: int | None = None, p: int = 2,
                                 all_subsets: bool = True) -> VerificationReport:
    """Degree-by-degree comparison of ``J_G``, the intersection of its minimal
    primes ``P_T`` (T in C(G)), and the intersection over every ``T``."""
    start = time.perf_counter()
    _check_cap(G, DECOMPOSITION_VERTEX_CAP)
    D = G.n + 2 if D is None else D
    report = VerificationReport("primary_decomposition", details={"graph6": to_graph6(G), "D": D})
    nvars = 2 * G.n
    minimal = [PrimeDescription(G.n, cs.T, cs.parts) for cs in cut_point_sets(G)]
    every = ([_prime(G, T) for k in range(G.n + 1)
              for T in itertools.combinations(G.vertices, k)] if all_subsets else None)
    J = edge_binomials(G)
    for d in range(D + 1):
        report.instances += 1
        piece = graded_piece(J, d, nvars, p)
        dims = {"J": {k: piece.block_dim(k) for k in piece.blocks},
                "minimal": intersection_block_dims(minimal, G.n, d, p)}
        if every is not None:
            dims["all"] = intersection_block_dims(every, G.n, d, p)
        row = {"degree": d, **{f"dim_{k}": sum(v.values()) for k, v in dims.items()}}
        bad = [k for k in dims["J"] if len({v[k] for v in dims.values()}) > 1]
        if bad:
            row["blocks"] = [[list(mu), a] for mu, a in bad[:5]]
            report.failures.append(row)
    report.runtime = time.perf_counter() - start
    return report


# join formula for initial ideals

def _join_prediction(G1: Graph, G2: Graph, order: TermOrder, p: int) -> Any:
    if G1.is_complete() and G2.is_complete():
        return 2
    values = [regularity_initial(H, order, p) for H in (G1, G2)]
    return max([v for v in values if v is not NO_EDGES] + [3])


def verify_join_regularity(G1: Graph, G2: Graph, order: TermOrder = LEX,
                           p: int = 2) -> VerificationReport:
    """``reg ini J_{G1*G2} = max(reg ini J_G1, reg ini J_G2, 3)`` unless both
    factors are complete (then 2)."""
    start = time.perf_counter()
    if G1.n + G2.n > ORACLE_VERTEX_CAP:
        raise ValueError(f"n1 + n2 = {G1.n + G2.n} exceeds the oracle cap")
    report = VerificationReport("join_regularity", instances=1)
    lhs = regularity_initial(compose(G1, G2, "join"), order, p)
    rhs = _join_prediction(G1, G2, order, p)
    report.details = {"G1": to_graph6(G1), "G2": to_graph6(G2), "order": str(order),
                      "p": p, "join": _value_json(lhs), "predicted": rhs}
    if lhs != rhs:
        report.failures.append(dict(report.details))
    report.runtime = time.perf_counter() - start
    return report


# initial ideals of sums and intersections

def verify_initial_additivity(I, J, nvars: int, order: TermOrder = LEX, D: int = 4,
                              p: int = 2) -> VerificationReport:
    """Check ``ini(I+J) = ini I + ini J`` and ``ini(I cap J) = ini I cap ini J``
    in each degree up to ``D`` and that the two equalities co-occur.

    ``I`` and ``J`` are generator lists, or lists of generator lists standing
    for intersections.
    """
    start = time.perf_counter()
    report = VerificationReport("initial_additivity", details={"D": D, "order": str(order), "p": p})
    sums = meets = True
    I_meet, J_meet = _as_meet(I), _as_meet(J)
    for d in range(D + 1):
        report.instances += 1
        si, sj = _slice(I_meet, d, nvars, p), _slice(J_meet, d, nvars, p)
        ini_i, ini_j = _slice_initial(si, order, p), _slice_initial(sj, order, p)
        sum_ok = _slice_initial(_slice_sum(si, sj), order, p) == ini_i | ini_j
        meet_ok = _slice_initial(_slice(I_meet + J_meet, d, nvars, p), order, p) == ini_i & ini_j
        sums &= sum_ok
        meets &= meet_ok
        if sum_ok != meet_ok:
            report.failures.append({"degree": d, "sum": sum_ok, "intersection": meet_ok})
    report.details.update(sum_equality=sums, intersection_equality=meets)
    report.runtime = time.perf_counter() - start
    return report


def join_q_pair(G1: Graph, G2: Graph, order: TermOrder = LEX):
    """The splitting ``J_{G1*G2} = Q cap Q'`` for disconnected ``G1, G2``:
    ``Q = (x_i, y_i : i in V1) + J_G2`` and
    ``Q' = J_{K_n} cap ((x_i, y_i : i in V2) + J_G1)``, on the join's labels."""
    if len(components(G1)) < 2 or len(components(G2)) < 2:
        raise ValueError("both graphs must be disconnected")
    n1, n = G1.n, G1.n + G2.n
    V1, V2 = range(1, n1 + 1), range(n1 + 1, n + 1)
    G2_shift = Graph(n, {(i + n1, j + n1) for i, j in G2.edges})
    Q = variables_of(n, V1) + edge_binomials(G2_shift, order)
    Q_prime = [edge_binomials(complete(n), order),
               variables_of(n, V2) + edge_binomials(Graph(n, G1.edges), order)]
    return Q, Q_prime


# conjecture sweeps

def _check_ehh(G: Graph, p: int, order: TermOrder) -> dict | None:
    s = structural_regularity(G)
    if not s.exact or s.value is NO_EDGES:
        return None
    v = regularity_initial(G, order, p)
    return {"structural": s.value, "initial": v, "ok": v == s.value}


def _check_sk(G: Graph, p: int, order: TermOrder) -> dict | None:
    H = strip_isolated(G)
    if H.num_edges == 0:
        return None
    v = regularity_initial(H, order, p)
    c = maximal_clique_count(H)
    return {"initial": v, "c": c, "ok": v <= c + 1}


def _check_weakly_closed(G: Graph, p: int, order: TermOrder) -> dict | None:
    if G.n < 2 or len(components(G)) > 1 or not is_weakly_closed(G).weakly_closed:
        return None
    ell = longest_induced_path_length(G)
    r = regularity_certified(G, (p,), order, confirm=False)
    row = {"reg": r.value, "status": r.status, "ell_plus_1": ell + 1}
    if r.exact:
        row["ok"] = r.value == ell + 1
    else:
        # an upper bound can only confirm the conjecture, since reg >= l + 1
        row["ok"] = True if r.value == ell + 1 else None
    return row


_CHECKS = {"ehh_equality": _check_ehh, "sk_cliques": _check_sk,
           "weakly_closed_ell": _check_weakly_closed}


def verify_conjectures(corpus: Iterable[Graph], which: str, p: int = 2,
                       order: TermOrder = LEX) -> VerificationReport:
    """Test one conjecture over a corpus; graphs beyond the caps are skipped."""
    if which not in _CHECKS:
        raise ValueError(f"unknown conjecture {which!r}; choose from {CONJECTURES}")
    start = time.perf_counter()
    report = VerificationReport(which)
    check = _CHECKS[which]
    for G in corpus:
        g6 = to_graph6(G)
        try:
            row = check(G, p, order)
        except ValueError as exc:
            log.info("skipping %s: %s", g6, exc)
            report.skipped.append({"graph6": g6, "reason": str(exc)})
            continue
        if row is None:
            continue
        report.instances += 1
        ok = row.pop("ok")
        row = {"graph6": g6, **{k: _value_json(v) for k, v in row.items()}}
        if ok is None:
            report.inconclusive.append(row)
        elif not ok:
            report.failures.append(row)
    report.runtime = time.perf_counter() - start
    return report
