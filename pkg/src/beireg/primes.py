"""Minimal primes of binomial edge ideals.

For ``T`` a vertex subset, ``P_T(G)`` is generated by ``x_i, y_i`` for
``i in T`` together with all 2-minors on each connected component of
``G - T``.  The minimal primes are exactly the ``P_T`` with ``T`` in
``C(G)``: the empty set and every ``T`` whose vertices are each a cut point
of ``G`` restricted to ``([n] - T) + {i}``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .graph import Graph, _bits, _component_masks, components, compose, induced_subgraph
from .groebner import (LEX, Binomial, TermOrder, buchberger, make_binomial, normal_form,
                       variable, variables_of)
from .linalg import rank, rank_gf2

__all__ = [
    "CutSet",
    "PrimeDescription",
    "DEFAULT_CUTSET_CAP",
    "has_cut_point_property",
    "cut_point_sets",
    "cutset",
    "prime_of_cutset",
    "prime_generators",
    "prime_containment",
    "prime_containment_algebraic",
    "join_of_collections",
    "verify_join_cutsets",
    "JoinCutsetReport",
    "intersection_block_dims",
]

DEFAULT_CUTSET_CAP = 12


def _mask(vertices: Iterable[int]) -> int:
    return sum(1 << (v - 1) for v in vertices)


class CutSet(NamedTuple):
    T: frozenset[int]
    parts: tuple[frozenset[int], ...]  # components of G - T

    @property
    def c(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class PrimeDescription:
    n: int
    variables: frozenset[int]  # vertices i contributing x_i, y_i
    clique_ideals: tuple[frozenset[int], ...]  # each set contributes all its 2-minors

    def to_json(self) -> dict:
        return {"T": sorted(self.variables), "parts": [sorted(p) for p in self.clique_ideals]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _parts(G: Graph, tmask: int) -> tuple[frozenset[int], ...]:
    rest = G.full_mask & ~tmask
    comps = [frozenset(_bits(c)) for c in _component_masks(G.masks, rest)]
    return tuple(sorted(comps, key=lambda p: (len(p), min(p))))


def _num_components(masks, within: int) -> int:
    return len(_component_masks(masks, within))


def has_cut_point_property(G: Graph, T: Iterable[int]) -> bool:
    """Every ``i`` in ``T`` is a cut point of ``G`` on ``([n] - T) + {i}``."""
    tmask = _mask(T)
    rest = G.full_mask & ~tmask
    base = _num_components(G.masks, rest)
    return all(_num_components(G.masks, rest | 1 << (i - 1)) < base for i in _bits(tmask))


def cutset(G: Graph, T: Iterable[int]) -> CutSet:
    T = frozenset(T)
    return CutSet(T, _parts(G, _mask(T)))


def cut_point_sets(G: Graph, cap: int = DEFAULT_CUTSET_CAP) -> list[CutSet]:
    """``C(G)`` by a full scan of subsets, ordered by size then lexicographically."""
    if G.n > cap:
        raise ValueError(f"cut set scan capped at n={cap}, got {G.n}")
    out = [cutset(G, ())]
    for k in range(1, G.n + 1):
        for T in itertools.combinations(G.vertices, k):
            if has_cut_point_property(G, T):
                out.append(cutset(G, T))
    return out


def prime_of_cutset(G: Graph, T: CutSet) -> PrimeDescription:
    if T.parts != _parts(G, _mask(T.T)):
        raise ValueError(f"partition {T.parts} does not match the components of G - {sorted(T.T)}")
    return PrimeDescription(G.n, T.T, T.parts)


def prime_generators(P: PrimeDescription, order: TermOrder = LEX) -> list[Binomial]:
    n = P.n
    gens = variables_of(n, P.variables)
    for part in P.clique_ideals:
        for i, j in itertools.combinations(sorted(part), 2):
            a = tuple(x + y for x, y in zip(variable(n, i, "x"), variable(n, j, "y")))
            b = tuple(x + y for x, y in zip(variable(n, j, "x"), variable(n, i, "y")))
            gens.append(make_binomial(a, b, order))
    return gens


def _part_of(parts: Iterable[frozenset[int]]) -> dict[int, int]:
    return {v: k for k, part in enumerate(parts) for v in part}


def prime_containment(G: Graph, T1: CutSet, T2: CutSet) -> bool:
    """Whether ``P_T1 <= P_T2``, decided combinatorially."""
    if not T1.T <= T2.T:
        return False
    where = _part_of(T2.parts)
    for part in T1.parts:
        for u, v in itertools.combinations(sorted(part), 2):
            if u in T2.T or v in T2.T:
                continue
            if where[u] != where[v]:
                return False
    return True


def prime_containment_algebraic(G: Graph, T1: CutSet, T2: CutSet, order: TermOrder = LEX) -> bool:
    """Same question answered by membership of each generator of ``P_T1`` in
    a Groebner basis of ``P_T2``."""
    basis = buchberger(prime_generators(prime_of_cutset(G, T2), order), order)
    return all(normal_form(g, basis, order) is None
               for g in prime_generators(prime_of_cutset(G, T1), order))


def join_of_collections(*collections: Iterable[frozenset[int]]) -> set[frozenset[int]]:
    """``A o B = {A + B}``, folded over any number of collections."""
    out = {frozenset()}
    for coll in collections:
        out = {a | b for a in out for b in coll}
    return out


class JoinCutsetReport(NamedTuple):
    equal: bool
    direct: frozenset[frozenset[int]]
    formula: frozenset[frozenset[int]]

    @property
    def only_direct(self) -> set[frozenset[int]]:
        return set(self.direct - self.formula)

    @property
    def only_formula(self) -> set[frozenset[int]]:
        return set(self.formula - self.direct)


def _component_cutsets(H: Graph, offset: int, cap: int) -> list[set[frozenset[int]]]:
    out = []
    for comp in components(H):
        verts = sorted(comp)
        sub = induced_subgraph(H, verts)
        out.append({frozenset(verts[i - 1] + offset for i in cs.T) for cs in cut_point_sets(sub, cap)})
    return out


def verify_join_cutsets(G1: Graph, G2: Graph, cap: int = DEFAULT_CUTSET_CAP) -> JoinCutsetReport:
    """Compare ``C(G1 * G2)`` by direct scan against the componentwise formula
    for two disconnected graphs."""
    if len(components(G1)) < 2 or len(components(G2)) < 2:
        raise ValueError("both graphs must be disconnected")
    if G1.n + G2.n > cap:
        raise ValueError(f"n1 + n2 = {G1.n + G2.n} exceeds the cut set cap {cap}")
    n1 = G1.n
    V1 = frozenset(range(1, n1 + 1))
    V2 = frozenset(range(n1 + 1, n1 + G2.n + 1))
    direct = frozenset(cs.T for cs in cut_point_sets(compose(G1, G2, "join"), cap))
    side1 = join_of_collections(*_component_cutsets(G1, 0, cap), [V2])
    side2 = join_of_collections(*_component_cutsets(G2, n1, cap), [V1])
    formula = frozenset({frozenset()} | side1 | side2)
    return JoinCutsetReport(direct == formula, direct, formula)


def _x_patterns(mu: tuple[int, ...]) -> dict[int, list[tuple[int, ...]]]:
    """x-exponent vectors ``alpha <= mu`` grouped by ``|alpha|``."""
    out: dict[int, list[tuple[int, ...]]] = {}
    for alpha in itertools.product(*(range(m + 1) for m in mu)):
        out.setdefault(sum(alpha), []).append(alpha)
    return out


def intersection_block_dims(primes: Iterable[PrimeDescription], n: int, d: int,
                            p: int = 2) -> dict[tuple, int]:
    """Degree-``d`` dimensions of the intersection of the ``P_T``, per
    multidegree block ``(vertex multiset, x-count)``.

    ``P_T`` is toric on the vertices outside ``T``: a monomial avoiding ``T``
    is congruent exactly to the monomials with the same vertex multiset and the
    same x-count on every part.  So within a block the slice of ``P_T`` is cut
    out by one sum-zero condition per such fiber, and is everything when the
    block touches ``T``.
    """
    primes = list(primes)
    out = {}
    for combo in itertools.combinations_with_replacement(range(n), d):
        mu = [0] * n
        for k in combo:
            mu[k] += 1
        mu = tuple(mu)
        support = [i + 1 for i in range(n) if mu[i]]
        labelings = set()
        for P in primes:
            if P.variables.intersection(support):
                continue
            where = _part_of(P.clique_ideals)
            labelings.add(tuple(where[v] for v in support))
        for a, cols in _x_patterns(mu).items():
            rows = []
            for lab in labelings:
                fibers: dict[tuple, int] = {}
                for c, alpha in enumerate(cols):
                    key = [0] * n
                    for part, v in zip(lab, support):
                        key[part] += alpha[v - 1]
                    key = tuple(key)
                    fibers[key] = fibers.get(key, 0) | 1 << c
                rows.extend(fibers.values())
            if p == 2:
                r = rank_gf2(rows)
            else:
                r = rank([[row >> c & 1 for c in range(len(cols))] for row in rows], len(cols), p)
            out[(mu, a)] = len(cols) - r
    return out
