"""Groebner bases of ideals generated by pure-difference binomials and
monomials in ``x_1..x_n, y_1..y_n``.

A monomial is an exponent tuple of length ``2n``; positions ``0..n-1`` are the
x-variables and ``n..2n-1`` the y-variables.  A :class:`Binomial` is
``lead - trail`` with unit coefficients, or a bare monomial when ``trail`` is
``None``.  This class is closed under S-polynomials and reduction: the normal
form of a single term is again a single term (or zero), so no coefficient
arithmetic is ever needed and the results hold in every characteristic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .graph import Graph
from .linalg import is_prime, rank, rank_gf2, rref, nullspace

Monomial = tuple[int, ...]

__all__ = [
    "Monomial",
    "Binomial",
    "TermOrder",
    "LEX",
    "DEGREVLEX",
    "MonomialIdeal",
    "GradedPiece",
    "variable",
    "monomial_str",
    "binomial_str",
    "make_binomial",
    "edge_binomials",
    "variables_of",
    "s_polynomial",
    "normal_form",
    "buchberger",
    "is_groebner",
    "initial_ideal",
    "basis_dump",
    "graded_piece",
    "intersection_dim",
    "intersection_initial",
]


class Binomial(NamedTuple):
    lead: Monomial
    trail: Monomial | None  # None: the element is the monomial ``lead``

    @property
    def is_monomial(self) -> bool:
        return self.trail is None

    @property
    def degree(self) -> int:
        return sum(self.lead)


@dataclass(frozen=True)
class TermOrder:
    """Lex or degrevlex on ``x_1 > ... > x_n > y_1 > ... > y_n``.

    ``interleaved=True`` switches the precedence to ``x_1 > y_1 > x_2 > ...``.
    """

    kind: str = "lex"
    interleaved: bool = False

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex"):
            raise ValueError(f"unknown term order {self.kind!r}")

    def _precedence(self, m: Monomial) -> Monomial:
        if not self.interleaved:
            return m
        n = len(m) // 2
        return tuple(m[k // 2 + (k % 2) * n] for k in range(2 * n))

    def key(self, m: Monomial):
        """Sort key; larger key means larger monomial."""
        m = self._precedence(m)
        if self.kind == "lex":
            return m
        return (sum(m), tuple(-e for e in reversed(m)))

    def __str__(self) -> str:
        return self.kind + ("/interleaved" if self.interleaved else "")


LEX = TermOrder("lex")
DEGREVLEX = TermOrder("degrevlex")


def variable(n: int, i: int, kind: str) -> Monomial:
    """The monomial ``x_i`` or ``y_i`` (``i`` in 1..n)."""
    e = [0] * (2 * n)
    e[i - 1 + (n if kind == "y" else 0)] = 1
    return tuple(e)


def monomial_str(m: Monomial) -> str:
    n = len(m) // 2
    parts = []
    for k, e in enumerate(m):
        if e:
            name = f"{'x' if k < n else 'y'}{k % n + 1}"
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) or "1"


def binomial_str(f: Binomial) -> str:
    if f.trail is None:
        return monomial_str(f.lead)
    return f"{monomial_str(f.lead)} - {monomial_str(f.trail)}"


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mul_div(u: Monomial, num: Monomial, den: Monomial) -> Monomial:
    return tuple(a + b - c for a, b, c in zip(u, num, den))


def make_binomial(u: Monomial | None, v: Monomial | None, order: TermOrder) -> Binomial | None:
    """Normalize ``u - v`` (either side may be zero); ``None`` means zero."""
    if u is None and v is None:
        return None
    if u is None or v is None:
        return Binomial(u if v is None else v, None)
    if u == v:
        return None
    if order.key(u) < order.key(v):
        u, v = v, u
    return Binomial(u, v)


def edge_binomials(G: Graph, order: TermOrder = LEX) -> list[Binomial]:
    """``f_ij = x_i y_j - x_j y_i`` for every edge ``i < j``."""
    n = G.n
    out = []
    for i, j in sorted(G.edges):
        a = _mul_div(variable(n, i, "x"), variable(n, j, "y"), (0,) * (2 * n))
        b = _mul_div(variable(n, j, "x"), variable(n, i, "y"), (0,) * (2 * n))
        out.append(make_binomial(a, b, order))
    return out


def variables_of(n: int, vertices: Iterable[int]) -> list[Binomial]:
    """Monomial generators ``x_i, y_i`` for the given vertices."""
    out = []
    for i in sorted(set(vertices)):
        out.append(Binomial(variable(n, i, "x"), None))
        out.append(Binomial(variable(n, i, "y"), None))
    return out


def s_polynomial(f: Binomial, g: Binomial, order: TermOrder) -> Binomial | None:
    L = _lcm(f.lead, g.lead)
    u = None if f.trail is None else _mul_div(L, f.trail, f.lead)
    v = None if g.trail is None else _mul_div(L, g.trail, g.lead)
    return make_binomial(v, u, order)


def _reduce_term(u: Monomial, basis: Sequence[Binomial]) -> Monomial | None:
    while True:
        for g in basis:
            if _divides(g.lead, u):
                if g.trail is None:
                    return None
                u = _mul_div(u, g.trail, g.lead)
                break
        else:
            return u


def normal_form(f: Binomial | None, basis: Sequence[Binomial], order: TermOrder) -> Binomial | None:
    """Remainder of ``f`` modulo ``basis``; ``None`` is zero.

    Each term reduces to a single term, so this is linear term by term.
    """
    if f is None:
        return None
    u = _reduce_term(f.lead, basis)
    v = None if f.trail is None else _reduce_term(f.trail, basis)
    return make_binomial(u, v, order)


def _check_input(gens: Iterable[Binomial | None], order: TermOrder) -> list[Binomial]:
    out = []
    width = None
    for g in gens:
        if g is None:
            continue
        if not isinstance(g, Binomial):
            raise TypeError(f"expected a pure-difference Binomial, got {type(g).__name__}")
        terms = [g.lead] + ([] if g.trail is None else [g.trail])
        for t in terms:
            if width is None:
                width = len(t)
            if len(t) != width or any(e < 0 for e in t):
                raise ValueError(f"malformed monomial in {g}")
        h = make_binomial(g.lead, g.trail, order) if g.trail is not None else g
        if h is not None:
            out.append(h)
    return out


def buchberger(gens: Iterable[Binomial | None], order: TermOrder = LEX) -> list[Binomial]:
    """Reduced Groebner basis, sorted by (degree, lead monomial)."""
    G = _check_input(gens, order)
    key = order.key
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}

    def pair_key(p):
        L = _lcm(G[p[0]].lead, G[p[1]].lead)
        return sum(L), key(L), p

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        f, g = G[i], G[j]
        if all(a == 0 or b == 0 for a, b in zip(f.lead, g.lead)):
            continue  # coprime leads
        L = _lcm(f.lead, g.lead)
        if any(k != i and k != j and _divides(G[k].lead, L)
               and (min(i, k), max(i, k)) not in pairs
               and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            continue  # chain criterion
        h = normal_form(s_polynomial(f, g, order), G, order)
        if h is None:
            continue
        assert h.trail is None or key(h.lead) > key(h.trail), "closure violated"
        G.append(h)
        pairs |= {(k, len(G) - 1) for k in range(len(G) - 1)}
    return _reduce_basis(G, order)


def _reduce_basis(G: list[Binomial], order: TermOrder) -> list[Binomial]:
    key = order.key
    G = sorted(G, key=lambda g: (sum(g.lead), key(g.lead)))
    minimal: list[Binomial] = []
    for g in G:
        if not any(_divides(h.lead, g.lead) for h in minimal):
            minimal.append(g)
    out = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        tail = None if g.trail is None else _reduce_term(g.trail, minimal)
        lead = _reduce_term(g.lead, others)
        assert lead == g.lead
        out.append(Binomial(g.lead, tail))
    return sorted(out, key=lambda g: (sum(g.lead), key(g.lead)))


def is_groebner(basis: Sequence[Binomial], order: TermOrder) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    return all(normal_form(s_polynomial(f, g, order), basis, order) is None
               for f, g in itertools.combinations(basis, 2))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its inclusion-minimal generators."""

    gens: tuple[Monomial, ...]
    nvars: int

    @classmethod
    def from_generators(cls, gens: Iterable[Monomial], nvars: int | None = None) -> MonomialIdeal:
        gens = sorted(set(map(tuple, gens)), key=lambda m: (sum(m), tuple(-e for e in m)))
        minimal: list[Monomial] = []
        for g in gens:
            if not any(_divides(h, g) for h in minimal):
                minimal.append(g)
        if nvars is None:
            nvars = len(minimal[0]) if minimal else 0
        return cls(tuple(minimal), nvars)

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal.from_generators(self.gens + other.gens, self.nvars)

    def contains(self, m: Monomial) -> bool:
        return any(_divides(g, m) for g in self.gens)

    def __str__(self) -> str:
        return "(" + ", ".join(monomial_str(g) for g in self.gens) + ")"


def initial_ideal(basis: Sequence[Binomial], order: TermOrder = LEX) -> MonomialIdeal:
    """Lead terms of a Groebner basis (``order`` only fixes the width if empty)."""
    if not basis:
        return MonomialIdeal((), 0)
    return MonomialIdeal.from_generators([g.lead for g in basis], len(basis[0].lead))


def basis_dump(basis: Sequence[Binomial]) -> str:
    return "\n".join(binomial_str(g) for g in basis) + ("\n" if basis else "")


# ---------------------------------------------------------------------------
# graded pieces


def _monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return out


def _fine_key(m: Monomial) -> tuple:
    n = len(m) // 2
    return tuple(m[i] + m[n + i] for i in range(n)), sum(m[:n])


def _is_fine(g: Binomial) -> bool:
    return g.trail is None or _fine_key(g.lead) == _fine_key(g.trail)


DEFAULT_DEGREE_CAP = 12


@dataclass
class GradedPiece:
    """Degree-``d`` slice of an ideal generated by binomials and monomials.

    The slice is spanned by ``m * g`` over generators ``g``; those vectors are
    differences ``e_u - e_v`` or unit vectors ``e_u``, so the span is read off a
    union-find over monomials: a component of size k contributes k - 1
    dimensions, or k when it contains a monomial of the ideal.  Monomials are
    grouped into blocks by multidegree (vertex multiset, x-count) whenever all
    generators are homogeneous for it.
    """

    gens: list[Binomial]
    nvars: int
    degree: int
    p: int = 2
    blocks: dict = field(default_factory=dict)
    _parent: dict = field(default_factory=dict, repr=False)
    _grounded: set = field(default_factory=set, repr=False)

    def _find(self, u):
        parent = self._parent
        root = u
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(u, u) != root:
            parent[u], u = root, parent[u]
        return root

    def _union(self, u, v):
        ru, rv = self._find(u), self._find(v)
        if ru != rv:
            self._parent[ru] = rv
            if ru in self._grounded:
                self._grounded.discard(ru)
                self._grounded.add(rv)

    def components(self, key) -> list[tuple[list[Monomial], bool]]:
        """(members, grounded) for every component inside one block."""
        groups: dict = {}
        for u in self.blocks[key]:
            groups.setdefault(self._find(u), []).append(u)
        return [(members, root in self._grounded) for root, members in groups.items()]

    def block_dim(self, key) -> int:
        return sum(len(m) if gr else len(m) - 1 for m, gr in self.components(key))

    @property
    def dim(self) -> int:
        return sum(self.block_dim(k) for k in self.blocks)

    def annihilator(self, key) -> list[frozenset[Monomial]]:
        """Linear constraints cutting out the block: sum of coefficients over
        each ungrounded component vanishes."""
        return [frozenset(m) for m, gr in self.components(key) if not gr]

    def initial_monomials(self, order: TermOrder) -> set[Monomial]:
        """Lead monomials of the slice: all of a grounded component, all but
        the smallest monomial of an ungrounded one."""
        out: set[Monomial] = set()
        for key in self.blocks:
            for members, grounded in self.components(key):
                members = sorted(members, key=order.key)
                out.update(members if grounded else members[1:])
        return out

    def basis_vectors(self, key) -> tuple[list[Monomial], list[list[int]]]:
        cols = list(self.blocks[key])
        index = {u: c for c, u in enumerate(cols)}
        rows = []
        for members, grounded in self.components(key):
            root = members[0]
            for u in members[0 if grounded else 1:]:
                r = [0] * len(cols)
                r[index[u]] = 1
                if not grounded:
                    r[index[root]] = self.p - 1
                rows.append(r)
        return cols, rows

    def __add__(self, other: GradedPiece) -> GradedPiece:
        if (self.nvars, self.degree, self.p) != (other.nvars, other.degree, other.p):
            raise ValueError("pieces live in different rings or degrees")
        return graded_piece(self.gens + other.gens, self.degree, self.nvars, self.p)


def graded_piece(gens: Iterable[Binomial], d: int, nvars: int, p: int = 2,
                 cap: int = DEFAULT_DEGREE_CAP) -> GradedPiece:
    """Degree-``d`` piece of the ideal generated by ``gens`` in ``nvars`` (= 2n)
    variables over GF(p)."""
    if d > cap:
        raise ValueError(f"degree {d} exceeds the cap {cap}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if nvars % 2:
        raise ValueError("the ring has 2n variables")
    gens = [g for g in gens if g is not None]
    fine = all(_is_fine(g) for g in gens)
    if not fine and any(g.trail is not None and sum(g.lead) != sum(g.trail) for g in gens):
        raise ValueError("generators are not homogeneous")
    piece = GradedPiece(list(gens), nvars, d, p)
    for m in _monomials_of_degree(nvars, d):
        piece.blocks.setdefault(_fine_key(m) if fine else None, []).append(m)
    for g in gens:
        e = g.degree
        if e > d:
            continue
        for m in _monomials_of_degree(nvars, d - e):
            u = tuple(a + b for a, b in zip(m, g.lead))
            if g.trail is None:
                piece._grounded.add(piece._find(u))
            else:
                piece._union(u, tuple(a + b for a, b in zip(m, g.trail)))
    return piece


def _stacked_constraints(pieces: Sequence[GradedPiece], key) -> tuple[list[Monomial], list[frozenset]]:
    cols = pieces[0].blocks[key]
    rows = []
    seen = set()
    for P in pieces:
        for c in P.annihilator(key):
            if c not in seen:
                seen.add(c)
                rows.append(c)
    return cols, rows


def intersection_dim(pieces: Sequence[GradedPiece]) -> int:
    """dim of the intersection of same-degree slices (annihilators add up)."""
    _same_ring(pieces)
    total = 0
    p = pieces[0].p
    for key in pieces[0].blocks:
        cols, rows = _stacked_constraints(pieces, key)
        index = {u: c for c, u in enumerate(cols)}
        if p == 2:
            r = rank_gf2(sum(1 << index[u] for u in row) for row in rows)
        else:
            r = rank(([1 if u in row else 0 for u in cols] for row in rows), len(cols), p)
        total += len(cols) - r
    return total


def intersection_initial(pieces: Sequence[GradedPiece], order: TermOrder) -> set[Monomial]:
    """Lead monomials of the intersection of same-degree slices."""
    _same_ring(pieces)
    p = pieces[0].p
    out: set[Monomial] = set()
    for key in pieces[0].blocks:
        cols, rows = _stacked_constraints(pieces, key)
        cols = sorted(cols, key=order.key, reverse=True)
        dense = [[1 if u in row else 0 for u in cols] for row in rows]
        space = nullspace(dense, len(cols), p)
        _, pivots = rref(space, len(cols), p)
        out.update(cols[c] for c in pivots)
    return out


def _same_ring(pieces: Sequence[GradedPiece]) -> None:
    if not pieces:
        raise ValueError("need at least one piece")
    first = pieces[0]
    for P in pieces[1:]:
        if (P.nvars, P.degree, P.p) != (first.nvars, first.degree, first.p):
            raise ValueError("pieces live in different rings or degrees")
        if P.blocks.keys() != first.blocks.keys():
            raise ValueError("pieces use different gradings")
