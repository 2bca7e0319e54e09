"""Combinatorial regularity of binomial edge ideals.

Everything here is decided from the graph alone:

* the join formula ``reg(J_{G1*G2}) = max(reg J_G1, reg J_G2, 3)`` for
  ``G1, G2`` not both complete;
* additivity over components, ``reg J_G = sum reg J_Hi - t + 1``;
* ``reg J_G = 2`` iff the graph (without isolated vertices) is complete, and
  ``reg J_{P_k} = k``;
* the recursive description of the graphs of regularity 3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any, Iterable, NamedTuple, Sequence

from .graph import (Graph, canonical_code, complete, components, compose, disjoint_union,
                    empty, graph_class, induced_subgraph, is_isomorphic, join, path,
                    strip_isolated, to_graph6, MAX_CANONICAL_N)

__all__ = [
    "NO_EDGES",
    "RegClass",
    "Block",
    "JoinCertificate",
    "RegularityResult",
    "join_decompose",
    "reconstruct",
    "regularity_class",
    "structural_regularity",
    "build_threshold",
    "CMGorensteinResult",
    "classify_cm_gorenstein",
    "Counterexample",
    "build_counterexample",
    "graph_of_regularity",
]


class _NoEdges:
    """Regularity of the zero ideal (conventionally minus infinity)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NoEdges"

    def __reduce__(self):
        return (_NoEdges, ())


NO_EDGES = _NoEdges()


class RegClass(IntEnum):
    NO_EDGES = 0
    TWO = 2
    THREE = 3
    AT_LEAST_FOUR = 4

    def __str__(self) -> str:
        return {0: "NoEdges", 2: "Two", 3: "Three", 4: "AtLeastFour"}[int(self)]


class Block(NamedTuple):
    """``K_r + K_s + t K_1`` (disjoint union); r >= s, and r, s are 0 or >= 2."""

    r: int
    s: int
    t: int

    def __str__(self) -> str:
        parts = [f"K{k}" for k in (self.r, self.s) if k]
        if self.t:
            parts.append("K1" if self.t == 1 else f"K{self.t}^c")
        return " ⊔ ".join(parts)


def _block_of(G: Graph) -> Block | None:
    sizes = []
    t = 0
    for comp in components(G):
        if len(comp) == 1:
            t += 1
            continue
        if not induced_subgraph(G, comp).is_complete():
            return None
        sizes.append(len(comp))
    if len(sizes) > 2:
        return None
    sizes = sorted(sizes, reverse=True) + [0, 0]
    return Block(sizes[0], sizes[1], t)


def _order_key(H: Graph):
    code = canonical_code(H)[1] if H.n <= MAX_CANONICAL_N else to_graph6(H)
    return H.n, code


def _value_json(v) -> Any:
    return "NoEdges" if v is NO_EDGES else v


@dataclass
class JoinCertificate:
    """Recursive join / disjoint-union decomposition of a graph.

    ``vertices`` are labels in the decomposed (root) graph; ``graph`` is the
    induced subgraph on them, relabeled in increasing order.
    ``predicted_reg`` is an int, ``NO_EDGES``, or ``None`` when the leaves are
    outside the solvable set.
    """

    kind: str  # leaf | join | union
    vertices: tuple[int, ...]
    graph: Graph
    children: list[JoinCertificate] = field(default_factory=list)
    block: Block | None = None
    predicted_reg: Any = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "predicted_reg": _value_json(self.predicted_reg),
        }
        if self.kind == "leaf":
            if self.block is not None:
                out["block"] = {"r": self.block.r, "s": self.block.s, "t": self.block.t}
            else:
                gc = graph_class(self.graph)
                out["block"] = "path" if gc.kind == "path" else "irreducible-general"
        else:
            out["children"] = [c.to_json() for c in self.children]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def leaves(self) -> list[JoinCertificate]:
        if self.kind == "leaf":
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def __str__(self) -> str:
        if self.kind == "leaf":
            return str(self.block) if self.block is not None else f"[{to_graph6(self.graph)}]"
        sep = " * " if self.kind == "join" else " ⊔ "
        return "(" + sep.join(str(c) for c in self.children) + ")"


def _decompose(G: Graph, labels: tuple[int, ...]) -> JoinCertificate:
    block = _block_of(G)
    if block is not None:
        node = JoinCertificate("leaf", labels, G, block=block)
    else:
        comps = components(G)
        if len(comps) > 1:
            parts = comps
            kind = "union"
        else:
            co = components(G, of_complement=True)
            if len(co) == 1:
                node = JoinCertificate("leaf", labels, G)
                node.predicted_reg = _leaf_value(node)
                return node
            first = min(co, key=lambda c: _order_key(induced_subgraph(G, c)))
            parts = [first, frozenset(G.vertices) - first]
            kind = "join"
        children = []
        for part in parts:
            verts = sorted(part)
            children.append(_decompose(induced_subgraph(G, verts),
                                       tuple(labels[v - 1] for v in verts)))
        children.sort(key=lambda c: _order_key(c.graph))
        node = JoinCertificate(kind, labels, G, children)
    node.predicted_reg = _predict(node)
    return node


def _leaf_value(node: JoinCertificate):
    b = node.block
    if b is not None:
        if b.r == 0:
            return NO_EDGES
        return 2 if b.s == 0 else 3
    gc = graph_class(node.graph)
    return gc.size if gc.kind == "path" else None


def _predict(node: JoinCertificate):
    if node.kind == "leaf":
        return _leaf_value(node)
    values = [c.predicted_reg for c in node.children]
    if any(v is None for v in values):
        return None
    real = [v for v in values if v is not NO_EDGES]
    if node.kind == "union":
        if not real:
            return NO_EDGES
        return sum(real) - len(real) + 1
    if all(c.graph.is_complete() for c in node.children):
        return 2
    return max(real + [3])


def join_decompose(G: Graph) -> JoinCertificate:
    """Maximal recursive decomposition into joins, disjoint unions and
    ``K_r ⊔ K_s ⊔ K_t^c`` blocks."""
    return _decompose(G, tuple(G.vertices))


def reconstruct(cert: JoinCertificate) -> Graph:
    """Rebuild the root graph from a certificate (labels of the root)."""
    edges: set[tuple[int, int]] = set()

    def walk(node: JoinCertificate) -> None:
        if node.kind == "leaf":
            lab = node.vertices
            edges.update((lab[u - 1], lab[v - 1]) for u, v in node.graph.edges)
            return
        for c in node.children:
            walk(c)
        if node.kind == "join":
            for a in range(len(node.children)):
                for b in range(a + 1, len(node.children)):
                    edges.update((u, v) for u in node.children[a].vertices
                                 for v in node.children[b].vertices)

    walk(cert)
    return Graph(max(cert.vertices, default=0), edges)


def regularity_class(G: Graph) -> RegClass:
    """NoEdges / Two / Three / AtLeastFour, decided combinatorially."""
    H = strip_isolated(G)
    if H.num_edges == 0:
        return RegClass.NO_EDGES
    if H.is_complete():
        return RegClass.TWO
    comps = components(H)
    if len(comps) > 1:
        if len(comps) == 2 and all(induced_subgraph(H, c).is_complete() for c in comps):
            return RegClass.THREE
        return RegClass.AT_LEAST_FOUR
    co = components(H, of_complement=True)
    if len(co) == 1:
        return RegClass.AT_LEAST_FOUR
    # any join split works: the factors are induced subgraphs
    left = co[0]
    right = frozenset(H.vertices) - left
    if all(regularity_class(induced_subgraph(H, part)) <= RegClass.THREE for part in (left, right)):
        return RegClass.THREE
    return RegClass.AT_LEAST_FOUR


@dataclass
class RegularityResult:
    """A regularity value with its provenance.

    ``value`` is an int, ``NO_EDGES``, or ``None`` (unknown).  ``status`` is
    ``Exact``, ``UpperBoundOnly`` or ``Unknown``; ``method`` is ``Structural``,
    ``InitialIdeal`` or ``Both``.
    """

    value: Any
    status: str
    method: str
    certificate: JoinCertificate | None = None
    initial_values: dict = field(default_factory=dict)  # characteristic -> reg(ini J_G)
    betti: Any = None
    consistent: bool | None = None  # structural and initial-ideal values agree where they must

    @property
    def exact(self) -> bool:
        return self.status == "Exact"

    def to_json(self) -> dict:
        out = {
            "value": _value_json(self.value),
            "status": self.status,
            "method": self.method,
            "characteristics": sorted(self.initial_values),
            "initial_values": {str(p): _value_json(v) for p, v in sorted(self.initial_values.items())},
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.consistent is not None:
            out["consistent"] = self.consistent
        if self.betti is not None:
            out["betti"] = self.betti.to_json()
        return out


def structural_regularity(G: Graph) -> RegularityResult:
    """Exact ``reg J_G`` when the graph reduces to complete graphs, paths and
    isolated vertices under joins and disjoint unions; otherwise Unknown."""
    cert = join_decompose(G)
    v = cert.predicted_reg
    return RegularityResult(v, "Unknown" if v is None else "Exact", "Structural", cert)


def build_threshold(word: Sequence[str]) -> Graph:
    """Threshold graph from a creation word over {isolated, dominating}."""
    if not word:
        raise ValueError("creation word must be non-empty")
    G = Graph(0)
    for letter in word:
        key = str(letter).lower()
        if key in ("isolated", "i", "0"):
            G = compose(G, empty(1), "disjoint_union")
        elif key in ("dominating", "d", "1"):
            G = compose(G, empty(1), "join")
        else:
            raise ValueError(f"unknown creation letter {letter!r}")
    return G


class CMGorensteinResult(NamedTuple):
    cm_reg3: bool
    extremal_gorenstein: bool
    pattern: str


def classify_cm_gorenstein(G: Graph) -> CMGorensteinResult:
    """Match the Cohen-Macaulay regularity-3 patterns ``K_r ⊔ K_s`` (r, s >= 2)
    and ``K_1 * (K_r ⊔ K_s)`` (r, s >= 1); extremal Gorenstein is ``2K_2`` or ``P_3``."""
    if G.isolated_vertices():
        raise ValueError("graph has isolated vertices")
    n = G.n
    pattern = "none"
    for r in range(2, n - 1):
        s = n - r
        if s >= 2 and r >= s and is_isomorphic(G, disjoint_union(complete(r), complete(s))):
            pattern = f"K{r} ⊔ K{s}"
    for r in range(1, n - 1):
        s = n - 1 - r
        if s >= 1 and r >= s and is_isomorphic(G, join(complete(1), disjoint_union(complete(r), complete(s)))):
            pattern = f"K1 * (K{r} ⊔ K{s})"
    extremal = n in (3, 4) and (is_isomorphic(G, path(3)) or
                                is_isomorphic(G, disjoint_union(complete(2), complete(2))))
    return CMGorensteinResult(pattern != "none", extremal, pattern)


class Counterexample(NamedTuple):
    graph: Graph
    predicted_reg: int
    ell_plus_1: int


def build_counterexample(q: int, t: Iterable[int]) -> Counterexample:
    """``K_1 * (P_t1 ⊔ ... ⊔ P_tq)``: weakly closed, yet its regularity
    ``sum t_i - q + 1`` exceeds ``l(G) + 1 = max t_i``."""
    t = sorted(int(x) for x in t)
    if q < 2:
        raise ValueError("q must be at least 2")
    if len(t) != q:
        raise ValueError(f"expected {q} path sizes, got {len(t)}")
    if t[0] < 3:
        raise ValueError("every path needs at least 3 vertices")
    G = join(empty(1), disjoint_union(*(path(k) for k in t)))
    reg = sum(t) - q + 1
    assert reg > t[-1] - 1
    return Counterexample(G, reg, t[-1])


def graph_of_regularity(n: int, t: int) -> Graph:
    """Connected graph on ``n`` vertices with ``reg J_G = t`` (3 <= t <= n):
    ``P_t * K_{n-t}^c``."""
    if not 3 <= t <= n:
        raise ValueError("need 3 <= t <= n")
    return compose(path(t), empty(n - t), "join")
