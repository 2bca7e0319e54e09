"""Labeled simple graphs on 1..n and the combinatorial measurements used by
the regularity classifier (induced paths, cliques, dominating sets, weakly
closed labelings).

Vertices are always ``1..n``.  Internally adjacency is kept as bitmasks where
bit ``v - 1`` stands for vertex ``v``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, NamedTuple

import numpy as np

__all__ = [
    "Graph",
    "GraphClass",
    "Graph6Error",
    "Graph6HeaderError",
    "Graph6TruncatedError",
    "Graph6TrailingError",
    "Graph6ByteError",
    "WeaklyClosedResult",
    "complete",
    "empty",
    "path",
    "cycle",
    "star",
    "graph_class",
    "parse_graph6",
    "to_graph6",
    "read_graph6",
    "parse_edge_list",
    "to_edge_list",
    "canonical_code",
    "canonical_form",
    "is_isomorphic",
    "enumerate_small_graphs",
    "compose",
    "join",
    "disjoint_union",
    "components",
    "induced_subgraph",
    "strip_isolated",
    "longest_induced_path_length",
    "maximal_cliques",
    "maximal_clique_count",
    "is_weakly_closed",
    "min_connected_dominating_set",
]

MAX_CANONICAL_N = 8


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple graph on the vertex set ``1..n``.

    ``edges`` holds pairs ``(i, j)`` with ``i < j``.
    """

    n: int
    edges: frozenset

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) outside 1..{n}")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighborhood bitmask of each vertex, indexed from 0."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        return tuple(adj)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.masks[u - 1] >> (v - 1) & 1)

    def N(self, v: int) -> frozenset[int]:
        """Open neighborhood."""
        return frozenset(_bits(self.masks[v - 1]))

    def N_closed(self, v: int) -> frozenset[int]:
        return self.N(v) | {v}

    def degree(self, v: int) -> int:
        return self.masks[v - 1].bit_count()

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def is_connected(self) -> bool:
        return self.n <= 1 or len(components(self)) == 1

    def isolated_vertices(self) -> list[int]:
        return [v for v in self.vertices if self.masks[v - 1] == 0]

    def complement(self) -> Graph:
        return Graph(self.n, ((u, v) for u, v in itertools.combinations(self.vertices, 2)
                              if not self.adjacent(u, v)))

    def relabel(self, perm: dict[int, int]) -> Graph:
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            a[u - 1, v - 1] = a[v - 1, u - 1] = True
        return a


# ---------------------------------------------------------------------------
# stock graphs


def complete(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(1, n + 1), 2))


def empty(n: int) -> Graph:
    return Graph(n)


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(1, n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def star(k: int) -> Graph:
    """K_{1,k} with center 1."""
    return Graph(k + 1, ((1, i) for i in range(2, k + 2)))


class GraphClass(NamedTuple):
    kind: str  # complete | empty | path | cycle | star | general
    size: int


def graph_class(G: Graph) -> GraphClass:
    """Name a stock graph; anything else is ``general``."""
    n, m = G.n, G.num_edges
    if m == 0:
        return GraphClass("empty", n)
    if G.is_complete():
        return GraphClass("complete", n)
    degrees = sorted(G.degree(v) for v in G.vertices)
    if G.is_connected():
        if m == n - 1 and degrees[-1] <= 2:
            return GraphClass("path", n)
        if m == n and degrees[0] == degrees[-1] == 2:
            return GraphClass("cycle", n)
        if m == n - 1 and degrees[-1] == n - 1:
            return GraphClass("star", n - 1)
    return GraphClass("general", n)


# ---------------------------------------------------------------------------
# graph6 and edge lists


class Graph6Error(ValueError):
    """Malformed graph6 text; ``offset`` is the byte position at fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.message = message
        self.offset = offset


class Graph6HeaderError(Graph6Error):
    pass


class Graph6TruncatedError(Graph6Error):
    pass


class Graph6TrailingError(Graph6Error):
    pass


class Graph6ByteError(Graph6Error):
    pass


def _triangle_pairs(n: int) -> list[tuple[int, int]]:
    # graph6 column order: (0,1), (0,2), (1,2), (0,3), ...
    return [(i, j) for j in range(1, n) for i in range(j)]


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (short form, n <= 62)."""
    s = text.rstrip("\r\n")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
        base = len(">>graph6<<")
    else:
        base = 0
    if not s:
        raise Graph6HeaderError("empty input", base)
    head = ord(s[0]) - 63
    if head == 63:
        raise Graph6HeaderError("long-form graph6 (n > 62) is not supported", base)
    if not 0 <= head <= 62:
        raise Graph6HeaderError(f"invalid size byte {s[0]!r}", base)
    n = head
    pairs = _triangle_pairs(n)
    need = -(-len(pairs) // 6)
    body = s[1:]
    for k, ch in enumerate(body[:need]):
        if not 63 <= ord(ch) <= 126:
            raise Graph6ByteError(f"invalid data byte {ch!r}", base + 1 + k)
    if len(body) < need:
        raise Graph6TruncatedError(
            f"expected {need} data bytes for n={n}, got {len(body)}", base + 1 + len(body))
    if len(body) > need:
        raise Graph6TrailingError("trailing characters after graph6 data", base + 1 + need)
    edges = []
    for k, (i, j) in enumerate(pairs):
        chunk = ord(body[k // 6]) - 63
        if chunk >> (5 - k % 6) & 1:
            edges.append((i + 1, j + 1))
    return Graph(n, edges)


def to_graph6(G: Graph) -> str:
    if G.n > 62:
        raise ValueError("short-form graph6 only encodes n <= 62")
    pairs = _triangle_pairs(G.n)
    bits = [G.adjacent(i + 1, j + 1) for i, j in pairs]
    bits += [False] * (-len(bits) % 6)
    out = [chr(G.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def read_graph6(lines: Iterable[str]) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)`` for the non-blank lines of a stream."""
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            yield lineno, parse_graph6(line.strip())
        except Graph6Error as exc:
            raise type(exc)(f"line {lineno}: {exc.message}", exc.offset) from exc


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` on the first line followed by 1-based ``u v`` pairs."""
    rows = [(k, line.split()) for k, line in enumerate(text.splitlines(), 1)]
    rows = [(k, r) for k, r in rows if r and not r[0].startswith("#")]
    if not rows:
        raise ValueError("edge list is empty")
    k0, first = rows[0]
    if len(first) != 1:
        raise ValueError(f"line {k0}: expected vertex count")
    try:
        n = int(first[0])
    except ValueError:
        raise ValueError(f"line {k0}: vertex count {first[0]!r} is not an integer") from None
    if n < 0:
        raise ValueError(f"line {k0}: negative vertex count")
    edges = []
    for k, r in rows[1:]:
        if len(r) != 2:
            raise ValueError(f"line {k}: expected 'u v'")
        try:
            u, v = int(r[0]), int(r[1])
        except ValueError:
            raise ValueError(f"line {k}: vertices must be integers") from None
        if not (1 <= u <= n and 1 <= v <= n) or u == v:
            raise ValueError(f"line {k}: bad edge ({u}, {v}) for n={n}")
        edges.append((u, v))
    return Graph(n, edges)


def to_edge_list(G: Graph) -> str:
    return "\n".join([str(G.n)] + [f"{u} {v}" for u, v in sorted(G.edges)]) + "\n"


# ---------------------------------------------------------------------------
# canonical forms and enumeration


@lru_cache(maxsize=None)
def _perm_table(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    pairs = _triangle_pairs(n)
    I = np.array([p[0] for p in pairs], dtype=np.int64)
    J = np.array([p[1] for p in pairs], dtype=np.int64)
    flat = perms[:, I] * n + perms[:, J]
    weights = np.array([1 << (len(pairs) - 1 - k) for k in range(len(pairs))], dtype=np.int64)
    return perms, flat, weights


def _canonical(G: Graph) -> tuple[int, tuple[int, ...]]:
    n = G.n
    if n > MAX_CANONICAL_N:
        raise ValueError(f"canonical forms are brute force and capped at n={MAX_CANONICAL_N}")
    if n <= 1:
        return 0, tuple(range(n))
    perms, flat, weights = _perm_table(n)
    codes = G.adjacency_matrix().ravel()[flat] @ weights
    best = int(np.argmin(codes))
    return int(codes[best]), tuple(int(x) for x in perms[best])


def canonical_code(G: Graph) -> tuple[int, int]:
    """Minimal upper-triangle adjacency bit string over all relabelings.

    Returned as ``(n, code)`` so graphs of different order never collide.
    """
    return G.n, _canonical(G)[0]


def canonical_form(G: Graph) -> Graph:
    _, perm = _canonical(G)
    # position k of the canonical labeling holds original vertex perm[k]
    return G.relabel({perm[k] + 1: k + 1 for k in range(G.n)})


def is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.num_edges != H.num_edges:
        return False
    if sorted(map(G.degree, G.vertices)) != sorted(map(H.degree, H.vertices)):
        return False
    return canonical_code(G) == canonical_code(H)


@lru_cache(maxsize=None)
def _all_classes(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0),)
    seen: dict[tuple[int, int], Graph] = {}
    for H in _all_classes(n - 1):
        for nbrs in range(1 << (n - 1)):
            G = Graph(n, list(H.edges) + [(v, n) for v in _bits(nbrs)])
            code = canonical_code(G)
            if code not in seen:
                seen[code] = canonical_form(G)
    return tuple(seen[c] for c in sorted(seen))


def enumerate_small_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """One canonical representative per isomorphism class on ``n`` vertices."""
    if not 1 <= n <= 7:
        raise ValueError("enumeration is limited to 1 <= n <= 7")
    for G in _all_classes(n):
        if not connected_only or G.is_connected():
            yield G


# ---------------------------------------------------------------------------
# composition and structure


def compose(G1: Graph, G2: Graph, mode: str = "join") -> Graph:
    """Join or disjoint union; ``G2`` is shifted onto ``n1+1..n1+n2``."""
    if mode not in ("join", "disjoint_union"):
        raise ValueError(f"unknown composition mode {mode!r}")
    n1 = G1.n
    edges = list(G1.edges) + [(u + n1, v + n1) for u, v in G2.edges]
    if mode == "join":
        edges += [(u, v + n1) for u in G1.vertices for v in G2.vertices]
    return Graph(n1 + G2.n, edges)


def join(*graphs: Graph) -> Graph:
    out = graphs[0]
    for H in graphs[1:]:
        out = compose(out, H, "join")
    return out


def disjoint_union(*graphs: Graph) -> Graph:
    out = graphs[0]
    for H in graphs[1:]:
        out = compose(out, H, "disjoint_union")
    return out


def _component_masks(masks: tuple[int, ...] | list[int], within: int) -> list[int]:
    parts = []
    left = within
    while left:
        seed = left & -left
        comp = frontier = seed
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= masks[v - 1]
            nxt &= within & ~comp
            comp |= nxt
            frontier = nxt
        parts.append(comp)
        left &= ~comp
    return parts


def components(G: Graph, of_complement: bool = False) -> list[frozenset[int]]:
    """Connected components (of G or of its complement), sorted by
    (size, smallest vertex)."""
    masks = G.masks
    if of_complement:
        full = G.full_mask
        masks = tuple(full & ~m & ~(1 << i) for i, m in enumerate(masks))
    parts = [frozenset(_bits(c)) for c in _component_masks(masks, G.full_mask)]
    return sorted(parts, key=lambda p: (len(p), min(p)))


def induced_subgraph(G: Graph, W: Iterable[int]) -> Graph:
    """Subgraph on ``W`` relabeled 1..|W| in increasing vertex order."""
    verts = sorted(set(W))
    if any(not 1 <= v <= G.n for v in verts):
        raise ValueError(f"vertex set {verts} is not contained in 1..{G.n}")
    index = {v: k + 1 for k, v in enumerate(verts)}
    return Graph(len(verts), ((index[u], index[v]) for u, v in G.edges
                              if u in index and v in index))


def strip_isolated(G: Graph) -> Graph:
    return induced_subgraph(G, [v for v in G.vertices if G.masks[v - 1]])


# ---------------------------------------------------------------------------
# measurements


def longest_induced_path_length(G: Graph) -> int:
    """Edge length of a longest induced path (exhaustive DFS)."""
    masks = G.masks
    best = 0

    def extend(last: int, used: int, blocked: int, length: int) -> None:
        # blocked = closed neighborhoods of every path vertex except ``last``
        nonlocal best
        if length > best:
            best = length
        if best == G.n - 1:
            return
        for v in _bits(masks[last - 1] & ~used & ~blocked):
            extend(v, used | 1 << (v - 1),
                   blocked | masks[last - 1] | 1 << (last - 1), length + 1)

    for s in G.vertices:
        extend(s, 1 << (s - 1), 0, 0)
    return best


def maximal_cliques(G: Graph) -> list[tuple[int, ...]]:
    """All inclusion-maximal cliques (Bron-Kerbosch with pivoting)."""
    masks = G.masks
    out: list[tuple[int, ...]] = []

    def expand(R: int, P: int, X: int) -> None:
        if not P and not X:
            out.append(tuple(_bits(R)))
            return
        pivot = max(_bits(P | X), key=lambda u: (masks[u - 1] & P).bit_count())
        for v in _bits(P & ~masks[pivot - 1]):
            bit = 1 << (v - 1)
            expand(R | bit, P & masks[v - 1], X & masks[v - 1])
            P &= ~bit
            X |= bit

    if G.n:
        expand(0, G.full_mask, 0)
    return sorted(out)


def maximal_clique_count(G: Graph) -> int:
    return len(maximal_cliques(G))


class WeaklyClosedResult(NamedTuple):
    weakly_closed: bool
    labeling: tuple[int, ...] | None  # labeling[k] = vertex that receives label k+1
    closed: bool
    closed_labeling: tuple[int, ...] | None


def _labeling_search(G: Graph, strong: bool) -> tuple[int, ...] | None:
    n = G.n
    adj = G.adjacent
    order: list[int] = []

    def ok(b: int, v: int) -> bool:
        # check every edge {order[a], v} with a < b against the labels in between
        for a in range(b - 1):
            u = order[a]
            if not adj(u, v):
                continue
            for k in range(a + 1, b):
                w = order[k]
                if strong:
                    if not (adj(u, w) and adj(w, v)):
                        return False
                elif not (adj(u, w) or adj(w, v)):
                    return False
        return True

    def place(used: int) -> bool:
        b = len(order)
        if b == n:
            return True
        for v in G.vertices:
            if used >> (v - 1) & 1 or not ok(b, v):
                continue
            order.append(v)
            if place(used | 1 << (v - 1)):
                return True
            order.pop()
        return False

    return tuple(order) if place(0) else None


def is_weakly_closed(G: Graph, cap: int = 10) -> WeaklyClosedResult:
    """Search for a weakly closed labeling (and, separately, a closed one).

    A labeling is weakly closed when for every edge {i, j} with j > i + 1 each
    k strictly between is adjacent to i or to j; closed asks for both.
    """
    if G.n > cap:
        raise ValueError(f"labeling search capped at n={cap}, got {G.n}")
    weak = _labeling_search(G, strong=False)
    strong = _labeling_search(G, strong=True) if weak is not None else None
    return WeaklyClosedResult(weak is not None, weak, strong is not None, strong)


def min_connected_dominating_set(G: Graph) -> tuple[int, ...]:
    """Lexicographically first minimum connected dominating set."""
    if G.n == 0 or not G.is_connected():
        raise ValueError("a connected dominating set needs a connected, non-empty graph")
    masks = G.masks
    full = G.full_mask
    for k in range(1, G.n + 1):
        for X in itertools.combinations(G.vertices, k):
            xmask = sum(1 << (v - 1) for v in X)
            dom = xmask
            for v in X:
                dom |= masks[v - 1]
            if dom != full:
                continue
            if len(_component_masks(masks, xmask)) == 1:
                return X
    raise AssertionError("unreachable: V(G) dominates itself")
