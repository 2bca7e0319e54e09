"""Graded Betti numbers of monomial ideals through Hochster's formula.

For a squarefree ideal ``I`` with Stanley-Reisner complex ``D``,

    beta_{i,sigma}(I) = dim  H~_{|sigma|-i-2}(D restricted to sigma; GF(p)),

and only squarefree degrees ``sigma`` in the lcm lattice of the generators can
contribute.  Non-squarefree ideals are polarized first, which keeps the graded
Betti table.

The restricted complexes are shrunk with a sequence of element matchings
(``F <-> F + v`` for each vertex ``v`` in turn), which is an acyclic Morse
matching on the augmented chain complex.  When the surviving critical cells of
a restriction never sit in two adjacent dimensions the Morse differential is
zero and the counts are the homology; otherwise the restriction is recomputed
exactly from its boundary matrices.  All restrictions are processed at once
as flat numpy arrays.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .groebner import Monomial, MonomialIdeal
from .linalg import is_prime, rank, rank_gf2

__all__ = [
    "SimplicialComplex",
    "BettiTable",
    "DEFAULT_VARIABLE_CAP",
    "polarize",
    "stanley_reisner",
    "reduced_homology_ranks",
    "betti_table",
    "taylor_betti_table",
    "invariants_from_betti",
]

DEFAULT_VARIABLE_CAP = 16


def _mask_bits(mask: int) -> list[int]:
    return [k for k in range(mask.bit_length()) if mask >> k & 1]


def _to_mask(face: Iterable[int]) -> int:
    return sum(1 << v for v in face)


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex on the ground set ``0..m-1`` given by its facets.

    ``facets == ()`` is the void complex; ``facets == (frozenset(),)`` is the
    complex whose only face is the empty set.
    """

    m: int
    facets: tuple[frozenset[int], ...]

    @classmethod
    def from_faces(cls, m: int, faces: Iterable[Iterable[int]]) -> SimplicialComplex:
        masks = sorted({_to_mask(f) for f in faces}, key=lambda x: -x.bit_count())
        maximal: list[int] = []
        for f in masks:
            if not any(f & g == f for g in maximal):
                maximal.append(f)
        return cls(m, tuple(sorted((frozenset(_mask_bits(f)) for f in maximal),
                                   key=lambda s: (len(s), sorted(s)))))

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def face_masks(self) -> list[int]:
        out = set()
        for f in self.facets:
            fm = _to_mask(f)
            sub = fm
            while True:
                out.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & fm
        return sorted(out)

    def faces(self) -> list[frozenset[int]]:
        return [frozenset(_mask_bits(f)) for f in self.face_masks()]

    def induced(self, W: Iterable[int]) -> SimplicialComplex:
        wm = _to_mask(W)
        return SimplicialComplex.from_faces(self.m, (_mask_bits(f & wm) for f in map(_to_mask, self.facets)))


@dataclass
class BettiTable:
    """Graded Betti numbers ``beta_{i,j}`` of an ideal over GF(p)."""

    characteristic: int
    entries: dict = field(default_factory=dict)  # (i, j) -> rank

    @property
    def reg(self) -> int | None:
        return max((j - i for (i, j), r in self.entries.items() if r), default=None)

    @property
    def pd(self) -> int | None:
        return max((i for (i, j), r in self.entries.items() if r), default=None)

    def total(self, i: int) -> int:
        return sum(r for (a, _), r in self.entries.items() if a == i)

    def to_json(self) -> dict:
        return {
            "characteristic": self.characteristic,
            "entries": [[i, j, r] for (i, j), r in sorted(self.entries.items()) if r],
            "reg": self.reg,
            "pd": self.pd,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __str__(self) -> str:
        if not self.entries:
            return "(zero ideal)"
        pd = self.pd
        rows = sorted({j - i for (i, j) in self.entries})
        lines = ["      " + " ".join(f"{i:>4}" for i in range(pd + 1))]
        for s in rows:
            cells = [self.entries.get((i, i + s), 0) for i in range(pd + 1)]
            lines.append(f"{s:>4}: " + " ".join(f"{c if c else '.':>4}" for c in cells))
        return "\n".join(lines)


def polarize(I: MonomialIdeal) -> tuple[MonomialIdeal, list[tuple[int, int]]]:
    """Squarefree polarization; also returns ``(variable, power)`` per new variable."""
    width = [max((g[k] for g in I.gens), default=0) for k in range(I.nvars)]
    labels = [(k, a) for k in range(I.nvars) for a in range(1, width[k] + 1)]
    index = {lab: c for c, lab in enumerate(labels)}
    gens = []
    for g in I.gens:
        e = [0] * len(labels)
        for k, a in enumerate(g):
            for b in range(1, a + 1):
                e[index[(k, b)]] = 1
        gens.append(tuple(e))
    return MonomialIdeal.from_generators(gens, len(labels)), labels


def stanley_reisner(I: MonomialIdeal) -> SimplicialComplex:
    """Complex whose faces are the squarefree supports outside ``I``."""
    if not I.is_squarefree:
        raise ValueError("Stanley-Reisner complexes need a squarefree ideal")
    m = I.nvars
    gens = [_to_mask(k for k, e in enumerate(g) if e) for g in I.gens]
    if 0 in gens:
        return SimplicialComplex(m, ())
    faces = _face_masks(gens, m)
    table = np.zeros(1 << m, dtype=bool)
    table[faces] = True
    facets = []
    for f in faces.tolist():
        if not any(table[f | 1 << v] for v in range(m) if not f >> v & 1):
            facets.append(frozenset(_mask_bits(f)))
    return SimplicialComplex(m, tuple(sorted(facets, key=lambda s: (len(s), sorted(s)))))


def _face_masks(gen_masks: Sequence[int], m: int) -> np.ndarray:
    allm = np.arange(1 << m, dtype=np.int64)
    nonface = np.zeros(1 << m, dtype=bool)
    for g in gen_masks:
        nonface |= (allm & g) == g
    return allm[~nonface]


# ---------------------------------------------------------------------------
# exact homology


def _boundary_rank(upper: Sequence[int], lower_index: dict[int, int], p: int) -> int:
    """Rank of the boundary map from faces ``upper`` to their facets."""
    if not upper or not lower_index:
        return 0
    if p == 2:
        rows = []
        for f in upper:
            r = 0
            for v in _mask_bits(f):
                r |= 1 << lower_index[f ^ (1 << v)]
            rows.append(r)
        return rank_gf2(rows)
    pivots: dict[int, dict[int, int]] = {}
    for f in upper:
        row = {}
        for t, v in enumerate(_mask_bits(f)):
            row[lower_index[f ^ (1 << v)]] = 1 if t % 2 == 0 else p - 1
        while row:
            lead = max(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], p - 2, p)
                pivots[lead] = {c: (x * inv) % p for c, x in row.items()}
                break
            f_ = row[lead]
            for c, x in piv.items():
                y = (row.get(c, 0) - f_ * x) % p
                if y:
                    row[c] = y
                else:
                    row.pop(c, None)
    return len(pivots)


def _reduced_homology_of_masks(face_masks: Iterable[int], p: int) -> list[int]:
    by_dim: dict[int, list[int]] = defaultdict(list)
    for f in face_masks:
        by_dim[f.bit_count() - 1].append(f)
    if not by_dim:
        return []
    top = max(by_dim)
    index = {k: {f: c for c, f in enumerate(sorted(by_dim[k]))} for k in by_dim}
    ranks = {k: _boundary_rank(sorted(by_dim.get(k, [])), index.get(k - 1, {}), p)
             for k in range(0, top + 1)}
    out = []
    for k in range(-1, top + 1):
        out.append(len(by_dim.get(k, [])) - ranks.get(k, 0) - ranks.get(k + 1, 0))
    return out


def reduced_homology_ranks(K: SimplicialComplex, p: int = 2) -> list[int]:
    """Ranks of reduced homology H~_{-1}, ..., H~_{dim} over GF(p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return _reduced_homology_of_masks(K.face_masks(), p)


# ---------------------------------------------------------------------------
# Hochster


def _lcm_lattice(gen_masks: Sequence[int]) -> list[int]:
    L = {0}
    for g in gen_masks:
        L |= {x | g for x in L}
    L.discard(0)
    return sorted(L)


def _restricted_faces(faces: np.ndarray, sigmas: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Flat (sigma index, face) pairs for every face contained in every sigma."""
    idx_parts, face_parts = [], []
    for s_idx, s in enumerate(sigmas.tolist()):
        sub = faces[(faces & ~s) == 0]
        idx_parts.append(np.full(len(sub), s_idx, dtype=np.int64))
        face_parts.append(sub)
    return np.concatenate(idx_parts), np.concatenate(face_parts)


def _morse_critical(sidx: np.ndarray, fmask: np.ndarray, sigmas: np.ndarray, m: int):
    keys = (sidx << m) | fmask  # sorted: sidx ascending, faces ascending within
    for v in range(m):
        bit = 1 << v
        cand = np.flatnonzero(((fmask & bit) == 0) & ((sigmas[sidx] & bit) != 0))
        if len(cand) == 0:
            continue
        partner = keys[cand] | bit
        pos = np.searchsorted(keys, partner)
        pos_c = np.minimum(pos, len(keys) - 1)
        hit = keys[pos_c] == partner
        keep = np.ones(len(keys), dtype=bool)
        keep[cand[hit]] = False
        keep[pos_c[hit]] = False
        keys, sidx, fmask = keys[keep], sidx[keep], fmask[keep]
    return sidx, fmask


def _hochster_squarefree(I: MonomialIdeal, p: int) -> dict[tuple[int, int], int]:
    m = I.nvars
    gens = [_to_mask(k for k, e in enumerate(g) if e) for g in I.gens]
    faces = _face_masks(gens, m)
    sigmas = np.array(_lcm_lattice(gens), dtype=np.int64)
    sidx, fmask = _restricted_faces(faces, sigmas, m)
    crit_s, crit_f = _morse_critical(sidx, fmask, sigmas, m)
    dims = np.bitwise_count(crit_f).astype(np.int64) - 1

    per_sigma: dict[int, Counter] = defaultdict(Counter)
    for s, k in zip(crit_s.tolist(), dims.tolist()):
        per_sigma[s][k] += 1

    entries: Counter = Counter()
    for s, counts in per_sigma.items():
        sigma = int(sigmas[s])
        size = sigma.bit_count()
        if any(k + 1 in counts for k in counts):
            sub = faces[(faces & ~sigma) == 0].tolist()
            homology = {k - 1: r for k, r in enumerate(_reduced_homology_of_masks(sub, p)) if r}
        else:
            homology = counts
        for k, r in homology.items():
            entries[(size - k - 2, size)] += r
    return dict(entries)


def betti_table(I: MonomialIdeal, p: int = 2, cap: int = DEFAULT_VARIABLE_CAP) -> BettiTable:
    """Graded Betti table of the ideal ``I`` over GF(p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    table = BettiTable(p)
    if not I.gens:
        return table
    if any(sum(g) == 0 for g in I.gens):
        table.entries[(0, 0)] = 1
        return table
    J = I if I.is_squarefree else polarize(I)[0]
    if J.nvars > cap:
        raise ValueError(f"{J.nvars} variables exceed the Hochster cap {cap}")
    # polarization preserves total degrees, so the table needs no translation
    table.entries = dict(sorted(_hochster_squarefree(J, p).items()))
    return table


def taylor_betti_table(I: MonomialIdeal, p: int = 2) -> BettiTable:
    """Betti table from the homology of the Taylor complex tensored with k.

    Independent of Hochster's formula; exponential in the number of
    generators, so meant for small ideals.
    """
    gens = list(I.gens)
    by_lcm: dict[Monomial, list[tuple[int, ...]]] = defaultdict(list)
    for r in range(1, len(gens) + 1):
        for A in itertools.combinations(range(len(gens)), r):
            L = tuple(max(gens[a][k] for a in A) for k in range(I.nvars))
            by_lcm[L].append(A)
    table = BettiTable(p)
    for L, subsets in by_lcm.items():
        # after tensoring with k only faces with the same lcm survive
        by_size: dict[int, list[tuple[int, ...]]] = defaultdict(list)
        for A in subsets:
            by_size[len(A)].append(A)
        rank_of = {}
        for r, upper in by_size.items():
            lower = {A: c for c, A in enumerate(by_size.get(r - 1, []))}
            rows = []
            for A in upper:
                row = [0] * len(lower)
                for t in range(len(A)):
                    B = A[:t] + A[t + 1:]
                    if B in lower:
                        row[lower[B]] = 1 if t % 2 == 0 else p - 1
                rows.append(row)
            rank_of[r] = rank(rows, len(lower), p) if lower else 0
        for r in by_size:
            h = len(by_size[r]) - rank_of.get(r, 0) - rank_of.get(r + 1, 0)
            if h:
                # Taylor face of size r sits in homological degree r of S/I, r - 1 of I
                table.entries[(r - 1, sum(L))] = table.entries.get((r - 1, sum(L)), 0) + h
    table.entries = dict(sorted(table.entries.items()))
    return table


def invariants_from_betti(B: BettiTable) -> dict[str, int]:
    if not any(B.entries.values()):
        raise ValueError("empty Betti table (zero ideal)")
    pd = B.pd
    return {"reg": B.reg, "pd": pd, "last_total_rank": B.total(pd)}
