"""Exact linear algebra over GF(p) for the small matrices that show up in
graded pieces and boundary maps.

Rows are plain Python lists.  Over GF(2) rows may instead be packed into
ints, which is much faster for the 0/1 matrices of simplicial boundaries.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def rref(rows: Iterable[Sequence[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    M = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        row = M[r] = [(x * inv) % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], row)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Iterable[Sequence[int]], ncols: int, p: int) -> int:
    if p == 2:
        return rank_gf2(sum(1 << j for j, x in enumerate(r) if x % 2) for r in rows)
    return len(rref(rows, ncols, p)[1])


def nullspace(rows: Iterable[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {v : M v = 0} mod p."""
    R, pivots = rref(rows, ncols, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def rank_gf2(rows: Iterable[int]) -> int:
    """Rank of bit-packed rows over GF(2)."""
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)
