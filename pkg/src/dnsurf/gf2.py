"""GF(2) linear algebra on Python int bitsets (bit j = column j)."""

from __future__ import annotations

from typing import Iterable


class XorBasis:
    """Fully reduced basis keyed by leading (highest) bit.

    Reducing a vector against it yields the numerically smallest member of
    its coset modulo the span.
    """

    def __init__(self, vectors: Iterable[int] = ()):
        self.rows: dict[int, int] = {}
        for v in vectors:
            self.insert(v)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: int) -> int:
        for lead in sorted(self.rows, reverse=True):
            if (v >> lead) & 1:
                v ^= self.rows[lead]
        return v

    def insert(self, v: int) -> int:
        """Add ``v``; return its reduced residue (0 if already in the span)."""
        v = self.reduce(v)
        if not v:
            return 0
        lead = v.bit_length() - 1
        for k, row in self.rows.items():
            if (row >> lead) & 1:
                self.rows[k] = row ^ v
        self.rows[lead] = v
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def basis(self) -> list[int]:
        return [self.rows[k] for k in sorted(self.rows)]


def rank(rows: Iterable[int]) -> int:
    return len(XorBasis(rows))


def nullspace(rows: list[int], n_cols: int) -> list[int]:
    """Basis of {x : popcount(row & x) even for every row}."""
    work = list(rows)
    pivots: list[int] = []
    r = 0
    for col in range(n_cols):
        pivot = None
        for i in range(r, len(work)):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and (work[i] >> col) & 1:
                work[i] ^= work[r]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        x = 1 << free
        for i, col in enumerate(pivots):
            if (work[i] >> free) & 1:
                x |= 1 << col
        basis.append(x)
    return basis


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> Iterable[int]:
    """Indices of set bits, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low
