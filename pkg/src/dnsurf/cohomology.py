"""Z/2 cochains on a face poset: coboundaries, H^1, and cohomology-class enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import gf2
from .errors import ComplexMismatch, FormatError, NotACocycle
from .poset import FacePoset


@dataclass(frozen=True)
class Cochain:
    """Z/2 values on the k-faces of one complex; bit i is the value on face i."""

    dimension: int
    bits: int
    complex_id: str
    size: int

    def __add__(self, other: "Cochain") -> "Cochain":
        if (other.complex_id, other.dimension) != (self.complex_id, self.dimension):
            raise ComplexMismatch("cochains live on different complexes or dimensions")
        return Cochain(self.dimension, self.bits ^ other.bits, self.complex_id, self.size)

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def odd(self) -> list[int]:
        """Face ids where the cochain is 1 (the psi-odd edges for a 1-cochain)."""
        return list(gf2.bits(self.bits))

    def to_hex(self) -> str:
        width = max(1, (self.size + 3) // 4)
        return f"C{self.dimension}:{self.complex_id}:{self.bits:0{width}x}"

    @classmethod
    def from_hex(cls, text: str, p: FacePoset, dimension: int = 1) -> "Cochain":
        """Parse ``C<k>:<hash>:<hex>`` or a bare hex string relative to ``p``."""
        text = text.strip()
        if ":" in text:
            try:
                head, cid, digits = text.split(":")
                dimension = int(head.lstrip("Cc"))
            except ValueError as exc:
                raise FormatError(f"malformed cochain {text!r}") from exc
            if cid != p.digest:
                raise ComplexMismatch(f"cochain belongs to complex {cid}, not {p.digest}")
        else:
            digits = text
        try:
            value = int(digits, 16)
        except ValueError as exc:
            raise FormatError(f"malformed cochain {text!r}") from exc
        size = len(p.faces[dimension])
        if value >> size:
            raise FormatError(f"cochain has bits beyond the {size} faces of dimension {dimension}")
        return cls(dimension, value, p.digest, size)


def cochain(p: FacePoset, dimension: int, faces=()) -> Cochain:
    """Indicator cochain of the given face ids."""
    bits = 0
    for f in faces:
        bits ^= 1 << f
    return Cochain(dimension, bits, p.digest, len(p.faces[dimension]))


def zero(p: FacePoset, dimension: int = 1) -> Cochain:
    return cochain(p, dimension)


def _check(p: FacePoset, c: Cochain, dimension: int) -> None:
    if c.complex_id != p.digest or c.dimension != dimension:
        raise ComplexMismatch(f"expected a {dimension}-cochain on complex {p.digest}")


def _vertex_columns(p: FacePoset) -> list[int]:
    """delta^0 of each vertex indicator, as an edge bitmask."""
    cols = [0] * p.n_vertices
    for e, f in enumerate(p.faces[1]):
        for v in f.vertices:
            cols[v] ^= 1 << e
    return cols


def coboundary0(p: FacePoset, u: Cochain) -> Cochain:
    _check(p, u, 0)
    cols = _vertex_columns(p)
    bits = 0
    for v in gf2.bits(u.bits):
        bits ^= cols[v]
    return Cochain(1, bits, p.digest, len(p.faces[1]))


def coboundary1(p: FacePoset, psi: Cochain) -> Cochain:
    _check(p, psi, 1)
    bits = 0
    x = psi.bits
    for t, m in enumerate(p.edge_masks[2]):
        if (m & x).bit_count() & 1:
            bits |= 1 << t
    return Cochain(2, bits, p.digest, len(p.faces[2]))


def is_cocycle(p: FacePoset, psi: Cochain) -> bool:
    _check(p, psi, 1)
    if p.dimension < 2:
        return True
    x = psi.bits
    return not any((m & x).bit_count() & 1 for m in p.edge_masks[2])


def require_cocycle(p: FacePoset, psi: Cochain) -> None:
    if not is_cocycle(p, psi):
        raise NotACocycle("1-cochain is not a cocycle")


@dataclass(frozen=True)
class CohomologyBasis:
    dimension: int
    representatives: tuple[Cochain, ...]
    kernel_dim0: int  # dim ker delta^0 = number of components


def _coboundary_span(p: FacePoset) -> gf2.XorBasis:
    return gf2.XorBasis(_vertex_columns(p))


def h1(p: FacePoset) -> CohomologyBasis:
    """Basis of H^1(p; Z/2).

    Each representative is the smallest bit pattern (edge 0 least significant)
    in its coset modulo the coboundaries and the other representatives.
    """
    n_edges = len(p.faces[1]) if p.dimension >= 1 else 0
    if p.dimension >= 2:
        rows = [sum(1 << e for e in f.boundary) for f in p.faces[2]]
        kernel = gf2.nullspace(rows, n_edges)
    else:
        kernel = [1 << e for e in range(n_edges)]
    image = _coboundary_span(p)
    rank0 = len(image)
    reps = _complement(image, kernel)
    dim = len(kernel) - rank0
    assert dim == len(reps)
    return CohomologyBasis(
        dim,
        tuple(Cochain(1, r, p.digest, n_edges) for r in reps),
        p.n_vertices - rank0,
    )


def _complement(image: gf2.XorBasis, kernel: list[int]) -> list[int]:
    # residues carry no bits at image leads, so neither do their combinations
    return gf2.XorBasis(image.reduce(z) for z in kernel).basis()


def same_class(p: FacePoset, psi1: Cochain, psi2: Cochain) -> bool:
    require_cocycle(p, psi1)
    require_cocycle(p, psi2)
    return _coboundary_span(p).contains(psi1.bits ^ psi2.bits)


def free_vertices(p: FacePoset) -> list[int]:
    """Vertices left unpinned: all but the lowest-id vertex of each component."""
    comp = p.components
    return [v for v in range(p.n_vertices) if comp[v] != v]


def class_size(p: FacePoset) -> int:
    return 1 << len(free_vertices(p))


def iter_class_bits(p: FacePoset, sigma_bits: int, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, int]]:
    """Yield ``(u, sigma + delta^0 u)`` bit patterns for u in [start, stop)."""
    cols = _vertex_columns(p)
    free_cols = [cols[v] for v in free_vertices(p)]
    total = 1 << len(free_cols)
    stop = total if stop is None else min(stop, total)
    for u in range(start, stop):
        bits = sigma_bits
        x = u
        j = 0
        while x:
            if x & 1:
                bits ^= free_cols[j]
            x >>= 1
            j += 1
        yield u, bits


def enumerate_class(p: FacePoset, sigma: Cochain) -> Iterator[Cochain]:
    """Every cocycle cohomologous to ``sigma``, each exactly once."""
    require_cocycle(p, sigma)
    n_edges = len(p.faces[1])
    for _, bits in iter_class_bits(p, sigma.bits):
        yield Cochain(1, bits, p.digest, n_edges)
