"""Discrete normal surfaces dual to Z/2 1-cocycles, and the slicing subcomplex.

A cocycle restricted to a tetrahedron is the cut function of a 2-colouring
of its four vertices, so each tetrahedron meets the surface in nothing, one
triangle (3+1 colouring), or one quadrilateral (2+2 colouring).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import gf2
from .cohomology import Cochain, _check, require_cocycle
from .errors import NotACutFunction, NotClosed
from .poset import LOCAL_PAIRS, FacePoset, FVector, _UnionFind

_PAIR_INDEX = {pair: i for i, pair in enumerate(LOCAL_PAIRS)}


def _pair(a: int, b: int) -> int:
    return _PAIR_INDEX[(a, b) if a < b else (b, a)]


@dataclass(frozen=True)
class TetPattern:
    kind: str  # "empty" | "triangle" | "quad"
    apex: Optional[int] = None
    partition: Optional[frozenset] = None  # frozenset of two frozensets

    def odd_pairs(self) -> set[tuple[int, int]]:
        if self.kind == "triangle":
            return {tuple(sorted((self.apex, j))) for j in range(4) if j != self.apex}
        if self.kind == "quad":
            a, b = (sorted(s) for s in self.partition)
            return {tuple(sorted((x, y))) for x in a for y in b}
        return set()

    def __str__(self) -> str:
        if self.kind == "triangle":
            return f"Triangle({self.apex})"
        if self.kind == "quad":
            a, b = sorted(sorted(s) for s in self.partition)
            return f"Quad({a[0]}{a[1]}|{b[0]}{b[1]})"
        return "Empty"


EMPTY = TetPattern("empty")


def _pattern_from_odd(odd: list[int]) -> TetPattern:
    """Pattern from the six parity bits of a tetrahedron, indexed by LOCAL_PAIRS."""
    colour = [0, odd[0], odd[1], odd[2]]
    for (a, b), bit in zip(LOCAL_PAIRS, odd):
        if colour[a] ^ colour[b] != bit:
            raise NotACutFunction("odd edges of a tetrahedron do not form a vertex cut")
    ones = [j for j in range(4) if colour[j]]
    if not ones:
        return EMPTY
    if len(ones) in (1, 3):
        side = ones if len(ones) == 1 else [j for j in range(4) if not colour[j]]
        return TetPattern("triangle", apex=side[0])
    rest = [j for j in range(4) if not colour[j]]
    return TetPattern("quad", partition=frozenset({frozenset(ones), frozenset(rest)}))


def _code(p: FacePoset, psi_bits: int, t: int) -> int:
    code = 0
    for k, e in enumerate(p.tet_edges[t]):
        code |= ((psi_bits >> e) & 1) << k
    return code


def tet_pattern(p: FacePoset, psi: Cochain, t: int) -> TetPattern:
    _check(p, psi, 1)
    pat = _PATTERNS[_code(p, psi.bits, t)]
    if pat is None:
        raise NotACutFunction(f"tetrahedron {t}: odd edges do not form a vertex cut")
    return pat


@dataclass(frozen=True)
class ComponentClass:
    chi: int
    orientable: bool
    genus: Optional[int]  # orientable components
    crosscaps: Optional[int]  # nonorientable components
    n_pieces: int

    @property
    def is_sphere(self) -> bool:
        return self.orientable and self.chi == 2


@dataclass(frozen=True)
class Piece:
    tet: int
    pattern: TetPattern
    # cyclic boundary: cycle[i] = (point, arc); the arc runs from that point to the next one
    cycle: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Surface:
    complex_id: str
    points: tuple[int, ...]  # odd edge ids
    arcs: dict  # triangle id -> (edge id, edge id)
    pieces: tuple[Piece, ...]
    arc_pieces: dict  # triangle id -> indices of the pieces it borders
    components: tuple[tuple[int, ...], ...]  # piece indices per component

    @property
    def chi(self) -> int:
        return len(self.points) - len(self.arcs) + len(self.pieces)

    def is_empty(self) -> bool:
        return not self.pieces

    def component_chi(self, comp: tuple[int, ...]) -> int:
        pts = set()
        arcs = set()
        for i in comp:
            for pt, arc in self.pieces[i].cycle:
                pts.add(pt)
                arcs.add(arc)
        return len(pts) - len(arcs) + len(comp)

    def dual_cochain(self) -> int:
        """Bits of the 1-cochain 'edge meets the surface'."""
        bits = 0
        for e in self.points:
            bits |= 1 << e
        return bits


def _cycle_template(pat: TetPattern) -> tuple[tuple[int, int], ...]:
    """Local (pair index, omitted vertex) for each (point, arc) of the piece boundary."""
    if pat.kind == "triangle":
        x = pat.apex
        y, z, w = (j for j in range(4) if j != x)
        pts = [(x, y), (x, z), (x, w)]
    else:
        x = 0
        y = next(j for j in range(1, 4) if frozenset({0, j}) in pat.partition)
        z, w = (j for j in range(1, 4) if j != y)
        pts = [(x, z), (x, w), (y, w), (y, z)]
    out = []
    for i, (a, b) in enumerate(pts):
        c, d = pts[(i + 1) % len(pts)]
        # the arc lies in the triangle spanned by the two crossed edges
        omitted = ({0, 1, 2, 3} - {a, b, c, d}).pop()
        out.append((_pair(a, b), omitted))
    return tuple(out)


def _build_tables():
    patterns: list[Optional[TetPattern]] = []
    templates: list[tuple[tuple[int, int], ...]] = []
    for code in range(64):
        try:
            pat = _pattern_from_odd([(code >> k) & 1 for k in range(6)])
        except NotACutFunction:
            patterns.append(None)
            templates.append(())
            continue
        patterns.append(pat)
        templates.append(_cycle_template(pat) if pat.kind != "empty" else ())
    return tuple(patterns), tuple(templates)


_PATTERNS, _TEMPLATES = _build_tables()


def require_closed(p: FacePoset) -> None:
    if p.dimension != 3 or not all(len(s) == 2 for s in p.facet_slots):
        raise NotClosed("surface operations need a closed 3-dimensional complex")


def extract_surface(p: FacePoset, psi: Cochain) -> Surface:
    require_closed(p)
    require_cocycle(p, psi)
    bits = psi.bits
    pieces = []
    for t, f in enumerate(p.faces[3]):
        code = _code(p, bits, t)
        pat = _PATTERNS[code]
        if pat is None:
            raise NotACutFunction(f"tetrahedron {t}: odd edges do not form a vertex cut")
        if pat.kind != "empty":
            edges = p.tet_edges[t]
            cycle = tuple((edges[pi], f.boundary[om]) for pi, om in _TEMPLATES[code])
            pieces.append(Piece(t, pat, cycle))
    arcs: dict[int, tuple[int, int]] = {}
    arc_pieces: dict[int, list[int]] = {}
    for idx, piece in enumerate(pieces):
        n = len(piece.cycle)
        for i, (pt, arc) in enumerate(piece.cycle):
            arcs[arc] = (pt, piece.cycle[(i + 1) % n][0])
            arc_pieces.setdefault(arc, []).append(idx)
    uf = _UnionFind(len(pieces))
    by_point: dict[int, int] = {}
    for arc, idxs in arc_pieces.items():
        for j in idxs[1:]:
            uf.union(idxs[0], j)
    for idx, piece in enumerate(pieces):
        for pt, _ in piece.cycle:
            if pt in by_point:
                uf.union(by_point[pt], idx)
            else:
                by_point[pt] = idx
    groups: dict[int, list[int]] = {}
    for idx in range(len(pieces)):
        groups.setdefault(uf.find(idx), []).append(idx)
    return Surface(
        complex_id=p.digest,
        points=tuple(gf2.bits(psi.bits)),
        arcs=dict(sorted(arcs.items())),
        pieces=tuple(pieces),
        arc_pieces={a: tuple(v) for a, v in sorted(arc_pieces.items())},
        components=tuple(tuple(g) for g in sorted(groups.values())),
    )


def _arc_direction(piece: Piece, arc: int) -> int:
    n = len(piece.cycle)
    for i, (pt, a) in enumerate(piece.cycle):
        if a == arc:
            nxt = piece.cycle[(i + 1) % n][0]
            return 1 if pt < nxt else -1
    raise KeyError(arc)


def _orientable(s: Surface, comp: tuple[int, ...], rng: Optional[random.Random]) -> bool:
    """Try to orient the pieces so that neighbours traverse each shared arc oppositely."""
    members = set(comp)
    start = rng.choice(comp) if rng else comp[0]
    sign = {start: 1}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        arcs = [a for _, a in s.pieces[i].cycle]
        if rng:
            rng.shuffle(arcs)
        for arc in arcs:
            for j in s.arc_pieces[arc]:
                if j == i or j not in members:
                    continue
                want = -sign[i] * _arc_direction(s.pieces[i], arc) * _arc_direction(s.pieces[j], arc)
                if j in sign:
                    if sign[j] != want:
                        return False
                else:
                    sign[j] = want
                    queue.append(j)
    return True


def classify_components(s: Surface, rng: Optional[random.Random] = None) -> list[ComponentClass]:
    """Euler characteristic and orientability per component.

    ``rng`` randomises the traversal order; the verdict must not depend on it.
    """
    out = []
    for comp in s.components:
        chi = s.component_chi(comp)
        orientable = _orientable(s, comp, rng)
        if orientable:
            genus = (2 - chi) // 2 if chi % 2 == 0 else None
            out.append(ComponentClass(chi, True, genus, None, len(comp)))
        else:
            out.append(ComponentClass(chi, False, None, 2 - chi, len(comp)))
    return out


@dataclass(frozen=True)
class SlicingSubcomplex:
    """Faces of the parent containing no odd edge of psi."""

    parent_id: str
    faces: tuple[tuple[int, ...], ...]
    f_vector: FVector
    chi: int
    n_components: int


def slicing_subcomplex(p: FacePoset, psi: Cochain) -> SlicingSubcomplex:
    _check(p, psi, 1)
    odd = psi.bits
    faces = tuple(
        tuple(i for i, m in enumerate(masks) if not m & odd) for masks in p.edge_masks
    )
    fv = FVector(len(f) for f in faces)
    uf = _UnionFind(p.n_vertices)
    if p.dimension >= 1:
        for e in faces[1]:
            a, b = p.faces[1][e].vertices
            uf.union(a, b)
    n_comp = len({uf.find(v) for v in range(p.n_vertices)})
    return SlicingSubcomplex(p.digest, faces, fv, fv.chi, n_comp)


def slicing_chi(p: FacePoset, psi_bits: int) -> int:
    """Euler characteristic of the slicing subcomplex, without materialising it."""
    chi = 0
    for k, masks in enumerate(p.edge_masks):
        n = sum(1 for m in masks if not m & psi_bits)
        chi += n if k % 2 == 0 else -n
    return chi


def cross_check(p: FacePoset, psi: Cochain, surface: Optional[Surface] = None) -> bool:
    """Cell-count chi of the surface equals chi(slicing subcomplex) - chi(complex)."""
    s = surface if surface is not None else extract_surface(p, psi)
    return s.chi == slicing_chi(p, psi.bits) - p.f_vector.chi
