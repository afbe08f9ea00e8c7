"""Simplicial posets (Boolean cell complexes): construction, validation, queries.

Faces are stored per dimension. A k-face records the ids of its k+1 boundary
(k-1)-faces and its k+1 global vertex ids; entry i of ``boundary`` is the face
obtained by deleting vertex i. For valid posets vertex tuples are sorted by
global id, which makes the simplicial identities hold by construction of the
ordering (they are still checked by :func:`validate`).
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, NamedTuple, Optional, Sequence

from .errors import (
    FixedFace,
    NonInvolutiveGluing,
    NotAnAutomorphism,
    NotASimplicialPoset,
    NotVertexDetermined,
    SelfGluedFace,
    UnknownVertex,
)


class Face(NamedTuple):
    boundary: tuple[int, ...]
    vertices: tuple[int, ...]


class FVector(tuple):
    """Face counts (f_0, ..., f_d)."""

    @property
    def dimension(self) -> int:
        return len(self) - 1

    @property
    def chi(self) -> int:
        return sum((-1) ** j * f for j, f in enumerate(self))


Gluing = Optional[tuple[int, int, tuple[int, ...]]]


@dataclass(frozen=True)
class GluingSpec:
    """Facet-gluing description of a pure complex.

    ``gluings[t][i]`` is ``None`` (boundary) or ``(t2, i2, perm)`` where
    ``perm`` maps local vertex j of facet t to local vertex ``perm[j]`` of
    facet t2, and sends the omitted vertex i to the omitted vertex i2.
    """

    n_facets: int
    gluings: tuple[tuple[Gluing, ...], ...]
    dimension: int = 3

    def __post_init__(self):
        d = self.dimension
        object.__setattr__(
            self,
            "gluings",
            tuple(
                tuple(None if g is None else (int(g[0]), int(g[1]), tuple(int(x) for x in g[2])) for g in row)
                for row in self.gluings
            ),
        )
        if len(self.gluings) != self.n_facets:
            raise NonInvolutiveGluing(f"expected {self.n_facets} gluing rows, got {len(self.gluings)}")
        for t, row in enumerate(self.gluings):
            if len(row) != d + 1:
                raise NonInvolutiveGluing(f"facet {t} has {len(row)} face slots, expected {d + 1}")
            for i, g in enumerate(row):
                if g is None:
                    continue
                t2, i2, perm = g
                if (t2, i2) == (t, i):
                    raise SelfGluedFace(f"face {i} of facet {t} is glued to itself")
                if not 0 <= t2 < self.n_facets or not 0 <= i2 <= d:
                    raise NonInvolutiveGluing(f"facet {t} face {i} points outside the complex")
                if sorted(perm) != list(range(d + 1)) or perm[i] != i2:
                    raise NonInvolutiveGluing(f"facet {t} face {i}: bad vertex map {perm}")
                back = self.gluings[t2][i2]
                inverse = tuple(perm.index(j) for j in range(d + 1))
                if back is None or back[0] != t or back[1] != i or tuple(back[2]) != inverse:
                    raise NonInvolutiveGluing(f"gluing of facet {t} face {i} is not matched by its partner")

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "n_facets": self.n_facets,
            "gluings": [[None if g is None else [g[0], g[1], list(g[2])] for g in row] for row in self.gluings],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GluingSpec":
        return cls(
            n_facets=data["n_facets"],
            gluings=tuple(tuple(None if g is None else (g[0], g[1], tuple(g[2])) for g in row) for row in data["gluings"]),
            dimension=data.get("dimension", 3),
        )


@dataclass(frozen=True, eq=False)
class FacePoset:
    faces: tuple[tuple[Face, ...], ...]
    gluing_spec: Optional[GluingSpec] = field(default=None, compare=False)

    def __eq__(self, other):
        return isinstance(other, FacePoset) and self.faces == other.faces

    def __hash__(self):
        return hash(self.faces)

    @property
    def dimension(self) -> int:
        return len(self.faces) - 1

    @property
    def n_vertices(self) -> int:
        return len(self.faces[0])

    def __repr__(self) -> str:
        return f"FacePoset(dim={self.dimension}, f={tuple(self.f_vector)})"

    @cached_property
    def f_vector(self) -> FVector:
        return FVector(len(fs) for fs in self.faces)

    @cached_property
    def digest(self) -> str:
        """Short content hash; identifies the complex in cochain headers."""
        payload = json.dumps([[[list(f.boundary), list(f.vertices)] for f in fs] for fs in self.faces], separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def subface(self, k: int, fid: int, keep: Iterable[int]) -> int:
        """Id of the subface of k-face ``fid`` spanned by local positions ``keep``."""
        keep = set(keep)
        drop = sorted(set(range(k + 1)) - keep, reverse=True)
        for pos in drop:
            fid = self.faces[k][fid].boundary[pos]
            k -= 1
        return fid

    @cached_property
    def edge_masks(self) -> tuple[tuple[int, ...], ...]:
        """Per face, bitmask over edge ids of the edges it contains."""
        out: list[tuple[int, ...]] = [tuple(0 for _ in self.faces[0])]
        if self.dimension >= 1:
            out.append(tuple(1 << e for e in range(len(self.faces[1]))))
        for k in range(2, self.dimension + 1):
            prev = out[-1]
            row = []
            for f in self.faces[k]:
                m = 0
                for b in f.boundary:
                    m |= prev[b]
                row.append(m)
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def components(self) -> tuple[int, ...]:
        """Component label (lowest vertex id in the component) for each vertex."""
        uf = _UnionFind(self.n_vertices)
        if self.dimension >= 1:
            for f in self.faces[1]:
                uf.union(f.vertices[0], f.vertices[1])
        # union keeps the smaller root, so each root is its component's lowest vertex
        return tuple(uf.find(v) for v in range(self.n_vertices))

    @property
    def n_components(self) -> int:
        return len(set(self.components))

    @cached_property
    def facet_slots(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each (d-1)-face, the (facet, local index) slots it occupies."""
        d = self.dimension
        if d < 1:
            return ()
        slots: list[list[tuple[int, int]]] = [[] for _ in self.faces[d - 1]]
        for t, f in enumerate(self.faces[d]):
            for i, b in enumerate(f.boundary):
                slots[b].append((t, i))
        return tuple(tuple(s) for s in slots)

    @cached_property
    def tet_edges(self) -> tuple[tuple[int, ...], ...]:
        """For each tetrahedron, edge ids indexed like :data:`LOCAL_PAIRS`."""
        return tuple(tuple(self.subface(3, t, pair) for pair in LOCAL_PAIRS) for t in range(len(self.faces[3])))

    def is_vertex_determined(self) -> bool:
        for fs in self.faces:
            seen = set()
            for f in fs:
                key = frozenset(f.vertices)
                if key in seen or len(key) != len(f.vertices):
                    return False
                seen.add(key)
        return True


LOCAL_PAIRS = tuple(itertools.combinations(range(4), 2))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def _assemble(
    d: int,
    n_facets: int,
    glue: Callable[[Callable[[int, int, int, int], None]], None],
    gluing_spec: Optional[GluingSpec] = None,
) -> FacePoset:
    """Face lattice of n_facets d-simplices modulo the identifications made by ``glue``.

    ``glue(union)`` is called once and must call ``union(t, S, t2, S2)`` for
    every pair of (facet, local-vertex-bitmask) cells to be identified.
    """
    width = 1 << (d + 1)
    uf = _UnionFind(n_facets * width)

    def union(t: int, s: int, t2: int, s2: int) -> None:
        uf.union(t * width + s, t2 * width + s2)

    glue(union)

    def sort_key(s: int) -> tuple[int, ...]:
        return tuple(j for j in range(d + 1) if (s >> j) & 1)

    classes: dict[int, tuple[int, int]] = {}
    for t in range(n_facets):
        for s in range(1, width):
            root = uf.find(t * width + s)
            cand = (t, s)
            best = classes.get(root)
            if best is None or (best[0], sort_key(best[1])) > (t, sort_key(s)):
                classes[root] = cand
    by_dim: list[list[tuple[int, int, int]]] = [[] for _ in range(d + 1)]
    for root, (t, s) in classes.items():
        by_dim[bin(s).count("1") - 1].append((t, s, root))
    for row in by_dim:
        row.sort(key=lambda x: (x[0], sort_key(x[1])))
    ids: dict[int, int] = {}
    for row in by_dim:
        for idx, (_, _, root) in enumerate(row):
            ids[root] = idx

    def cell_id(t: int, s: int) -> int:
        return ids[uf.find(t * width + s)]

    faces: list[tuple[Face, ...]] = []
    for k, row in enumerate(by_dim):
        out = []
        for t, s, _ in row:
            local = list(sort_key(s))
            verts = [cell_id(t, 1 << j) for j in local]
            if len(set(verts)) == len(verts):
                order = sorted(range(len(local)), key=lambda i: verts[i])
                local = [local[i] for i in order]
                verts = [verts[i] for i in order]
            boundary = tuple(cell_id(t, s & ~(1 << j)) for j in local) if k > 0 else ()
            out.append(Face(boundary, tuple(verts)))
        faces.append(tuple(out))
    return FacePoset(tuple(faces), gluing_spec)


def build_complex(spec: GluingSpec) -> FacePoset:
    d = spec.dimension

    def glue(union):
        for t, row in enumerate(spec.gluings):
            for i, g in enumerate(row):
                if g is None:
                    continue
                t2, _, perm = g
                others = [j for j in range(d + 1) if j != i]
                for r in range(1, d + 1):
                    for sub in itertools.combinations(others, r):
                        s = sum(1 << j for j in sub)
                        s2 = sum(1 << perm[j] for j in sub)
                        union(t, s, t2, s2)

    return _assemble(d, spec.n_facets, glue, spec)


def _glue_by_key(facets: Sequence[Sequence[Hashable]], key: Callable[[tuple], Hashable]):
    def glue(union):
        first: dict[Hashable, tuple[int, int]] = {}
        for t, fac in enumerate(facets):
            n = len(fac)
            for s in range(1, 1 << n):
                labels = tuple(fac[j] for j in range(n) if (s >> j) & 1)
                k = key(labels)
                if k in first:
                    union(*first[k], t, s)
                else:
                    first[k] = (t, s)

    return glue


def from_facets(facets: Iterable[Sequence[Hashable]]) -> FacePoset:
    """Pure simplicial complex whose faces are determined by their vertex labels."""
    facets = [tuple(sorted(f)) for f in facets]
    facets.sort()
    if not facets:
        raise NotASimplicialPoset("no facets")
    d = len(facets[0]) - 1
    if any(len(f) != d + 1 or len(set(f)) != d + 1 for f in facets):
        raise NotASimplicialPoset("facets must be pure and have distinct vertices")
    return _assemble(d, len(facets), _glue_by_key(facets, frozenset))


def f_vector(p: FacePoset) -> FVector:
    return p.f_vector


def euler_char(p: FacePoset) -> int:
    return p.f_vector.chi


# --- validation -----------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    is_simplicial_poset: bool
    is_closed: bool
    is_connected: bool
    is_closed_3_manifold: bool
    violations: tuple[tuple[int, int, str], ...]  # (dimension, face id, kind)

    @property
    def ok(self) -> bool:
        return self.is_simplicial_poset


def _all_subfaces(p: FacePoset, k: int, fid: int) -> list[tuple[int, int]]:
    out = []
    for r in range(1, k + 1):
        for keep in itertools.combinations(range(k + 1), r):
            out.append((r - 1, p.subface(k, fid, keep)))
    return out


def _identity_violations(p: FacePoset) -> list[tuple[int, int, str]]:
    bad = []
    for k in range(2, p.dimension + 1):
        lower = p.faces[k - 1]
        for fid, f in enumerate(p.faces[k]):
            ok = all(
                lower[f.boundary[j]].boundary[i] == lower[f.boundary[i]].boundary[j - 1]
                for j in range(k + 1)
                for i in range(j)
            )
            if not ok:
                bad.append((k, fid, "SimplicialIdentity"))
    return bad


def _boolean_violations(p: FacePoset) -> list[tuple[int, int, str]]:
    bad = []
    for k in range(1, p.dimension + 1):
        for fid, f in enumerate(p.faces[k]):
            subs = _all_subfaces(p, k, fid)
            if len(set(subs)) != len(subs) or len(set(f.vertices)) != len(f.vertices):
                bad.append((k, fid, "BooleanInterval"))
    return bad


def _is_closed(p: FacePoset) -> bool:
    return p.dimension >= 1 and all(len(s) == 2 for s in p.facet_slots)


def is_closed_surface(p: FacePoset) -> bool:
    """Connected closed 2-manifold test: every edge in two triangles, every vertex star a disk."""
    if p.dimension != 2 or not _is_closed(p) or p.n_components != 1:
        return False
    # around each vertex the incident triangles must form a single cycle through shared edges
    tris_at: list[list[int]] = [[] for _ in p.faces[0]]
    for t, f in enumerate(p.faces[2]):
        for v in f.vertices:
            tris_at[v].append(t)
    slots = p.facet_slots
    for v, tris in enumerate(tris_at):
        if not tris:
            return False
        tri_set = set(tris)
        uf = _UnionFind(len(p.faces[2]))
        for t in tris:
            for e in p.faces[2][t].boundary:
                if v in p.faces[1][e].vertices:
                    a, b = slots[e]
                    if a[0] in tri_set and b[0] in tri_set:
                        uf.union(a[0], b[0])
        if len({uf.find(t) for t in tris}) != 1:
            return False
    return True


def validate(p: FacePoset) -> ValidationReport:
    violations = _boolean_violations(p) + _identity_violations(p)
    is_poset = not violations
    closed = _is_closed(p)
    connected = p.n_components == 1
    manifold = False
    if is_poset and closed and p.dimension == 3:
        manifold = all(is_closed_surface(vertex_link(p, v)) and euler_char(vertex_link(p, v)) == 2 for v in range(p.n_vertices))
    violations.sort()
    return ValidationReport(is_poset, closed, connected, manifold, tuple(violations))


def require_poset(p: FacePoset) -> None:
    rep = validate(p)
    if not rep.is_simplicial_poset:
        raise NotASimplicialPoset(f"not a simplicial poset: {rep.violations[:3]}")


# --- derived complexes ----------------------------------------------------


def vertex_link(p: FacePoset, v: int) -> FacePoset:
    if not 0 <= v < p.n_vertices:
        raise UnknownVertex(f"vertex {v} not in complex with {p.n_vertices} vertices")
    d = p.dimension
    link_ids: list[dict[int, int]] = [{} for _ in range(d)]
    # faces of dimension k+1 containing v become link faces of dimension k
    for k in range(1, d + 1):
        for fid, f in enumerate(p.faces[k]):
            if v in f.vertices:
                link_ids[k - 1][fid] = len(link_ids[k - 1])
    edge_to_lv = link_ids[0]
    faces: list[tuple[Face, ...]] = []
    for k in range(1, d + 1):
        row = []
        for fid in link_ids[k - 1]:
            f = p.faces[k][fid]
            pv = f.vertices.index(v)
            others = [pos for pos in range(k + 1) if pos != pv]
            lverts = [edge_to_lv[p.subface(k, fid, (pv, pos))] for pos in others]
            order = sorted(range(len(others)), key=lambda i: lverts[i])
            verts = tuple(lverts[i] for i in order)
            if k == 1:
                boundary: tuple[int, ...] = ()
            else:
                boundary = tuple(link_ids[k - 2][f.boundary[others[i]]] for i in order)
            row.append(Face(boundary, verts))
        faces.append(tuple(row))
    return FacePoset(tuple(faces))


def quotient_by_group(p: FacePoset, g: Sequence[int], order: int) -> FacePoset:
    """Quotient of a vertex-determined complex by the cyclic group generated by ``g``."""
    if order == 1:
        return p
    n = p.n_vertices
    g = list(g)
    if sorted(g) != list(range(n)):
        raise NotAnAutomorphism("g is not a permutation of the vertices")
    if not p.is_vertex_determined():
        raise NotVertexDetermined("quotient requires faces determined by their vertex sets")
    powers = [list(range(n))]
    for _ in range(order):
        powers.append([g[x] for x in powers[-1]])
    if powers[order] != list(range(n)):
        raise NotAnAutomorphism(f"g does not have order dividing {order}")
    d = p.dimension
    facets = {frozenset(f.vertices) for f in p.faces[d]}
    for f in facets:
        if frozenset(g[x] for x in f) not in facets:
            raise NotAnAutomorphism("g does not map facets to facets")
    for k in range(d + 1):
        for fid, f in enumerate(p.faces[k]):
            s = frozenset(f.vertices)
            for a in range(1, order):
                if frozenset(powers[a][x] for x in s) == s:
                    raise FixedFace(f"g^{a} fixes {k}-face {fid}")

    def orbit_key(labels: tuple) -> tuple:
        return min(tuple(sorted(powers[a][x] for x in labels)) for a in range(order))

    reps = sorted({orbit_key(tuple(f.vertices)) for f in p.faces[d]})
    q = _assemble(d, len(reps), _glue_by_key(reps, orbit_key))
    require_poset(q)
    return q


def disjoint_union(a: FacePoset, b: FacePoset) -> FacePoset:
    if a.dimension != b.dimension:
        raise NotASimplicialPoset("disjoint union needs equal dimensions")
    faces = []
    for k in range(a.dimension + 1):
        na_lower = len(a.faces[k - 1]) if k else 0
        na_v = a.n_vertices
        row = list(a.faces[k])
        for f in b.faces[k]:
            row.append(Face(tuple(x + na_lower for x in f.boundary), tuple(x + na_v for x in f.vertices)))
        faces.append(tuple(row))
    return FacePoset(tuple(faces))


def to_gluing_spec(p: FacePoset) -> GluingSpec:
    """Facet gluing table of a pure poset whose facets have distinct vertices."""
    d = p.dimension
    rows: list[list[Gluing]] = [[None] * (d + 1) for _ in p.faces[d]]
    for slots in p.facet_slots:
        if len(slots) > 2:
            raise NotASimplicialPoset("a ridge lies in more than two facet slots")
        if len(slots) == 2:
            (t, i), (t2, i2) = slots
            va, vb = p.faces[d][t].vertices, p.faces[d][t2].vertices
            perm = tuple(i2 if j == i else vb.index(va[j]) for j in range(d + 1))
            rows[t][i] = (t2, i2, perm)
            rows[t2][i2] = (t, i, tuple(perm.index(j) for j in range(d + 1)))
    return GluingSpec(len(rows), tuple(tuple(r) for r in rows), d)
