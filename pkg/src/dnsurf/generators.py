"""Constructors for the example complexes: cycles, joins, lens spaces, cyclic polytopes."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidLensParams, TooSmall
from .poset import Face, FacePoset, GluingSpec, build_complex, disjoint_union, from_facets, quotient_by_group, require_poset


def cycle(m: int) -> FacePoset:
    """Circle with m vertices and m edges; m = 2 gives two edges on the same two vertices."""
    if m < 2:
        raise TooSmall("a cycle needs at least two vertices")
    # end of edge j glued to the start of edge j+1
    rows = []
    for j in range(m):
        rows.append((((j + 1) % m, 1, (1, 0)), ((j - 1) % m, 0, (1, 0))))
    return build_complex(GluingSpec(m, tuple(rows), dimension=1))


def points(n: int) -> FacePoset:
    """n isolated vertices (the 0-sphere for n = 2)."""
    return FacePoset((tuple(Face((), (v,)) for v in range(n)),))


def join(a: FacePoset, b: FacePoset) -> FacePoset:
    """Join of two simplicial posets: faces are pairs (sigma, tau) of faces or empty faces."""
    require_poset(a)
    require_poset(b)
    da, db = a.dimension, b.dimension
    na = a.n_vertices
    # faces of the join of dimension k: (i, sigma, j, tau) with i + j + 1 = k, i, j >= -1
    index: dict[tuple[int, int, int, int], int] = {}
    faces: list[list[Face]] = [[] for _ in range(da + db + 2)]
    for k in range(da + db + 2):
        # a-heavy faces first so that vertex ids of a precede those of b
        for i in range(da, -2, -1):
            j = k - i - 1
            if j < -1 or j > db:
                continue
            sigmas = range(len(a.faces[i])) if i >= 0 else [None]
            taus = range(len(b.faces[j])) if j >= 0 else [None]
            for s in sigmas:
                for t in taus:
                    av = a.faces[i][s].vertices if s is not None else ()
                    bv = tuple(x + na for x in b.faces[j][t].vertices) if t is not None else ()
                    boundary = []
                    if k > 0:
                        for pos in range(len(av)):
                            if i == 0:
                                boundary.append(index[(-1, None, j, t)])
                            else:
                                boundary.append(index[(i - 1, a.faces[i][s].boundary[pos], j, t)])
                        for pos in range(len(bv)):
                            if j == 0:
                                boundary.append(index[(i, s, -1, None)])
                            else:
                                boundary.append(index[(i, s, j - 1, b.faces[j][t].boundary[pos])])
                    index[(i, s, j, t)] = len(faces[k])
                    faces[k].append(Face(tuple(boundary), av + bv))
    return FacePoset(tuple(tuple(f) for f in faces))


@dataclass(frozen=True)
class LensParams:
    p: int
    q: int
    k: Optional[int] = None
    r: Optional[int] = None

    def __post_init__(self):
        if self.p < 1 or math.gcd(self.p, self.q) != 1:
            raise InvalidLensParams(f"need p >= 1 and gcd(p, q) = 1, got p={self.p}, q={self.q}")
        if self.k is not None or self.r is not None:
            k, r, q = self.k, self.r, self.q
            if k is None or r is None or self.p != 2 * k or 2 * k != q * r + 1 or q < 1 or r < 1 or q % 2 == 0 or r % 2 == 0:
                raise InvalidLensParams("need p = 2k = qr + 1 with q, r odd positive")


def lens_standard(params: LensParams | tuple[int, int]) -> FacePoset:
    """Standard crystallization of L(p, q): join of two 2p-cycles modulo the Z/p action."""
    if not isinstance(params, LensParams):
        params = LensParams(*params)
    p, q = params.p, params.q
    m = 2 * p
    c = cycle(m)
    base = join(c, c)
    # vertex ids 0..m-1 are a_i, m..2m-1 are b_j (cycle vertices come out in cyclic order)
    g = [(i + 2) % m for i in range(m)] + [m + (j + 2 * q) % m for j in range(m)]
    return quotient_by_group(base, g, p)


def gale_facets(n: int) -> list[tuple[int, ...]]:
    """4-subsets of range(n) satisfying Gale's evenness condition."""
    out = []
    for s in itertools.combinations(range(n), 4):
        members = set(s)
        ok = True
        outside = [x for x in range(n) if x not in members]
        for a, b in itertools.combinations(outside, 2):
            if sum(1 for x in s if a < x < b) % 2:
                ok = False
                break
        if ok:
            out.append(s)
    return out


def cyclic_polytope_boundary(n: int) -> FacePoset:
    """Boundary complex of the cyclic 4-polytope with n vertices."""
    if n < 5:
        raise TooSmall("the cyclic 4-polytope needs at least 5 vertices")
    return from_facets(gale_facets(n))


def simplex_boundary(d: int) -> FacePoset:
    """Boundary of the (d+1)-simplex, a d-sphere."""
    return from_facets(itertools.combinations(range(d + 2), d + 1))


def single_tetrahedron() -> FacePoset:
    return build_complex(GluingSpec(1, ((None,) * 4,)))


def two_tetrahedron_sphere() -> FacePoset:
    ident = (0, 1, 2, 3)
    return build_complex(GluingSpec(2, (tuple((1, i, ident) for i in range(4)), tuple((0, i, ident) for i in range(4)))))


def sphere(tets: int) -> FacePoset:
    """A 3-sphere with the given number of tetrahedra (2, 5, or any even number >= 4)."""
    if tets == 2:
        return two_tetrahedron_sphere()
    if tets == 5:
        return simplex_boundary(3)
    if tets >= 4 and tets % 2 == 0:
        return join(cycle(2), cycle(tets // 2))
    raise TooSmall(f"no sphere construction with {tets} tetrahedra (use 2, 5 or an even number >= 4)")


def torus7() -> FacePoset:
    """Seven-vertex torus."""
    return from_facets([(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)] + [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)])


def rp2_6() -> FacePoset:
    """Six-vertex real projective plane."""
    return from_facets([
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
        (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
    ])


def suspension(p: FacePoset) -> FacePoset:
    """Join with two points (the double cone)."""
    return join(p, points(2))


def two_tetrahedra_apart() -> FacePoset:
    return disjoint_union(single_tetrahedron(), single_tetrahedron())
