import itertools
import random

import pytest

from dnsurf import generators as gen
from dnsurf.errors import FixedFace, NonInvolutiveGluing, NotAnAutomorphism, SelfGluedFace, UnknownVertex
from dnsurf.poset import (
    GluingSpec,
    build_complex,
    euler_char,
    f_vector,
    from_facets,
    quotient_by_group,
    to_gluing_spec,
    validate,
    vertex_link,
)

IDENT = (0, 1, 2, 3)


def shuffled_spec(spec: GluingSpec, rng: random.Random) -> GluingSpec:
    """Same complex with facets renumbered and each facet's local vertices permuted."""
    n, d = spec.n_facets, spec.dimension
    order = list(range(n))
    rng.shuffle(order)  # old facet t becomes order[t]
    local = []
    for _ in range(n):
        sigma = list(range(d + 1))
        rng.shuffle(sigma)  # old local j becomes sigma[j]
        local.append(sigma)
    rows = [[None] * (d + 1) for _ in range(n)]
    for t, row in enumerate(spec.gluings):
        for i, g in enumerate(row):
            if g is None:
                continue
            t2, i2, perm = g
            new_perm = [0] * (d + 1)
            for j in range(d + 1):
                new_perm[local[t][j]] = local[t2][perm[j]]
            rows[order[t]][local[t][i]] = (order[t2], local[t2][i2], tuple(new_perm))
    return GluingSpec(n, tuple(tuple(r) for r in rows), d)


def test_single_tetrahedron():
    p = gen.single_tetrahedron()
    assert f_vector(p) == (4, 6, 4, 1)
    assert euler_char(p) == 1
    rep = validate(p)
    assert rep.is_simplicial_poset and not rep.is_closed and not rep.is_closed_3_manifold


def test_two_tetrahedron_sphere(two_sphere):
    assert f_vector(two_sphere) == (4, 6, 4, 2)
    rep = validate(two_sphere)
    assert rep.is_simplicial_poset and rep.is_closed and rep.is_connected and rep.is_closed_3_manifold
    assert euler_char(two_sphere) == 0


def test_boundary_of_4_simplex_from_gluing(bd4):
    spec = to_gluing_spec(bd4)
    p = build_complex(spec)
    assert f_vector(p) == (5, 10, 10, 5)
    assert euler_char(p) == 0
    assert validate(p).is_closed_3_manifold


def test_gluing_must_be_involutive():
    with pytest.raises(NonInvolutiveGluing):
        GluingSpec(2, (((1, 0, IDENT), None, None, None), (None,) * 4))
    with pytest.raises(NonInvolutiveGluing):
        # partner exists but with the wrong inverse map
        GluingSpec(2, (((1, 0, IDENT), None, None, None), ((0, 0, (0, 2, 1, 3)), None, None, None)))


def test_self_glued_face_rejected():
    with pytest.raises(SelfGluedFace):
        GluingSpec(1, (((0, 0, IDENT), None, None, None),))


def edge_identifying_spec() -> GluingSpec:
    # face 3 (vertices 012) onto face 0 (vertices 123) via 0->1, 1->2, 2->3, 3->0:
    # edge 01 becomes edge 12, so triangle 012 has two equal edges
    return GluingSpec(1, (((0, 3, (3, 0, 1, 2)), None, None, (0, 0, (1, 2, 3, 0))),))


def test_identified_edges_fail_boolean_interval():
    p = build_complex(edge_identifying_spec())
    rep = validate(p)
    assert not rep.is_simplicial_poset
    assert any(kind == "BooleanInterval" for _, _, kind in rep.violations)
    # exhaustive oracle: follow every deletion order from the tetrahedron
    subfaces = set()
    count = 0
    for r in range(1, 4):
        for keep in itertools.combinations(range(4), r):
            drop = [j for j in range(4) if j not in keep]
            for order in itertools.permutations(drop):
                fid, k, alive = 0, 3, list(range(4))
                for j in order:
                    pos = alive.index(j)
                    fid = p.faces[k][fid].boundary[pos]
                    alive.pop(pos)
                    k -= 1
            subfaces.add((r - 1, fid))
            count += 1
    assert count == 14 and len(subfaces) < 14
    assert (3, 0, "BooleanInterval") in rep.violations


@pytest.mark.parametrize(
    "make",
    [gen.single_tetrahedron, gen.two_tetrahedron_sphere, lambda: gen.simplex_boundary(3),
     lambda: gen.lens_standard((2, 1)), lambda: gen.lens_standard((5, 2)), lambda: gen.cyclic_polytope_boundary(8),
     lambda: gen.join(gen.cycle(2), gen.cycle(3)), lambda: gen.suspension(gen.torus7())],
)
def test_simplicial_identities_and_boolean_intervals(make):
    p = make()
    for k in range(2, p.dimension + 1):
        for f in p.faces[k]:
            for j in range(k + 1):
                for i in range(j):
                    assert p.faces[k - 1][f.boundary[j]].boundary[i] == p.faces[k - 1][f.boundary[i]].boundary[j - 1]
    for k in range(1, p.dimension + 1):
        for fid, f in enumerate(p.faces[k]):
            subs = [(r - 1, p.subface(k, fid, keep)) for r in range(1, k + 1) for keep in itertools.combinations(range(k + 1), r)]
            assert len(set(subs)) == 2 ** (k + 1) - 2
            assert len(set(f.vertices)) == k + 1
    assert validate(p).is_simplicial_poset


def test_lens_euler_char():
    assert euler_char(gen.lens_standard((2, 1))) == 0
    assert f_vector(gen.lens_standard((2, 1))) == (4, 12, 16, 8)


def test_vertex_link_examples(bd4, two_sphere, lens21):
    for v in range(5):
        link = vertex_link(bd4, v)
        assert f_vector(link) == (4, 6, 4) and euler_char(link) == 2
    for v in range(4):
        assert f_vector(vertex_link(two_sphere, v)) == (3, 3, 2)
    for v in range(4):
        link = vertex_link(lens21, v)
        # star oracle: count faces through v directly
        star = [sum(1 for f in lens21.faces[k] if v in f.vertices) for k in (1, 2, 3)]
        assert f_vector(link) == tuple(star) == (6, 12, 8)
        assert euler_char(link) == 2


def test_vertex_link_unknown_vertex(bd4):
    with pytest.raises(UnknownVertex):
        vertex_link(bd4, 5)


def test_manifold_links_are_spheres():
    from dnsurf.poset import is_closed_surface

    for p in (gen.lens_standard((3, 1)), gen.cyclic_polytope_boundary(9), gen.sphere(6)):
        assert validate(p).is_closed_3_manifold
        for v in range(p.n_vertices):
            link = vertex_link(p, v)
            assert is_closed_surface(link) and euler_char(link) == 2


def test_suspension_of_torus_is_closed_but_not_a_manifold():
    p = gen.suspension(gen.torus7())
    rep = validate(p)
    assert rep.is_closed and rep.is_simplicial_poset and not rep.is_closed_3_manifold


@pytest.mark.parametrize("p", [(1, 1), (2, 1), (3, 1), (5, 2), (7, 3)])
def test_closed_manifold_f_vector_identities(p):
    fv = f_vector(gen.lens_standard(p))
    assert fv[3] == fv[1] - fv[0] and fv[2] == 2 * (fv[1] - fv[0]) and fv.chi == 0


def join_4cycles():
    c = gen.cycle(4)
    return gen.join(c, c)


def shift_orbit_count(m: int, q: int, order: int) -> tuple[int, ...]:
    """Orbit counts of the join of two m-cycles under a_i -> a_{i+2}, b_j -> b_{j+2q}, by explicit labels."""
    a = [("a", i) for i in range(m)]
    b = [("b", j) for j in range(m)]
    a_edges = [frozenset({a[i], a[(i + 1) % m]}) for i in range(m)]
    b_edges = [frozenset({b[j], b[(j + 1) % m]}) for j in range(m)]
    faces = {0: set(), 1: set(), 2: set(), 3: set()}
    for x in a + b:
        faces[0].add(frozenset({x}))
    for e in a_edges + b_edges:
        faces[1].add(e)
    for x in a:
        for y in b:
            faces[1].add(frozenset({x, y}))
    for e in a_edges:
        for y in b:
            faces[2].add(e | {y})
    for e in b_edges:
        for x in a:
            faces[2].add(e | {x})
    for e in a_edges:
        for f in b_edges:
            faces[3].add(e | f)

    def g(s):
        return frozenset((t, (i + 2) % m) if t == "a" else (t, (i + 2 * q) % m) for t, i in s)

    out = []
    for k in range(4):
        seen, orbits = set(), 0
        for s in faces[k]:
            if s in seen:
                continue
            orbits += 1
            x = s
            for _ in range(order):
                seen.add(x)
                x = g(x)
        out.append(orbits)
    return tuple(out)


def test_quotient_of_join_of_4cycles():
    base = join_4cycles()
    assert f_vector(base) == (8, 24, 32, 16)
    g = [(i + 2) % 4 for i in range(4)] + [4 + (j + 2) % 4 for j in range(4)]
    q = quotient_by_group(base, g, 2)
    assert f_vector(q) == shift_orbit_count(4, 1, 2) == (4, 12, 16, 8)
    assert all(x * 2 == y for x, y in zip(f_vector(q), f_vector(base)))


def test_quotient_trivial_group_is_identity(bd4):
    assert quotient_by_group(bd4, list(range(5)), 1) is bd4


def test_quotient_rejects_fixed_vertex():
    base = join_4cycles()
    # reflection a_i -> a_{-i} fixes a_0
    g = [(-i) % 4 for i in range(4)] + [4 + j for j in range(4)]
    with pytest.raises(FixedFace):
        quotient_by_group(base, g, 2)


def test_quotient_rejects_non_automorphism():
    base = join_4cycles()
    g = [1, 0, 2, 3] + [4, 5, 6, 7]
    with pytest.raises(NotAnAutomorphism):
        quotient_by_group(base, g, 2)


@pytest.mark.parametrize("seed", range(5))
def test_relabelled_gluing_gives_same_complex(seed):
    rng = random.Random(seed)
    for p in (gen.lens_standard((2, 1)), gen.cyclic_polytope_boundary(7), gen.two_tetrahedron_sphere()):
        q = build_complex(shuffled_spec(to_gluing_spec(p), rng))
        assert f_vector(q) == f_vector(p)
        assert validate(q) == validate(p)


def test_from_facets_two_neighborly():
    p = from_facets(gen.gale_facets(8))
    assert f_vector(p)[1] == 8 * 7 // 2
