from fractions import Fraction

import pytest

from dnsurf import generators as gen
from dnsurf.analysis import (
    average_closed3,
    average_formula,
    bredon_wood_chis,
    certify_lens,
    class_representatives,
    class_spectrum,
    pseudomanifold_average,
    slicing_mean,
    verify_lemma,
)
from dnsurf.cohomology import enumerate_class, h1, zero
from dnsurf.errors import BadParity, BudgetExceeded, NoSuchR, NotClosed, NotClosed3ManifoldFVector, WrongH1Dimension
from dnsurf.surface import extract_surface, slicing_subcomplex


def brute_mean_slicing(p, sigma):
    vals = [slicing_subcomplex(p, psi).chi for psi in enumerate_class(p, sigma)]
    return Fraction(sum(vals), len(vals))


def test_average_formula_examples(bd4, lens21):
    assert brute_mean_slicing(bd4, zero(bd4)) == Fraction(15, 8) == average_formula((5, 10, 10, 5))
    assert brute_mean_slicing(lens21, zero(lens21)) == 1 == average_formula((4, 12, 16, 8))
    assert average_formula((11, 55, 88, 44)) == 0


def test_average_closed3():
    assert average_closed3((4, 12, 16, 8)) == 1
    p = 4
    assert average_closed3((4, 4 * p + 4, 8 * p, 4 * p)) == Fraction(16 - 16, 8) == 0
    assert average_closed3((11, 55, 88, 44)) == 0
    with pytest.raises(NotClosed3ManifoldFVector):
        average_closed3((5, 10, 10, 6))


def test_spectrum_lens21(lens21):
    triv = class_spectrum(lens21, zero(lens21))
    assert triv.count == 8 and triv.mean_chi == 1
    chis = sorted(e.chi for e in triv.entries)
    assert chis.count(2) == 4 and any(e.chi == 0 and not e.components for e in triv.entries)
    rep = class_spectrum(lens21, h1(lens21).representatives[0])
    assert rep.count == 8 and rep.mean_chi == 1
    assert all(e.chi == 1 and e.components[0].orientable is False for e in rep.entries)
    assert rep.cross_check_failures == 0 and triv.cross_check_failures == 0


def test_spectrum_invariants(lens21):
    for _, sigma in class_representatives(gen.lens_standard((6, 1))):
        sp = class_spectrum(gen.lens_standard((6, 1)), sigma)
        assert sp.min_chi <= sp.mean_chi <= sp.max_chi
        assert sp.mean_chi == Fraction(sp.enumerated_sum, sp.count)


def test_spectrum_budget(cyclic11):
    with pytest.raises(BudgetExceeded):
        class_spectrum(cyclic11, zero(cyclic11), budget=100)


def test_spectrum_parallel_matches_serial():
    p = gen.cyclic_polytope_boundary(9)
    a = class_spectrum(p, zero(p))
    b = class_spectrum(p, zero(p), workers=3)
    assert a == b


def test_verify_lemma_examples(bd4, lens21):
    rep = verify_lemma(bd4)
    assert rep.passed and rep.rows[0].mean_slicing_chi == Fraction(15, 8)
    rep = verify_lemma(lens21)
    assert rep.passed and len(rep.rows) == 2 and all(r.mean_surface_chi == 1 for r in rep.rows)
    rep = verify_lemma(gen.lens_standard((4, 1)))
    assert rep.passed and all(r.mean_surface_chi == 0 for r in rep.rows)


def test_verify_lemma_non_closed_and_other_dimensions():
    assert verify_lemma(gen.single_tetrahedron()).passed
    assert verify_lemma(gen.torus7()).passed
    assert verify_lemma(gen.rp2_6()).passed
    assert verify_lemma(gen.cycle(5)).passed
    assert slicing_mean(gen.two_tetrahedra_apart(), zero(gen.two_tetrahedra_apart())) == average_formula((8, 12, 8, 2))


def test_pseudomanifold_average():
    for base in (gen.torus7(), gen.rp2_6()):
        p = gen.suspension(base)
        rep = pseudomanifold_average(p, zero(p))
        assert rep.complex_chi != 0 and rep.passed
        assert rep.mean_surface_chi == average_formula(p.f_vector) - p.f_vector.chi
    lens = gen.lens_standard((2, 1))
    assert pseudomanifold_average(lens, zero(lens)).expected == verify_lemma(lens).rows[0].mean_surface_chi
    with pytest.raises(NotClosed):
        pseudomanifold_average(gen.single_tetrahedron(), zero(gen.single_tetrahedron()))


def test_zero_cocycle_degenerate_class():
    p = gen.suspension(gen.torus7())
    s = extract_surface(p, zero(p))
    assert s.chi == 0 == slicing_subcomplex(p, zero(p)).chi - p.f_vector.chi


def test_bredon_wood():
    assert bredon_wood_chis(1, 1, -5) == {1, -1, -3, -5}
    assert bredon_wood_chis(1, 3, -4) == {0, -2, -4}
    assert bredon_wood_chis(3, 5, -6) == {-2, -4, -6}
    with pytest.raises(BadParity):
        bredon_wood_chis(2, 3, 0)


def test_certify_lens_examples(lens21):
    c = certify_lens(lens21, 1, 1)
    assert (c.bound, c.f3, c.bound_met, c.witness_chi) == (8, 8, True, 1)
    c = certify_lens(gen.lens_standard((4, 1)), 2, 1)
    assert (c.bound, c.f3, c.bound_met, c.witness_chi) == (16, 16, True, 0)
    c = certify_lens(gen.lens_standard((16, 3)), 8, 3)
    assert (c.r, c.bound, c.f3, c.bound_respected, c.bound_met) == (5, 32, 64, True, False)
    assert c.passed and c.bredon_wood_ok


def test_certify_witness_tie_break(lens21):
    c = certify_lens(lens21, 1, 1)
    members = [psi.bits for psi in enumerate_class(lens21, h1(lens21).representatives[0])]
    assert c.witness.bits == min(members)


def test_certify_errors(bd4, lens21):
    with pytest.raises(NoSuchR):
        certify_lens(lens21, 2, 2)
    with pytest.raises(NoSuchR):
        certify_lens(lens21, 3, 3)  # 2k - 1 = 5 not divisible by 3
    with pytest.raises(WrongH1Dimension):
        certify_lens(bd4, 1, 1)
    with pytest.raises(BudgetExceeded):
        certify_lens(lens21, 1, 1, budget=4)
