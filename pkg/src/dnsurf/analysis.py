"""Exact averages of Euler characteristics over cohomology classes.

All averages are :class:`fractions.Fraction` values; nothing here is
floating point.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .cohomology import Cochain, class_size, h1, iter_class_bits, require_cocycle, zero
from .errors import BadParity, BudgetExceeded, NoSuchR, NotClosed, NotClosed3ManifoldFVector, WrongH1Dimension
from .poset import FacePoset, FVector, validate
from .surface import ComponentClass, classify_components, extract_surface, require_closed, slicing_chi

DEFAULT_BUDGET = 1 << 24
CONDITIONAL_LABEL = "conditional on input homeomorphism type"


def average_formula(fv: Sequence[int]) -> Fraction:
    """Sum over j of (-1/2)^j f_j."""
    return sum((Fraction(-1, 2) ** j * f for j, f in enumerate(fv)), Fraction(0))


def is_closed3_fvector(fv: Sequence[int]) -> bool:
    return len(fv) == 4 and fv[3] == fv[1] - fv[0] and fv[2] == 2 * (fv[1] - fv[0])


def average_closed3(fv: Sequence[int]) -> Fraction:
    """(5 f0 - f1) / 8 for the f-vector of a closed 3-manifold."""
    if not is_closed3_fvector(fv):
        raise NotClosed3ManifoldFVector(f"{tuple(fv)} violates f3 = f1 - f0, f2 = 2(f1 - f0)")
    f0, f1, _, f3 = fv
    value = Fraction(5 * f0 - f1, 8)
    assert value == Fraction(4 * f0 - f3, 8) == average_formula(fv)
    return value


@dataclass(frozen=True)
class SpectrumEntry:
    bits: int  # the cocycle
    chi: int  # cell-count chi of the surface
    slicing_chi: int
    components: tuple[ComponentClass, ...]
    cross_check: bool

    @property
    def has_nonorientable(self) -> bool:
        return any(not c.orientable for c in self.components)

    @property
    def has_sphere(self) -> bool:
        return any(c.is_sphere for c in self.components)


@dataclass(frozen=True)
class ClassSpectrum:
    representative: Cochain
    entries: tuple[SpectrumEntry, ...]
    count: int
    enumerated_sum: int  # sum of surface chi over distinct cocycles
    slicing_sum: int
    min_chi: int
    max_chi: int

    @property
    def mean_chi(self) -> Fraction:
        return Fraction(self.enumerated_sum, self.count)

    @property
    def mean_slicing_chi(self) -> Fraction:
        return Fraction(self.slicing_sum, self.count)

    @property
    def cross_check_failures(self) -> int:
        return sum(1 for e in self.entries if not e.cross_check)

    def histogram(self) -> list[tuple[int, int]]:
        counts: dict[int, int] = {}
        for e in self.entries:
            counts[e.chi] = counts.get(e.chi, 0) + 1
        return sorted(counts.items())


def _spectrum_chunk(p: FacePoset, sigma_bits: int, start: int, stop: int) -> list[SpectrumEntry]:
    chi_p = p.f_vector.chi
    n_edges = len(p.faces[1])
    out = []
    for _, bits in iter_class_bits(p, sigma_bits, start, stop):
        psi = Cochain(1, bits, p.digest, n_edges)
        s = extract_surface(p, psi)
        sl = slicing_chi(p, bits)
        out.append(SpectrumEntry(bits, s.chi, sl, tuple(classify_components(s)), s.chi == sl - chi_p))
    return out


def class_spectrum(
    p: FacePoset,
    sigma: Cochain,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> ClassSpectrum:
    """Surface data for every cocycle cohomologous to ``sigma``."""
    require_closed(p)
    require_cocycle(p, sigma)
    count = class_size(p)
    if count > budget:
        raise BudgetExceeded(f"class has {count} cocycles, budget is {budget}")
    if workers > 1 and count > 1:
        step = -(-count // workers)
        bounds = [(a, min(a + step, count)) for a in range(0, count, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(_spectrum_chunk, *zip(*[(p, sigma.bits, a, b) for a, b in bounds]))
            entries = [e for chunk in chunks for e in chunk]
    else:
        entries = _spectrum_chunk(p, sigma.bits, 0, count)
    chis = [e.chi for e in entries]
    return ClassSpectrum(
        representative=sigma,
        entries=tuple(entries),
        count=count,
        enumerated_sum=sum(chis),
        slicing_sum=sum(e.slicing_chi for e in entries),
        min_chi=min(chis),
        max_chi=max(chis),
    )


def slicing_mean(p: FacePoset, sigma: Cochain, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Mean chi of the slicing subcomplex over the class of ``sigma`` (any dimension)."""
    require_cocycle(p, sigma)
    count = class_size(p)
    if count > budget:
        raise BudgetExceeded(f"class has {count} cocycles, budget is {budget}")
    return Fraction(sum(slicing_chi(p, bits) for _, bits in iter_class_bits(p, sigma.bits)), count)


def class_representatives(p: FacePoset, max_classes: int = 1 << 10) -> list[tuple[str, Cochain]]:
    """('trivial', 0) followed by every nonzero combination of the H^1 basis."""
    basis = h1(p).representatives
    if 1 << len(basis) > max_classes:
        raise BudgetExceeded(f"H^1 has {1 << len(basis)} classes, limit is {max_classes}")
    out = [("trivial", zero(p))]
    for r in range(1, len(basis) + 1):
        for combo in itertools.combinations(range(len(basis)), r):
            c = basis[combo[0]]
            for i in combo[1:]:
                c = c + basis[i]
            out.append(("rep-" + "+".join(str(i) for i in combo), c))
    return out


@dataclass(frozen=True)
class ClassRow:
    label: str
    count: int
    mean_slicing_chi: Fraction
    mean_surface_chi: Optional[Fraction]
    min_chi: Optional[int]
    max_chi: Optional[int]
    cross_check_failures: int


@dataclass(frozen=True)
class LemmaReport:
    f_vector: FVector
    formula: Fraction
    closed3_formula: Optional[Fraction]
    complex_chi: int
    rows: tuple[ClassRow, ...]
    passed: bool
    failures: tuple[str, ...] = field(default=())


def verify_lemma(
    p: FacePoset,
    sigmas: Optional[Sequence[tuple[str, Cochain]]] = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> LemmaReport:
    """Check the class averages against the f-vector formulas, exactly.

    By default every H^1 class is enumerated. For closed 3-dimensional
    complexes the surface averages are checked as well; the expected surface
    mean is formula - chi(complex), which is the closed-form average when the
    complex is a closed 3-manifold.
    """
    fv = p.f_vector
    formula = average_formula(fv)
    closed3 = None
    if validate(p).is_closed_3_manifold:
        closed3 = average_closed3(fv)
    surfaces = p.dimension == 3 and all(len(s) == 2 for s in p.facet_slots)
    sigmas = class_representatives(p) if sigmas is None else sigmas
    rows = []
    failures = []
    for label, sigma in sigmas:
        if surfaces:
            spec = class_spectrum(p, sigma, budget, workers)
            row = ClassRow(label, spec.count, spec.mean_slicing_chi, spec.mean_chi, spec.min_chi, spec.max_chi, spec.cross_check_failures)
            if spec.mean_chi != formula - fv.chi:
                failures.append(f"{label}: surface mean {spec.mean_chi} != {formula - fv.chi}")
            if closed3 is not None and spec.mean_chi != closed3:
                failures.append(f"{label}: surface mean {spec.mean_chi} != (5f0-f1)/8 = {closed3}")
            if row.cross_check_failures:
                failures.append(f"{label}: {row.cross_check_failures} cross-check failures")
        else:
            row = ClassRow(label, class_size(p), slicing_mean(p, sigma, budget), None, None, None, 0)
        if row.mean_slicing_chi != formula:
            failures.append(f"{label}: slicing mean {row.mean_slicing_chi} != {formula}")
        rows.append(row)
    if len({r.mean_slicing_chi for r in rows}) > 1 or len({r.mean_surface_chi for r in rows}) > 1:
        failures.append("class means differ")
    return LemmaReport(fv, formula, closed3, fv.chi, tuple(rows), not failures, tuple(failures))


@dataclass(frozen=True)
class PseudomanifoldReport:
    f_vector: FVector
    complex_chi: int
    expected: Fraction
    mean_surface_chi: Fraction
    count: int
    passed: bool


def pseudomanifold_average(p: FacePoset, sigma: Cochain, budget: int = DEFAULT_BUDGET) -> PseudomanifoldReport:
    """Mean surface chi over the class of ``sigma`` against formula - chi(complex)."""
    if p.dimension != 3 or not all(len(s) == 2 for s in p.facet_slots):
        raise NotClosed("need a closed 3-dimensional complex (every triangle in two slots)")
    spec = class_spectrum(p, sigma, budget)
    expected = average_formula(p.f_vector) - p.f_vector.chi
    ok = spec.mean_chi == expected and spec.cross_check_failures == 0
    return PseudomanifoldReport(p.f_vector, p.f_vector.chi, expected, spec.mean_chi, spec.count, ok)


def bredon_wood_chis(q: int, r: int, floor: int) -> set[int]:
    """Euler characteristics (4 - q - r)/2 - 2i, i >= 0, that are >= floor."""
    if q < 1 or r < 1 or q % 2 == 0 or r % 2 == 0:
        raise BadParity(f"q and r must be odd positive, got q={q}, r={r}")
    top = (4 - q - r) // 2
    return set(range(top, floor - 1, -2))


def solve_r(k: int, q: int) -> int:
    if k < 1 or q < 1 or q % 2 == 0 or (2 * k - 1) % q:
        raise NoSuchR(f"no odd positive r with 2k = qr + 1 for k={k}, q={q}")
    r = (2 * k - 1) // q
    if r % 2 == 0:
        raise NoSuchR(f"r = {r} is even")
    return r


@dataclass(frozen=True)
class Certificate:
    k: int
    q: int
    r: int
    bound: int
    f0: int
    f3: int
    bound_met: bool
    bound_respected: bool
    class_mean: Fraction
    witness: Cochain
    witness_chi: int
    witness_meets_mean: bool
    nonorientable_component_present: bool  # in the witness surface
    every_surface_nonorientable: bool  # across the whole nontrivial class
    sphere_component_present: bool  # anywhere in the nontrivial class
    bredon_wood_ok: bool
    nonorientable_chis: tuple[int, ...]
    complex_hash: str
    label: str = CONDITIONAL_LABEL
    tool_version: str = __version__

    @property
    def passed(self) -> bool:
        return self.bound_respected and self.witness_meets_mean and self.nonorientable_component_present and self.bredon_wood_ok


def certify_lens(p: FacePoset, k: int, q: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> Certificate:
    """Check every computable step of the 4(q+r) lower bound on a concrete complex.

    The complex is trusted to be L(2k, q); that is not verified.
    """
    r = solve_r(k, q)
    report = validate(p)
    if not report.is_closed_3_manifold:
        raise NotClosed("certificate needs a closed 3-manifold complex")
    basis = h1(p)
    if basis.dimension != 1:
        raise WrongH1Dimension(f"H^1 has dimension {basis.dimension}, expected 1")
    spec = class_spectrum(p, basis.representatives[0], budget, workers)
    f0, f3 = p.f_vector[0], p.f_vector[3]
    bound = 4 * (q + r)
    # max chi, ties broken by smallest bit pattern
    witness = min(spec.entries, key=lambda e: (-e.chi, e.bits))
    nonorientable = sorted({c.chi for e in spec.entries for c in e.components if not c.orientable})
    floor = min(nonorientable, default=0)
    allowed = bredon_wood_chis(q, r, min(floor, (4 - q - r) // 2))
    return Certificate(
        k=k,
        q=q,
        r=r,
        bound=bound,
        f0=f0,
        f3=f3,
        bound_met=f3 == bound,
        bound_respected=f3 >= bound,
        class_mean=spec.mean_chi,
        witness=Cochain(1, witness.bits, p.digest, len(p.faces[1])),
        witness_chi=witness.chi,
        witness_meets_mean=witness.chi >= spec.mean_chi and 8 * witness.chi >= 4 * f0 - f3,
        nonorientable_component_present=witness.has_nonorientable,
        every_surface_nonorientable=all(e.has_nonorientable for e in spec.entries),
        sphere_component_present=any(e.has_sphere for e in spec.entries),
        bredon_wood_ok=all(c in allowed for c in nonorientable),
        nonorientable_chis=tuple(nonorientable),
        complex_hash=p.digest,
    )
