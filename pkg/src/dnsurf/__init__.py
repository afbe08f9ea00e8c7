"""Discrete normal surfaces in simplicial posets: Z/2 cohomology, dual surfaces,
exact Euler characteristic averages and lens-space crystallization certificates."""

__version__ = "0.1.0"

from .poset import FacePoset, FVector, GluingSpec, build_complex, euler_char, f_vector, validate, vertex_link  # noqa: E402
from .cohomology import Cochain, h1, enumerate_class, is_cocycle, same_class  # noqa: E402
from .surface import extract_surface, classify_components, slicing_subcomplex, cross_check, tet_pattern  # noqa: E402
from .generators import cycle, join, lens_standard, cyclic_polytope_boundary  # noqa: E402
from .analysis import average_formula, average_closed3, class_spectrum, verify_lemma, certify_lens, bredon_wood_chis  # noqa: E402

__all__ = [
    "FacePoset", "FVector", "GluingSpec", "build_complex", "euler_char", "f_vector", "validate", "vertex_link",
    "Cochain", "h1", "enumerate_class", "is_cocycle", "same_class",
    "extract_surface", "classify_components", "slicing_subcomplex", "cross_check", "tet_pattern",
    "cycle", "join", "lens_standard", "cyclic_polytope_boundary",
    "average_formula", "average_closed3", "class_spectrum", "verify_lemma", "certify_lens", "bredon_wood_chis",
]
