"""Command-line interface.

Exit codes: 0 success/pass, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__, io
from .analysis import DEFAULT_BUDGET, certify_lens, class_representatives, class_spectrum, verify_lemma
from .cohomology import Cochain, h1, is_cocycle
from .errors import DnsError, FormatError
from .generators import LensParams, cyclic_polytope_boundary, lens_standard, sphere
from .poset import validate
from .surface import classify_components, extract_surface, slicing_chi


def _fmt(x) -> str:
    if isinstance(x, (tuple, list)):
        return "(" + ",".join(_fmt(v) for v in x) + ")"
    if isinstance(x, bool):
        return "yes" if x else "no"
    return str(x)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(args, record: dict, table: Optional[list[str]] = None) -> None:
    if args.format == "structured":
        sys.stdout.write(json.dumps(_jsonable(record), indent=2) + "\n")
        return
    for key, value in record.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            continue
        sys.stdout.write(f"{key} = {_fmt(value)}\n")
    for line in table or []:
        sys.stdout.write(line + "\n")


def _components(cs) -> list[dict]:
    return [
        {"chi": c.chi, "orientable": c.orientable, "genus": c.genus, "crosscaps": c.crosscaps, "pieces": c.n_pieces}
        for c in cs
    ]


def _component_lines(cs) -> list[str]:
    out = []
    for i, c in enumerate(cs):
        kind = f"orientable genus {c.genus}" if c.orientable else f"nonorientable crosscaps {c.crosscaps}"
        out.append(f"  component {i}: chi {c.chi}, {kind}, {c.n_pieces} pieces")
    return out


def cmd_gen(args) -> int:
    if args.kind == "lens":
        p = lens_standard(LensParams(args.p, args.q))
    elif args.kind == "cyclic":
        p = cyclic_polytope_boundary(args.n)
    else:
        p = sphere(args.tets)
    io.write(p, sys.stdout)
    return 0


def cmd_validate(args) -> int:
    p = io.read(args.file)
    rep = validate(p)
    record = {
        "is_simplicial_poset": rep.is_simplicial_poset,
        "is_closed": rep.is_closed,
        "is_connected": rep.is_connected,
        "is_closed_3_manifold": rep.is_closed_3_manifold,
        "violations": [{"dimension": d, "face": f, "kind": k} for d, f, k in rep.violations],
    }
    lines = [f"  violation: {k} at {d}-face {f}" for d, f, k in rep.violations]
    _emit(args, record, lines)
    return 0 if rep.is_simplicial_poset else 1


def cmd_info(args) -> int:
    p = io.read(args.file)
    rep = validate(p)
    record = {
        "hash": p.digest,
        "dimension": p.dimension,
        "f": list(p.f_vector),
        "chi": p.f_vector.chi,
        "components": p.n_components,
        "is_simplicial_poset": rep.is_simplicial_poset,
        "is_closed": rep.is_closed,
        "is_closed_3_manifold": rep.is_closed_3_manifold,
    }
    _emit(args, record)
    return 0


def cmd_h1(args) -> int:
    p = io.read(args.file)
    basis = h1(p)
    record = {"dimension": basis.dimension, "representatives": [r.to_hex() for r in basis.representatives]}
    if args.format == "structured":
        _emit(args, record)
    else:
        sys.stdout.write(f"dimension = {basis.dimension}\n")
        for i, r in enumerate(basis.representatives):
            sys.stdout.write(f"rep-{i} = {r.to_hex()}\n")
    return 0


def cmd_surface(args) -> int:
    p = io.read(args.file)
    psi = Cochain.from_hex(args.cocycle, p)
    s = extract_surface(p, psi)
    comps = classify_components(s)
    record = {
        "cocycle": psi.to_hex(),
        "points": len(s.points),
        "arcs": len(s.arcs),
        "pieces": len(s.pieces),
        "chi": s.chi,
        "slicing_chi": slicing_chi(p, psi.bits),
        "components": _components(comps),
    }
    _emit(args, record, _component_lines(comps))
    return 0


def _pick_class(p, label: str) -> Cochain:
    for name, sigma in class_representatives(p):
        if name == label:
            return sigma
    if label.startswith("C") or all(c in "0123456789abcdefABCDEF" for c in label):
        sigma = Cochain.from_hex(label, p)
        if is_cocycle(p, sigma):
            return sigma
    raise FormatError(f"unknown class {label!r}; use 'trivial' or rep-i")


def cmd_spectrum(args) -> int:
    p = io.read(args.file)
    sigma = _pick_class(p, args.cls)
    spec = class_spectrum(p, sigma, args.budget, args.workers)
    record = {
        "class": args.cls,
        "representative": sigma.to_hex(),
        "count": spec.count,
        "enumerated_sum": spec.enumerated_sum,
        "mean_chi": spec.mean_chi,
        "mean_slicing_chi": spec.mean_slicing_chi,
        "min_chi": spec.min_chi,
        "max_chi": spec.max_chi,
        "cross_check_failures": spec.cross_check_failures,
        "histogram": [{"chi": c, "count": n} for c, n in spec.histogram()],
        "entries": [
            {
                "cocycle": Cochain(1, e.bits, p.digest, len(p.faces[1])).to_hex(),
                "chi": e.chi,
                "slicing_chi": e.slicing_chi,
                "components": _components(e.components),
            }
            for e in spec.entries
        ],
    }
    lines = ["  chi  count"] + [f"  {c:>3}  {n}" for c, n in spec.histogram()]
    _emit(args, record, lines)
    return 0 if spec.cross_check_failures == 0 else 1


def cmd_verify_average(args) -> int:
    p = io.read(args.file)
    rep = verify_lemma(p, budget=args.budget, workers=args.workers)
    record = {
        "result": "pass" if rep.passed else "fail",
        "f": list(rep.f_vector),
        "formula": rep.formula,
        "closed3_formula": rep.closed3_formula,
        "complex_chi": rep.complex_chi,
        "classes": [
            {
                "class": r.label,
                "count": r.count,
                "mean_slicing_chi": r.mean_slicing_chi,
                "mean_surface_chi": r.mean_surface_chi,
                "min_chi": r.min_chi,
                "max_chi": r.max_chi,
                "cross_check_failures": r.cross_check_failures,
            }
            for r in rep.rows
        ],
        "failures": list(rep.failures),
    }
    if rep.rows:
        record["mean"] = rep.rows[0].mean_surface_chi if rep.rows[0].mean_surface_chi is not None else rep.rows[0].mean_slicing_chi
    lines = ["  class  count  slicing-mean  surface-mean  min  max"]
    for r in rep.rows:
        lines.append(f"  {r.label}  {r.count}  {r.mean_slicing_chi}  {r.mean_surface_chi}  {r.min_chi}  {r.max_chi}")
    lines += [f"  failure: {f}" for f in rep.failures]
    _emit(args, record, lines)
    return 0 if rep.passed else 1


def cmd_certify_lens(args) -> int:
    p = io.read(args.file)
    cert = certify_lens(p, args.k, args.q, args.budget, args.workers)
    record = {
        "label": cert.label,
        "tool_version": cert.tool_version,
        "complex_hash": cert.complex_hash,
        "k": cert.k,
        "q": cert.q,
        "r": cert.r,
        "bound": cert.bound,
        "f0": cert.f0,
        "f3": cert.f3,
        "bound_met": cert.bound_met,
        "bound_respected": cert.bound_respected,
        "class_mean": cert.class_mean,
        "witness": cert.witness.to_hex(),
        "witness_chi": cert.witness_chi,
        "witness_meets_mean": cert.witness_meets_mean,
        "nonorientable_component_present": cert.nonorientable_component_present,
        "every_surface_nonorientable": cert.every_surface_nonorientable,
        "sphere_component_present": cert.sphere_component_present,
        "bredon_wood_ok": cert.bredon_wood_ok,
        "nonorientable_chis": list(cert.nonorientable_chis),
        "result": "pass" if cert.passed else "fail",
    }
    _emit(args, record)
    return 0 if cert.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dnsurf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    enum = argparse.ArgumentParser(add_help=False)
    enum.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max cocycles per class")
    enum.add_argument("--workers", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a generated complex")
    gsub = gen.add_subparsers(dest="kind", required=True)
    lens = gsub.add_parser("lens", help="standard crystallization of L(p,q)")
    lens.add_argument("--p", type=int, required=True)
    lens.add_argument("--q", type=int, required=True)
    cyc = gsub.add_parser("cyclic", help="boundary of the cyclic 4-polytope")
    cyc.add_argument("--n", type=int, required=True)
    sph = gsub.add_parser("sphere", help="a small 3-sphere")
    sph.add_argument("--tets", type=int, required=True)
    gen.set_defaults(func=cmd_gen)

    for name, func, parents, help_ in [
        ("validate", cmd_validate, [common], "check poset axioms, closedness, manifoldness"),
        ("info", cmd_info, [common], "f-vector, Euler characteristic, flags"),
        ("h1", cmd_h1, [common], "Z/2 H^1 basis"),
        ("surface", cmd_surface, [common], "normal surface dual to a cocycle"),
        ("spectrum", cmd_spectrum, [common, enum], "all surfaces in one cohomology class"),
        ("verify-average", cmd_verify_average, [common, enum], "exact class averages vs f-vector formulas"),
        ("certify-lens", cmd_certify_lens, [common, enum], "lens-space lower-bound certificate"),
    ]:
        sp = sub.add_parser(name, parents=parents, help=help_)
        sp.add_argument("file", help="interchange file, '-' for stdin")
        sp.set_defaults(func=func)
        if name == "surface":
            sp.add_argument("--cocycle", required=True, help="hex cochain, bare or C1:<hash>:<hex>")
        elif name == "spectrum":
            sp.add_argument("--class", dest="cls", default="trivial", help="trivial | rep-i | cochain hex")
        elif name == "certify-lens":
            sp.add_argument("--k", type=int, required=True)
            sp.add_argument("--q", type=int, required=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "format"):
        args.format = "text"
    try:
        return args.func(args)
    except DnsError as exc:
        sys.stderr.write(f"error [{exc.code}]: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error [E_IO]: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
