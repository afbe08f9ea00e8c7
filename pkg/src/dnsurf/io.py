"""Canonical interchange format for face posets (version 1).

The file is JSON laid out one face record per line::

    {
      "format": "dnsurf-poset",
      "version": 1,
      "dimension": 3,
      "faces": [
        [
          {"boundary": [], "vertices": [0]},
          ...
        ],
        ...
      ],
      "gluing_spec": {"dimension": 3, "n_facets": 2, "gluings": [...]}
    }

``faces[k][i]`` is k-face i. ``boundary[j]`` is the (k-1)-face opposite
``vertices[j]``. ``gluing_spec`` is present only for complexes built from a
facet gluing; each gluing row lists, per face slot, ``null`` or
``[target facet, target slot, vertex permutation]``. A document holding only
``gluing_spec`` (no ``faces``) is accepted on input and built on load.

Writing is deterministic, so write -> read -> write is byte-identical.
"""

from __future__ import annotations

import json
import sys
from typing import TextIO

from .errors import FormatError
from .poset import Face, FacePoset, GluingSpec, build_complex

FORMAT = "dnsurf-poset"
VERSION = 1


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def dumps(p: FacePoset) -> str:
    lines = ["{", f'  "format": "{FORMAT}",', f'  "version": {VERSION},', f'  "dimension": {p.dimension},', '  "faces": [']
    for k, fs in enumerate(p.faces):
        lines.append("    [")
        for i, f in enumerate(fs):
            sep = "," if i < len(fs) - 1 else ""
            lines.append(f'      {{"boundary": {_dumps(list(f.boundary))}, "vertices": {_dumps(list(f.vertices))}}}{sep}')
        lines.append("    ]" + ("," if k < p.dimension else ""))
    if p.gluing_spec is None:
        lines.append("  ]")
    else:
        g = p.gluing_spec.to_json()
        lines.append("  ],")
        lines.append('  "gluing_spec": {')
        lines.append(f'    "dimension": {g["dimension"]},')
        lines.append(f'    "n_facets": {g["n_facets"]},')
        lines.append('    "gluings": [')
        for t, row in enumerate(g["gluings"]):
            sep = "," if t < len(g["gluings"]) - 1 else ""
            lines.append(f"      {_dumps(row)}{sep}")
        lines.append("    ]")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> FacePoset:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("top level must be an object")
    if data.get("format", FORMAT) != FORMAT or data.get("version", VERSION) != VERSION:
        raise FormatError(f"unsupported format {data.get('format')!r} version {data.get('version')!r}")
    spec = GluingSpec.from_json(data["gluing_spec"]) if data.get("gluing_spec") else None
    if "faces" not in data:
        if spec is None:
            raise FormatError("document has neither faces nor gluing_spec")
        return build_complex(spec)
    try:
        faces = tuple(
            tuple(Face(tuple(int(x) for x in rec["boundary"]), tuple(int(x) for x in rec["vertices"])) for rec in fs)
            for fs in data["faces"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed face record: {exc}") from exc
    if len(faces) != data.get("dimension", len(faces) - 1) + 1:
        raise FormatError("dimension does not match the number of face lists")
    _check_ranges(faces)
    return FacePoset(faces, spec)


def _check_ranges(faces) -> None:
    n_v = len(faces[0]) if faces else 0
    for k, fs in enumerate(faces):
        for i, f in enumerate(fs):
            if len(f.vertices) != k + 1 or len(f.boundary) != (k + 1 if k else 0):
                raise FormatError(f"{k}-face {i} has the wrong arity")
            if any(not 0 <= v < n_v for v in f.vertices):
                raise FormatError(f"{k}-face {i} names an unknown vertex")
            if k and any(not 0 <= b < len(faces[k - 1]) for b in f.boundary):
                raise FormatError(f"{k}-face {i} names an unknown boundary face")
        if k == 0 and any(f.vertices != (i,) for i, f in enumerate(fs)):
            raise FormatError("vertex i must list vertices [i]")


def read(path: str) -> FacePoset:
    if path == "-":
        return loads(sys.stdin.read())
    with open(path) as fh:
        return loads(fh.read())


def write(p: FacePoset, out: TextIO) -> None:
    out.write(dumps(p))
