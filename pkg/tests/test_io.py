import json

import pytest

from dnsurf import generators as gen
from dnsurf import io
from dnsurf.errors import FormatError
from dnsurf.poset import build_complex, to_gluing_spec, validate

GENERATED = {
    "two_sphere": gen.two_tetrahedron_sphere,
    "lens21": lambda: gen.lens_standard((2, 1)),
    "lens52": lambda: gen.lens_standard((5, 2)),
    "cyclic7": lambda: gen.cyclic_polytope_boundary(7),
    "cycle2": lambda: gen.cycle(2),
    "torus": gen.torus7,
}


@pytest.mark.parametrize("name", list(GENERATED))
def test_round_trip_is_byte_identical(name):
    p = GENERATED[name]()
    text = io.dumps(p)
    q = io.loads(text)
    assert q == p and q.digest == p.digest
    assert io.dumps(q) == text
    json.loads(text)


def test_gluing_spec_echo_round_trips(two_sphere):
    text = io.dumps(two_sphere)
    assert '"gluing_spec"' in text
    q = io.loads(text)
    assert q.gluing_spec == two_sphere.gluing_spec
    assert io.dumps(q) == text


def test_gluing_only_document_is_built(lens21):
    doc = {"format": "dnsurf-poset", "version": 1, "gluing_spec": to_gluing_spec(lens21).to_json()}
    q = io.loads(json.dumps(doc))
    assert q.f_vector == lens21.f_vector and validate(q).is_closed_3_manifold
    assert q == build_complex(to_gluing_spec(lens21))


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"format": "other", "version": 1, "faces": []}',
        '{"dimension": 1, "faces": [[{"boundary": [], "vertices": [0]}], [{"boundary": [0, 5], "vertices": [0, 0]}]]}',
        '{"dimension": 2, "faces": [[{"boundary": [], "vertices": [0]}]]}',
        '{"version": 1}',
    ],
)
def test_malformed_documents(text):
    with pytest.raises(FormatError):
        io.loads(text)
