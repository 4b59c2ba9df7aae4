import json

import pytest
from hypothesis import given

from hocolim import constructions as cons
from hocolim import corpus, serialize
from hocolim.category import cyclic_group
from hocolim.diagrams import DiagramMap, SimplicialDiagram
from hocolim.errors import SimplicialIdentityError
from hocolim.simplicial import OverObject, SimplicialMap, TruncatedSimplicialSet
from conftest import posets, subcomplexes


def roundtrip(obj):
    text = serialize.dumps(obj)
    back = serialize.loads(text)
    assert serialize.dumps(back) == text
    return back


@given(subcomplexes())
def test_simplicial_set_roundtrip(X):
    Y = roundtrip(X)
    assert isinstance(Y, TruncatedSimplicialSet)
    assert Y.faces == X.faces and Y.degeneracies == X.degeneracies and Y.exact_dim == X.exact_dim


@given(posets())
def test_category_roundtrip(A):
    B = roundtrip(A)
    assert len(B.objects) == len(A.objects) and len(B.morphisms) == len(A.morphisms)


@pytest.mark.parametrize("name", sorted(corpus.CATEGORIES))
def test_corpus_categories_roundtrip(name):
    roundtrip(corpus.category(name))


def test_reedy_map_over_and_diagram_roundtrip():
    R = roundtrip(corpus.retraction_reedy())
    assert R.degree == {"c0": 0, "c1": 1}
    f = roundtrip(cons.horn(2, 1, 2).inclusion)
    assert isinstance(f, SimplicialMap) and f.is_mono()
    v = cons.vertex_map(cons.standard_simplex(2, 2), 1)
    ov = roundtrip(OverObject(v.source, v))
    assert isinstance(ov, OverObject)
    F = roundtrip(corpus.discrete_swap(cyclic_group(2), 2, lambda f: f == "g1"))
    assert isinstance(F, SimplicialDiagram)
    m = roundtrip(corpus.left_only_fixture(2))
    assert isinstance(m, DiagramMap) and m.source.shape is m.target.shape


def test_canonical_form_is_stable():
    X = cons.standard_simplex(1, 2)
    a, b = serialize.dumps(X), serialize.dumps(X)
    assert a == b and a.endswith("\n")
    assert serialize.digest(a) == serialize.digest(a.encode())
    assert json.loads(a)["type"] == "simplicial_set"


def test_labels():
    assert serialize.label("x") == "x"
    assert serialize.label((0, ("a", ()))) == '[0,["a",[]]]'


def test_schema_errors():
    with pytest.raises(serialize.SchemaError):
        serialize.loads("{")
    with pytest.raises(serialize.SchemaError):
        serialize.loads('{"type": "nonsense"}')
    with pytest.raises(serialize.SchemaError):
        serialize.loads('{"type": "simplicial_set", "truncation": 1, "levels": [["a"]]}')
    doc = serialize.to_doc(cons.point(1))
    with pytest.raises(serialize.SchemaError):
        serialize.Loader().load(doc, expect="category")


def test_identity_errors_surface_on_load():
    doc = serialize.to_doc(cons.standard_simplex(2, 2))
    row = doc["faces"]["2"][0]
    row[0], row[1] = row[1], row[0]
    with pytest.raises(SimplicialIdentityError):
        serialize.loads(serialize.canonical(doc))


def test_path_references_and_sharing(tmp_path):
    corpus.write_fixtures(tmp_path, N=2)
    ld = serialize.Loader()
    F = ld.load_path(tmp_path / "swap-over-chain-1.json")
    A = ld.load_path(tmp_path / "chain-1.json")
    assert F.shape is A
    assert F["0"] is F["1"]
    assert len(ld.files) == 3
