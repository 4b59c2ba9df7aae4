import pytest
from hypothesis import given, settings

from hocolim import constructions as cons
from hocolim import search
from hocolim.errors import SimplicialError
from hocolim.simplicial import SimplicialMap
from conftest import subcomplexes
from oracles import brute_maps, compose_tables, nondegenerate


def test_horn_and_boundary_counts():
    L = cons.horn(2, 0, 2).obj
    assert L.nondegenerate_counts() == (3, 2, 0)
    assert cons.boundary(1, 1).obj.sizes() == (2, 2)
    assert cons.boundary(1, 1).obj.nondegenerate_counts() == (2, 0)


def test_generalized_horn_keeps_outer_faces():
    sub = cons.boundary_and_horn(3, {1, 2}, 3)
    D = cons.standard_simplex(3, 3)
    faces = {D.keys[2][sub.inclusion.components[2][x]] for x in sub.obj.nondegenerate(2)}
    assert faces == {(1, 2, 3), (0, 1, 2)}


def test_boundary_and_horn_rejects_full_set():
    with pytest.raises(SimplicialError):
        cons.boundary_and_horn(2, {0, 1, 2}, 2)
    with pytest.raises(SimplicialError):
        cons.boundary_and_horn(3, {0}, 2)


def test_product_examples():
    D1 = cons.standard_simplex(1, 2)
    P = cons.product(D1, D1).obj
    assert P.size(1) == 9
    assert P.nondegenerate_count(2) == 2
    X = cons.horn(2, 1, 2).obj
    unit = cons.product(X, cons.point(2))
    assert unit.pr1.is_iso()


def test_fiber_product_examples():
    D1 = cons.standard_simplex(1, 2)
    a, b = cons.vertex_map(D1, 0), cons.vertex_map(D1, 1)
    assert cons.fiber_product(a, b).obj.is_empty()
    X = cons.horn(2, 1, 2).obj
    f = cons.to_point(X)
    fp = cons.fiber_product(f, SimplicialMap.identity(f.target))
    assert fp.pr1.is_iso()


def test_pushout_examples():
    D1 = cons.standard_simplex(1, 2)
    one, zero = cons.vertex_map(D1, 1), cons.vertex_map(D1, 0)
    P = cons.pushout(one, zero).obj
    assert P.nondegenerate_counts()[:2] == (3, 2)
    X, Y = cons.point(2), cons.standard_simplex(1, 2)
    C = cons.coproduct(X, Y).obj
    assert C.sizes() == tuple(a + b for a, b in zip(X.sizes(), Y.sizes()))


@settings(max_examples=15)
@given(subcomplexes(max_dim=2, N=2), subcomplexes(max_dim=2, N=2))
def test_fiber_product_universal_property(X, Y):
    """Cones from Delta^0, Delta^1 correspond bijectively to maps into the fibre product."""
    B = cons.standard_simplex(1, 2)
    fs = brute_maps(X, B)
    gs = brute_maps(Y, B)
    if not fs or not gs:
        return
    f = SimplicialMap(X, B, fs[-1])
    g = SimplicialMap(Y, B, gs[0])
    fp = cons.fiber_product(f, g)
    for T in (cons.point(2), cons.standard_simplex(1, 2)):
        cones = [(u, v) for u in brute_maps(T, X) for v in brute_maps(T, Y)
                 if compose_tables(f.components, u) == compose_tables(g.components, v)]
        maps = brute_maps(T, fp.obj)
        assert len(maps) == len(cones)
        assert {(compose_tables(fp.pr1.components, w), compose_tables(fp.pr2.components, w)) for w in maps} \
            == set(cones)


@given(subcomplexes(max_dim=2))
def test_image_of_inclusion_is_itself(X):
    D = cons.standard_simplex(max(X.N, 0), X.N)
    S = cons.subcomplex(D, [(n, x) for n in range(X.N + 1) for x in range(min(1, D.size(n)))])
    assert cons.image(S.inclusion).obj.sizes() == S.obj.sizes()


def test_simplex_map_is_yoneda():
    X = cons.horn(2, 1, 2).obj
    for x in range(X.size(1)):
        m = cons.simplex_map(X, 1, x)
        top = m.source.index(1, (0, 1))
        assert m.components[1][top] == x


def test_relabel_is_an_isomorphism():
    X = cons.boundary(2, 2).obj
    Y, iso = cons.relabel(X, lambda n, k: ("r", k))
    assert iso.is_iso() and Y.sizes() == X.sizes()
    assert search.find_isomorphism(X, Y) is not None


def test_discrete_and_empty():
    K = cons.discrete(["x", "y"], 3)
    assert K.sizes() == (2, 2, 2, 2) and K.nondegenerate_counts() == (2, 0, 0, 0)
    E = cons.empty(2)
    assert E.is_empty() and len(brute_maps(E, K)) == 1


def test_nondegenerate_counts_match_oracle():
    for X in (cons.standard_simplex(3, 3), cons.horn(3, 1, 3).obj,
              cons.product(cons.standard_simplex(1, 3), cons.standard_simplex(2, 3)).obj):
        assert X.nondegenerate_counts() == tuple(len(nondegenerate(X, n)) for n in range(X.N + 1))
