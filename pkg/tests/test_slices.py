from hypothesis import given

from hocolim import constructions as cons
from hocolim import search, slices
from hocolim.category import chain
from hocolim.simplicial import SimplicialMap
from conftest import subcomplexes
from oracles import monotone_sequences


def test_decalage_examples():
    D, lam, d0 = slices.decalage(cons.point(2))
    assert D.sizes() == (1, 1)
    D, _, _ = slices.decalage(cons.standard_simplex(1, 2))
    assert D.sizes() == (3, 4)


def test_under_slice_examples():
    S = slices.under_slice(cons.point(2), 0).total
    assert S.sizes() == (1, 1)
    B = chain(1).nerve(2)
    S = slices.under_slice(B, B.index(0, ("0", ()))).total
    assert S.size(0) == 2 and S.nondegenerate_count(1) == 1


@given(subcomplexes(max_dim=3, N=3))
def test_under_slice_is_the_decalage_fibre(B):
    for b in range(B.size(0)):
        direct = slices.under_slice(B, b)
        fibre, _ = slices.under_slice_via_decalage(B, b)
        assert direct.total.sizes() == fibre.total.sizes()
        assert search.find_isomorphism(direct.total, fibre.total) is not None


@given(subcomplexes(max_dim=2, N=3))
def test_over_slice_pairs_match_fibre_product(X):
    pi = SimplicialMap.identity(X)
    for b in range(X.size(0)):
        S, _ = slices.vertex_slice(pi, b, X.N - 1)
        fp = slices.vertex_slice_via_fiber(pi, b)
        assert S.sizes() == fp.obj.sizes()


def test_identity_simplex_slice_level_zero():
    for n in range(3):
        D = cons.standard_simplex(n, n + 1)
        top = D.index(n, tuple(range(n + 1)))
        S, _ = slices.simplex_slice(SimplicialMap.identity(D), n, top, 0)
        # (x, xi) with xi in (Delta^n)_{n+1}, xi restricted to the last n+1 vertices = identity
        expected = sum(1 for xi in monotone_sequences(n + 1, n) if xi[1:] == tuple(range(n + 1)))
        assert S.size(0) == expected == 1


def test_slice_face_and_vertex_maps_are_maps():
    B = cons.standard_simplex(2, 4)
    pi = SimplicialMap.identity(B)
    beta = B.index(1, (0, 2))
    assert slices.slice_face_map(pi, 1, beta, 1).is_valid()
    assert slices.slice_initial_vertex_map(pi, 1, beta, 1).is_valid()
