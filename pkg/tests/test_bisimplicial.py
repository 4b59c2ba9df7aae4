from hypothesis import given

from hocolim import bisimplicial as bi
from hocolim import constructions as cons
from hocolim import search
from conftest import subcomplexes


@given(subcomplexes(max_dim=2, N=2))
def test_diagonal_of_constant_is_the_base(B):
    D = bi.diagonal(bi.constant_bisimplicial(B, B.N))
    assert D.same_tables(B) or search.find_isomorphism(D, B) is not None


@given(subcomplexes(max_dim=2, N=2), subcomplexes(max_dim=2, N=2))
def test_diagonal_of_external_product_is_product(X, Y):
    D = bi.diagonal(bi.external_product(X, Y))
    P = cons.product(X, Y).obj
    assert D.keys == P.keys
    assert D.faces == P.faces and D.degeneracies == P.degeneracies


def test_bisimplicial_validation():
    W = bi.external_product(cons.standard_simplex(1, 2), cons.standard_simplex(1, 2))
    assert W.validate()
    assert W.sizes()[1][2] == 3 * 4
