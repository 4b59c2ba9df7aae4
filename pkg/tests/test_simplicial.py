import pytest
from hypothesis import given
from hypothesis import strategies as st

from hocolim import constructions as cons
from hocolim import ops
from hocolim.errors import MapError, SimplicialError, SimplicialIdentityError, TruncationError
from hocolim.simplicial import SimplicialMap, TruncatedSimplicialSet
from conftest import subcomplexes
from oracles import identities_hold, monotone_sequences


def tables(X):
    faces = [[]] + [[list(r) for r in X.faces[n]] for n in range(1, X.N + 1)]
    degens = [[list(r) for r in X.degeneracies[n]] for n in range(X.N)] + [[]]
    return faces, degens


def test_standard_simplex_sizes():
    assert cons.standard_simplex(2, 2).sizes() == (3, 6, 10)
    assert cons.standard_simplex(0, 3).sizes() == (1, 1, 1, 1)
    D1 = cons.standard_simplex(1, 2)
    assert D1.size(2) == 4 and D1.nondegenerate_count(2) == 0


@pytest.mark.parametrize("n,N", [(0, 2), (1, 3), (2, 3), (3, 3)])
def test_standard_simplex_levels_are_monotone_maps(n, N):
    D = cons.standard_simplex(n, N)
    for k in range(N + 1):
        assert sorted(D.keys[k]) == monotone_sequences(k, n)


@given(subcomplexes())
def test_constructed_objects_satisfy_identities(X):
    faces, degens = tables(X)
    assert identities_hold(X.sizes(), faces, degens)
    assert X.validate()


@given(subcomplexes(max_dim=2, N=2), st.data())
def test_validate_agrees_with_literal_identity_check(X, data):
    faces, degens = tables(X)
    sizes = X.sizes()
    if data.draw(st.booleans()) and X.N >= 1:
        n = data.draw(st.integers(1, X.N))
        i = data.draw(st.integers(0, n))
        x = data.draw(st.integers(0, sizes[n] - 1))
        faces[n][i][x] = data.draw(st.integers(0, sizes[n - 1] - 1))
    elif X.N >= 1:
        n = data.draw(st.integers(0, X.N - 1))
        i = data.draw(st.integers(0, n))
        x = data.draw(st.integers(0, sizes[n] - 1))
        degens[n][i][x] = data.draw(st.integers(0, sizes[n + 1] - 1))
    expected = identities_hold(sizes, faces, degens) and all(
        len(set(r)) == len(r) for lev in degens for r in lev)
    try:
        TruncatedSimplicialSet(X.keys, faces, degens)
        accepted = True
    except SimplicialError:
        accepted = False
    assert accepted == expected


def test_identity_error_names_the_failure():
    X = cons.standard_simplex(2, 3)
    faces, degens = tables(X)
    top = X.index(2, (0, 1, 2))
    faces[2][0][top], faces[2][1][top] = faces[2][1][top], faces[2][0][top]
    with pytest.raises(SimplicialIdentityError) as exc:
        TruncatedSimplicialSet(X.keys, faces, degens)
    e = exc.value
    assert e.level >= 1 and e.identity and len(e.indices) == 2


@given(subcomplexes())
def test_eilenberg_zilber(X):
    for n in range(X.N + 1):
        seen = {}
        for x in range(X.size(n)):
            m, y, sigma = X.decompose(n, x)
            assert not X.is_degenerate(m, y)
            assert ops.is_surjective(sigma, m)
            assert X.apply(m, y, sigma) == x
            assert (m, y, sigma) not in seen
            seen[(m, y, sigma)] = x


@given(subcomplexes(), st.data())
def test_apply_matches_faces(X, data):
    if X.N < 1:
        return
    n = data.draw(st.integers(1, X.N))
    x = data.draw(st.integers(0, X.size(n) - 1))
    for i in range(n + 1):
        assert X.apply(n, x, ops.coface(n, i)) == X.faces[n][i][x]


def test_truncation_and_exactness():
    D = cons.standard_simplex(2, 3)
    assert D.exact_dim == 2
    assert D.truncated(1).sizes() == (3, 6)
    with pytest.raises(TruncationError):
        D.truncated(4)
    with pytest.raises(SimplicialError):
        TruncatedSimplicialSet(D.keys, tables(D)[0], tables(D)[1], exact_dim=1)


def test_map_validation_and_composition():
    D1 = cons.standard_simplex(1, 2)
    ident = SimplicialMap.identity(D1)
    assert ident.is_iso() and ident.compose(ident).same_as(ident)
    flip = [[1, 0]] + [[D1.index(n, tuple(1 - v for v in reversed(D1.keys[n][x]))) for x in range(D1.size(n))]
                       for n in range(1, 3)]
    with pytest.raises(MapError):
        SimplicialMap(D1, D1, flip)


def test_over_object_projection():
    D = cons.standard_simplex(2, 2)
    v = cons.vertex_map(D, 1)
    assert v.components[0] == (1,)
    assert v.is_mono() and not v.is_epi()
