import json
import os
import subprocess
import sys

from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from hocolim import _pykernels, kernels
from hocolim import constructions as cons
from hocolim.category import cyclic_group
from conftest import subcomplexes


def sympy_invariants(dense):
    if not dense or not dense[0]:
        return []
    D = smith_normal_form(Matrix(dense), domain=ZZ)
    return sorted(abs(int(D[j, j])) for j in range(min(D.shape)) if D[j, j] != 0)


def sparse(dense):
    return [{c: v for c, v in enumerate(row) if v} for row in dense]


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_smith_invariants_match_sympy(dense):
    ours = sorted(kernels.smith_invariants(sparse(dense), len(dense[0])))
    assert ours == sympy_invariants(dense)


@given(matrices)
def test_backends_agree_on_smith(dense):
    a = sorted(kernels.smith_invariants(sparse(dense), len(dense[0])))
    b = sorted(_pykernels.smith_invariants(sparse(dense), len(dense[0])))
    assert a == b


def test_large_entries_fall_back_to_exact_arithmetic():
    big = 2 ** 62
    dense = [[big, 3], [5, big]]
    assert sorted(kernels.smith_invariants(sparse(dense), 2)) == sympy_invariants(dense)


@given(subcomplexes())
def test_backends_agree_on_identities(X):
    args = (list(X.sizes()), X.faces, X.degeneracies)
    assert kernels.check_identities(*args) == _pykernels.check_identities(*args) is None


def test_backends_report_the_same_violation():
    X = cyclic_group(2).nerve(4)
    faces = [list(map(list, lev)) for lev in X.faces]
    faces[3][1][5] = (faces[3][1][5] + 1) % X.size(2)
    args = (list(X.sizes()), faces, X.degeneracies)
    bad = _pykernels.check_identities(*args)
    assert bad is not None
    assert kernels.check_identities(*args) == bad


def test_pure_python_switch():
    code = ("import json; from hocolim import kernels, homology, category;"
            "X = category.cyclic_group(2).nerve(4);"
            "print(json.dumps([kernels.BACKEND, [g.to_list() for g in homology.homology(X, [0, 1, 2])]]))")
    env = dict(os.environ, HOCOLIM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, groups = json.loads(out.stdout)
    assert backend == "python"
    assert groups == [[1, []], [0, [2]], [0, []]]


def test_compiled_backend_is_built():
    # the package is installed with its extension; the fallback is exercised above
    assert kernels.BACKEND in ("cython", "python")
    assert cons.standard_simplex(3, 3).validate()
