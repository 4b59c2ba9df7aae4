import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def monotone(draw, k=None, n=None):
    """A monotone map [k] -> [n] as a tuple."""
    n = draw(st.integers(0, 4)) if n is None else n
    k = draw(st.integers(0, 4)) if k is None else k
    return tuple(sorted(draw(st.lists(st.integers(0, n), min_size=k + 1, max_size=k + 1))))


@st.composite
def subcomplexes(draw, max_dim=3, N=None):
    """A simplicial subset of Delta^n generated by a random set of simplices."""
    from hocolim import constructions as cons
    n = draw(st.integers(0, max_dim))
    N = n if N is None else N
    D = cons.standard_simplex(n, N)
    gens = draw(st.lists(st.tuples(st.integers(0, n)).flatmap(
        lambda t: st.tuples(st.just(t[0]), st.integers(0, D.size(t[0]) - 1))), min_size=1, max_size=4))
    return cons.subcomplex(D, gens).obj


@st.composite
def posets(draw, max_size=4):
    """A random finite poset on 0..k-1 refining the usual order."""
    from hocolim.category import poset_category
    k = draw(st.integers(1, max_size))
    rel = [(a, b) for a in range(k) for b in range(a + 1, k) if draw(st.booleans())]
    return poset_category([str(a) for a in range(k)], [(str(a), str(b)) for a, b in rel], name="P")
