"""Monotone maps [k] -> [n], stored as tuples of values.

A simplicial operator ``theta`` acts contravariantly: ``theta^* x`` of an
n-simplex ``x`` is a k-simplex.  All helpers here are pure and cached.
"""
from functools import lru_cache
from itertools import combinations_with_replacement

Operator = tuple


@lru_cache(maxsize=None)
def identity(n):
    return tuple(range(n + 1))


@lru_cache(maxsize=None)
def coface(n, i):
    """delta_i : [n-1] -> [n], skipping i."""
    return tuple(j for j in range(n + 1) if j != i)


@lru_cache(maxsize=None)
def codegeneracy(n, i):
    """sigma_i : [n+1] -> [n], hitting i twice."""
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


def compose(outer, inner):
    """outer . inner  (inner applied first)."""
    return tuple(outer[v] for v in inner)


@lru_cache(maxsize=None)
def monotone_maps(k, n):
    """All monotone maps [k] -> [n] in lexicographic order."""
    return tuple(combinations_with_replacement(range(n + 1), k + 1))


def is_monotone(theta):
    return all(a <= b for a, b in zip(theta, theta[1:]))


def is_injective(theta):
    return all(a < b for a, b in zip(theta, theta[1:]))


def is_surjective(theta, n):
    return theta[0] == 0 and theta[-1] == n and all(b - a <= 1 for a, b in zip(theta, theta[1:]))


def image(theta):
    out = []
    for v in theta:
        if not out or out[-1] != v:
            out.append(v)
    return tuple(out)


def split(theta):
    """Factor theta = injection . surjection; returns (surjection, image)."""
    im = image(theta)
    rank = {v: r for r, v in enumerate(im)}
    return tuple(rank[v] for v in theta), im


def restrict(theta, start, stop):
    """theta restricted to {start..stop}, renormalised to start at 0 in the source."""
    return theta[start:stop + 1]


def join(theta, phi, m, n):
    """theta (+) phi : [k+l+1] -> [m+n+1] for theta:[k]->[m], phi:[l]->[n]."""
    return tuple(theta) + tuple(m + 1 + v for v in phi)
