"""Standard simplices, horns, products, fibre products, pushouts and subobjects."""
from __future__ import annotations

from typing import NamedTuple

from . import ops
from .errors import MapError, SimplicialError
from .simplicial import SimplicialMap, TruncatedSimplicialSet, canon


class Product(NamedTuple):
    obj: TruncatedSimplicialSet
    pr1: SimplicialMap
    pr2: SimplicialMap


class FiberProduct(NamedTuple):
    obj: TruncatedSimplicialSet
    pr1: SimplicialMap
    pr2: SimplicialMap
    structure: SimplicialMap


class Pushout(NamedTuple):
    obj: TruncatedSimplicialSet
    left: SimplicialMap
    right: SimplicialMap


class Subobject(NamedTuple):
    obj: TruncatedSimplicialSet
    inclusion: SimplicialMap


def standard_simplex(n, N):
    """Delta^n truncated at N; k-simplices are monotone vertex tuples."""
    if n < 0 or N < 0:
        raise SimplicialError("dimensions must be non-negative")
    levels = [ops.monotone_maps(k, n) for k in range(N + 1)]

    def act(m, key, theta):
        return tuple(key[t] for t in theta)

    X = TruncatedSimplicialSet.from_model(N, levels, act, name=f"Delta^{n}", validate=False)
    X.exact_dim = min(n, N) if n <= N else None
    return X


def point(N):
    return standard_simplex(0, N)


def empty(N):
    return TruncatedSimplicialSet([[] for _ in range(N + 1)],
                                  [()] + [[()] * (n + 1) for n in range(1, N + 1)],
                                  [[()] * (n + 1) for n in range(N)],
                                  exact_dim=0, name="empty", validate=False)


def discrete(elements, N, name="discrete"):
    """Constant simplicial set on a finite set; every level is a copy of it."""
    elements = list(elements)
    levels = [elements for _ in range(N + 1)]
    X = TruncatedSimplicialSet.from_model(N, levels, lambda n, k, th: k, name=name, validate=False)
    X.exact_dim = 0
    return X


def subcomplex(X, generators, name="sub"):
    """Smallest simplicial subset containing the given ``(n, x)`` simplices."""
    N = X.N
    members = [set() for _ in range(N + 1)]
    stack = list(generators)
    while stack:
        n, x = stack.pop()
        if x in members[n]:
            continue
        members[n].add(x)
        if n > 0:
            for i in range(n + 1):
                stack.append((n - 1, X.faces[n][i][x]))
    for n in range(N):
        for x in list(members[n]):
            for i in range(n + 1):
                members[n + 1].add(X.degeneracies[n][i][x])
    return restrict_to(X, members, name=name)


def restrict_to(X, members, name="sub"):
    """Subobject on levelwise index sets already known to be closed."""
    N = X.N
    order = [sorted(members[n]) for n in range(N + 1)]
    pos = [{x: j for j, x in enumerate(order[n])} for n in range(N + 1)]
    keys = [[X.keys[n][x] for x in order[n]] for n in range(N + 1)]
    try:
        faces = [()] + [[tuple(pos[n - 1][X.faces[n][i][x]] for x in order[n]) for i in range(n + 1)]
                        for n in range(1, N + 1)]
        degens = [[tuple(pos[n + 1][X.degeneracies[n][i][x]] for x in order[n]) for i in range(n + 1)]
                  for n in range(N)]
    except KeyError:
        raise SimplicialError("member sets are not closed under faces and degeneracies") from None
    S = TruncatedSimplicialSet(keys, faces, degens, name=name, validate=False)
    if X.exact_dim is not None:
        S.with_exactness(X.exact_dim)
    inc = SimplicialMap(S, X, [tuple(order[n]) for n in range(N + 1)], validate=False)
    return Subobject(S, inc)


def boundary_and_horn(n, S, N):
    """The generalised horn: faces d_i of Delta^n with i not in S.

    ``S = {}`` gives the boundary, ``S = {k}`` the horn Lambda^n_k.
    Returns the subobject and its inclusion into ``standard_simplex(n, N)``.
    """
    S = frozenset(S)
    if N < n:
        raise SimplicialError("truncation below the simplex dimension")
    if not S <= set(range(n + 1)):
        raise SimplicialError("S must be a subset of {0..n}")
    if n > 0 and S == frozenset(range(n + 1)):
        raise SimplicialError("S may not contain every vertex index")
    D = standard_simplex(n, N)
    top = D.index(n, ops.identity(n))
    gens = [(n - 1, D.faces[n][i][top]) for i in range(n + 1) if i not in S] if n > 0 else []
    label = "boundary" if not S else f"horn{sorted(S)}"
    return subcomplex(D, gens, name=f"{label}^{n}")


def horn(n, k, N):
    return boundary_and_horn(n, {k}, N)


def boundary(n, N):
    return boundary_and_horn(n, set(), N)


def _tables_from_pairs(X, Y, pairs, name):
    """Shared builder for products and fibre products over index pairs."""
    N = X.N
    pos = [{p: j for j, p in enumerate(pairs[n])} for n in range(N + 1)]
    keys = [[(X.keys[n][a], Y.keys[n][b]) for a, b in pairs[n]] for n in range(N + 1)]
    faces = [()]
    for n in range(1, N + 1):
        rows = []
        for i in range(n + 1):
            fx, fy = X.faces[n][i], Y.faces[n][i]
            rows.append(tuple(pos[n - 1][(fx[a], fy[b])] for a, b in pairs[n]))
        faces.append(rows)
    degens = []
    for n in range(N):
        rows = []
        for i in range(n + 1):
            sx, sy = X.degeneracies[n][i], Y.degeneracies[n][i]
            rows.append(tuple(pos[n + 1][(sx[a], sy[b])] for a, b in pairs[n]))
        degens.append(rows)
    P = TruncatedSimplicialSet(keys, faces, degens, name=name, validate=False)
    p1 = SimplicialMap(P, X, [tuple(a for a, _ in pairs[n]) for n in range(N + 1)], validate=False)
    p2 = SimplicialMap(P, Y, [tuple(b for _, b in pairs[n]) for n in range(N + 1)], validate=False)
    return P, p1, p2


def _bound_sum(X, Y):
    if X.exact_dim is None or Y.exact_dim is None:
        return None
    return X.exact_dim + Y.exact_dim


def product(X, Y):
    """Levelwise cartesian product with its projections."""
    if X.N != Y.N:
        raise SimplicialError(f"truncation mismatch {X.N} vs {Y.N}")
    pairs = [[(a, b) for a in range(X.size(n)) for b in range(Y.size(n))] for n in range(X.N + 1)]
    P, p1, p2 = _tables_from_pairs(X, Y, pairs, f"({X.name} x {Y.name})")
    P.with_exactness(_bound_sum(X, Y))
    return Product(P, p1, p2)


def fiber_product(f, g):
    """Levelwise pullback of ``f: X -> B`` and ``g: Y -> B``."""
    X, Y, B = f.source, g.source, f.target
    if not (g.target is B or g.target.same_tables(B)):
        raise SimplicialError("fibre product needs a common codomain")
    if X.N != Y.N:
        raise SimplicialError("truncation mismatch")
    pairs = []
    for n in range(X.N + 1):
        by_image = {}
        for b, v in enumerate(g.components[n]):
            by_image.setdefault(v, []).append(b)
        pairs.append([(a, b) for a, v in enumerate(f.components[n]) for b in by_image.get(v, ())])
    P, p1, p2 = _tables_from_pairs(X, Y, pairs, f"({X.name} x_B {Y.name})")
    P.with_exactness(_bound_sum(X, Y))
    return FiberProduct(P, p1, p2, f.compose(p1))


def pushout(f, g):
    """Pushout of ``X <-f- A -g-> Y`` along a monomorphic leg.

    The result has labels ``(0, x)`` for simplices of X and ``(1, y)`` for
    simplices of Y outside the image of the mono leg.
    """
    if not (f.source is g.source or f.source.same_tables(g.source)):
        raise SimplicialError("pushout legs need a common domain")
    swapped = False
    if not g.is_mono():
        if not f.is_mono():
            raise SimplicialError("pushouts are only supported along a monomorphism")
        f, g = g, f
        swapped = True
    X, Y = f.target, g.target
    N = X.N
    if Y.N != N:
        raise SimplicialError("truncation mismatch")
    hit = []
    for n in range(N + 1):
        m = {}
        for a, y in enumerate(g.components[n]):
            m[y] = f.components[n][a]
        hit.append(m)
    rest = [[y for y in range(Y.size(n)) if y not in hit[n]] for n in range(N + 1)]
    rpos = [{y: X.size(n) + j for j, y in enumerate(rest[n])} for n in range(N + 1)]

    def where(n, y):
        return hit[n][y] if y in hit[n] else rpos[n][y]

    keys = [[(0, k) for k in X.keys[n]] + [(1, Y.keys[n][y]) for y in rest[n]] for n in range(N + 1)]
    faces = [()]
    for n in range(1, N + 1):
        faces.append([X.faces[n][i] + tuple(where(n - 1, Y.faces[n][i][y]) for y in rest[n])
                      for i in range(n + 1)])
    degens = []
    for n in range(N):
        degens.append([tuple(X.degeneracies[n][i]) + tuple(where(n + 1, Y.degeneracies[n][i][y]) for y in rest[n])
                       for i in range(n + 1)])
    P = TruncatedSimplicialSet(keys, faces, degens, name=f"({X.name} u {Y.name})", validate=False)
    if X.exact_dim is not None and Y.exact_dim is not None:
        P.with_exactness(max(X.exact_dim, Y.exact_dim))
    left = SimplicialMap(X, P, [tuple(range(X.size(n))) for n in range(N + 1)], validate=False)
    right = SimplicialMap(Y, P, [tuple(where(n, y) for y in range(Y.size(n))) for n in range(N + 1)],
                          validate=False)
    if swapped:
        return Pushout(P, right, left)
    return Pushout(P, left, right)


def coproduct(X, Y):
    return pushout(SimplicialMap(empty(X.N), X, [()] * (X.N + 1), validate=False),
                   SimplicialMap(empty(X.N), Y, [()] * (X.N + 1), validate=False))


def image(f):
    """The image subobject of a map."""
    return subcomplex(f.target, [(n, v) for n in range(f.source.N + 1) for v in set(f.components[n])],
                      name=f"im({f.name})")


def to_point(X):
    P = point(X.N)
    return SimplicialMap(X, P, [(0,) * X.size(n) for n in range(X.N + 1)], validate=False)


def from_empty(X):
    return SimplicialMap(empty(X.N), X, [()] * (X.N + 1), validate=False)


def vertex_map(X, v):
    """Delta^0 -> X picking the vertex with index v."""
    P = point(X.N)
    comps = []
    x = v
    for n in range(X.N + 1):
        comps.append((x,))
        if n < X.N:
            x = X.degeneracies[n][0][x]
    return SimplicialMap(P, X, comps, validate=False)


def simplex_map(X, n, x):
    """The map Delta^n -> X classifying an n-simplex (Yoneda)."""
    D = standard_simplex(n, X.N)
    comps = [tuple(X.apply(n, x, D.keys[k][j]) for j in range(D.size(k))) for k in range(X.N + 1)]
    return SimplicialMap(D, X, comps, validate=False)


def map_product(f, g):
    """f x g : X x Y -> X' x Y'."""
    P = product(f.source, g.source)
    Q = product(f.target, g.target)
    sizes = [g.target.size(n) for n in range(Q.obj.N + 1)]
    comps = []
    for n in range(P.obj.N + 1):
        comps.append(tuple(f.components[n][a] * sizes[n] + g.components[n][b]
                           for a, b in zip(P.pr1.components[n], P.pr2.components[n])))
    return P, Q, SimplicialMap(P.obj, Q.obj, comps, validate=False)


def relabel(X, fn, name=None):
    """Same tables, labels replaced by ``fn(n, key)``; rows reordered canonically."""
    new = [[fn(n, k) for k in X.keys[n]] for n in range(X.N + 1)]
    order = [sorted(range(X.size(n)), key=lambda j, n=n: canon(new[n][j])) for n in range(X.N + 1)]
    pos = [{old: j for j, old in enumerate(order[n])} for n in range(X.N + 1)]
    keys = [[new[n][o] for o in order[n]] for n in range(X.N + 1)]
    faces = [()] + [[tuple(pos[n - 1][X.faces[n][i][o]] for o in order[n]) for i in range(n + 1)]
                    for n in range(1, X.N + 1)]
    degens = [[tuple(pos[n + 1][X.degeneracies[n][i][o]] for o in order[n]) for i in range(n + 1)]
              for n in range(X.N)]
    Y = TruncatedSimplicialSet(keys, faces, degens, exact_dim=X.exact_dim,
                               name=name or X.name, validate=False)
    iso = SimplicialMap(X, Y, [tuple(pos[n][j] for j in range(X.size(n))) for n in range(X.N + 1)],
                        validate=False)
    return Y, iso


def check_maps_equal(f, g):
    if f.components != g.components:
        raise MapError("maps differ")
    return True
