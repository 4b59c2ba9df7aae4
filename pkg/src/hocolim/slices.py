"""Decalage, under/over slices of a simplicial set, and the slices X/beta over a simplex."""
from __future__ import annotations

from . import constructions as cons
from . import ops
from .errors import SimplicialError, TruncationError
from .simplicial import OverObject, SimplicialMap, TruncatedSimplicialSet


def _shift_action(B):
    """theta^* on B_{n+1} labels acting through 1 (+) theta (a fixed initial vertex)."""
    def act(n, key, theta):
        return B.act(n + 1, key, (0,) + tuple(t + 1 for t in theta))
    return act


def decalage(B):
    """Dec(B) at truncation N-1 with the initial-vertex map and the map d_0 to B.

    Returns ``(Dec, lam, d0)`` where ``lam: Dec -> discrete(B_0)`` and
    ``d0: Dec -> B.truncated(N-1)``.
    """
    if B.N < 1:
        raise TruncationError(1, B.N, "decalage")
    M = B.N - 1
    D = TruncatedSimplicialSet.from_model(M, [B.keys[n + 1] for n in range(M + 1)], _shift_action(B),
                                          name=f"Dec({B.name})", sort=False, validate=False)
    D.with_exactness(B.exact_dim)
    V = cons.discrete(B.keys[0], M, name="vertices")
    lam = SimplicialMap.from_keys(D, V, lambda n, k: B.keys[0][B.vertex(n + 1, B.index(n + 1, k), 0)],
                                  validate=False)
    Bt = B.truncated(M)
    d0 = SimplicialMap(D, Bt, [B.faces[n + 1][0] for n in range(M + 1)], validate=False)
    return D, lam, d0


def under_slice(B, b):
    """b/B over B (truncated at N-1): (n+1)-simplices with initial vertex b, structure map d_0.

    ``b`` is a vertex index.
    """
    if B.N < 1:
        raise TruncationError(1, B.N, "under slice")
    M = B.N - 1
    levels = [[B.keys[n + 1][x] for x in range(B.size(n + 1)) if B.vertex(n + 1, x, 0) == b]
              for n in range(M + 1)]
    S = TruncatedSimplicialSet.from_model(M, levels, _shift_action(B), name=f"{b}/{B.name}",
                                          sort=False, validate=False)
    S.with_exactness(B.exact_dim)
    Bt = B.truncated(M)
    st = SimplicialMap.from_keys(S, Bt, lambda n, k: B.keys[n][B.faces[n + 1][0][B.index(n + 1, k)]],
                                 validate=False)
    return OverObject(S, st)


def under_slice_via_decalage(B, b):
    """The fibre of the initial-vertex map Dec(B) -> B_0 over b."""
    D, lam, d0 = decalage(B)
    pt = cons.vertex_map(lam.target, lam.target.index(0, B.keys[0][b]))
    fp = cons.fiber_product(lam, pt)
    return OverObject(fp.obj, d0.compose(fp.pr1)), fp


def over_slice(B, b):
    """B/b over B (truncated at N-1): (n+1)-simplices with final vertex b, structure map d_last."""
    if B.N < 1:
        raise TruncationError(1, B.N, "over slice")
    M = B.N - 1
    levels = [[B.keys[n + 1][x] for x in range(B.size(n + 1)) if B.vertex(n + 1, x, n + 1) == b]
              for n in range(M + 1)]

    def act(n, key, theta):
        return B.act(n + 1, key, tuple(theta) + (n + 1,))

    S = TruncatedSimplicialSet.from_model(M, levels, act, name=f"{B.name}/{b}", sort=False, validate=False)
    S.with_exactness(B.exact_dim)
    Bt = B.truncated(M)
    st = SimplicialMap.from_keys(S, Bt, lambda n, k: B.keys[n][B.faces[n + 1][n + 1][B.index(n + 1, k)]],
                                 validate=False)
    return OverObject(S, st)


def simplex_slice(pi, beta_dim, beta, M, *, name=None):
    """X/beta up to level M: pairs (x in X_m, xi in B_{m+k+1}) with xi|[0..m] = pi(x), xi|[m+1..] = beta.

    ``beta`` is a simplex index of dimension ``beta_dim``; operators act by theta (+) id.
    Demands X at level M and B at level M + beta_dim + 1.
    """
    X, B = pi.source, pi.target
    k = beta_dim
    X.require(M, "simplex slice source")
    B.require(M + k + 1, "simplex slice base")
    levels = []
    for m in range(M + 1):
        by_proj = {}
        for x in range(X.size(m)):
            by_proj.setdefault(pi.components[m][x], []).append(x)
        tail = tuple(range(m + 1, m + k + 2))
        head = tuple(range(m + 1))
        lev = []
        for xi in range(B.size(m + k + 1)):
            if B.apply(m + k + 1, xi, tail) != beta:
                continue
            for x in by_proj.get(B.apply(m + k + 1, xi, head), ()):
                lev.append((X.keys[m][x], B.keys[m + k + 1][xi]))
        levels.append(lev)

    def act(m, key, theta):
        x, xi = key
        return (X.act(m, x, theta), B.act(m + k + 1, xi, ops.join(theta, ops.identity(k), m, k)))

    S = TruncatedSimplicialSet.from_model(M, levels, act, name=name or "X/beta", validate=False)
    proj = SimplicialMap.from_keys(S, X.truncated(M), lambda m, key: key[0], validate=False)
    return S, proj


def slice_face_map(pi, beta_dim, beta, M):
    """X/beta -> X/d_k beta, dropping the final vertex of the beta part."""
    B = pi.target
    k = beta_dim
    if k < 1:
        raise SimplicialError("the face map needs a simplex of positive dimension")
    face = B.faces[k][k][beta]
    S, _ = simplex_slice(pi, k, beta, M)
    T, _ = simplex_slice(pi, k - 1, face, M)

    def fn(m, key):
        x, xi = key
        return (x, B.act(m + k + 1, xi, ops.coface(m + k + 1, m + k + 1)))

    return SimplicialMap.from_keys(S, T, fn, validate=False)


def slice_initial_vertex_map(pi, beta_dim, beta, M):
    """X/beta -> X/beta_0, keeping only the initial vertex of the beta part."""
    B = pi.target
    k = beta_dim
    b0 = B.vertex(k, beta, 0)
    S, _ = simplex_slice(pi, k, beta, M)
    T, _ = simplex_slice(pi, 0, b0, M)

    def fn(m, key):
        x, xi = key
        return (x, B.act(m + k + 1, xi, tuple(range(m + 2))))

    return SimplicialMap.from_keys(S, T, fn, validate=False)


def vertex_slice(pi, b, M):
    """X/b for a vertex index b (pairs formula)."""
    return simplex_slice(pi, 0, b, M, name=f"X/{pi.target.keys[0][b]}")


def vertex_slice_via_fiber(pi, b):
    """X x_B B/b, the fibre-product description (truncation N-1)."""
    ov = over_slice(pi.target, b)
    return cons.fiber_product(pi.truncated(pi.source.N - 1), ov.structure)


def induced_slice_map(f, pi_x, pi_y, beta_dim, beta, M):
    """X/beta -> Y/beta for a map f: X -> Y over B."""
    S, _ = simplex_slice(pi_x, beta_dim, beta, M)
    T, _ = simplex_slice(pi_y, beta_dim, beta, M)
    return SimplicialMap.from_keys(S, T, lambda m, key: (f.key_image(m, key[0]), key[1]), validate=False)
