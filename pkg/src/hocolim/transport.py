"""The functors between diagrams on A and simplicial sets over NA, and the comparison maps.

Labels used throughout:

* h_!F at level n: ``(alpha, x)`` with alpha a nerve string and x in F(a_0)_n.
* r_!X(b) at level n: ``(x, beta)`` with beta: (final vertex of pi x) -> b.
* r^*F at level n: ``(alpha, (x_0, ..., x_n))`` with x_i in F(a_i)_i and
  F(m_i)(x_{i-1}) = d_i x_i (the slim description).
* X//B at (m, n): ``(x, xi)`` with xi in B_{m+n+1} restricting to pi(x) on 0..m.
* B^{Delta^1} at level n: families ``(y_0, ..., y_n)`` in B_{n+1}, y_j the image
  of the prism simplex (0,0)..(0,j),(1,j)..(1,n); adjacent members share the
  face d_{j+1}.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import constructions as cons
from . import ops
from .bisimplicial import BisimplicialMap, BisimplicialSet, diagonal
from .category import over_projection, under_category, under_projection
from .diagrams import DiagramMap, SimplicialDiagram, from_key_actions
from .errors import DiagramError, MapError, SimplicialError, TruncationError
from .search import enumerate_maps_over
from .simplicial import OverObject, SimplicialMap, TruncatedSimplicialSet, canon


@dataclass
class IsoCertificate:
    """An isomorphism stored as an explicit inverse pair."""

    forward: object
    backward: object

    def check(self):
        f, g = self.forward, self.backward
        if isinstance(f, SimplicialMap):
            ok = f.is_valid() and g.is_valid()
            ok = ok and all(c == tuple(range(len(c))) for c in g.compose(f).components)
            ok = ok and all(c == tuple(range(len(c))) for c in f.compose(g).components)
            return ok
        for a in f.components:
            try:
                f.validate()
                g.validate()
            except (DiagramError, MapError):
                return False
            if any(c != tuple(range(len(c))) for c in g[a].compose(f[a]).components):
                return False
            if any(c != tuple(range(len(c))) for c in f[a].compose(g[a]).components):
                return False
        return True


def iso_from_keys(S, T, fn):
    """Certificate for a label bijection S -> T (raises if fn is not bijective)."""
    f = SimplicialMap.from_keys(S, T, fn, validate=False)
    if not f.is_iso():
        raise MapError("label map is not a bijection")
    return IsoCertificate(f, f.inverse())


def diagram_iso_from_keys(F, G, fn):
    comps = {}
    for a in F.shape.objects:
        c = SimplicialMap.from_keys(F[a], G[a], lambda n, k, a=a: fn(a, n, k), validate=False)
        if not c.is_iso():
            raise MapError(f"label map is not a bijection at {a!r}")
        comps[a] = c
    f = DiagramMap(F, G, comps, validate=False)
    return IsoCertificate(f, f.inverse())


def _bound(*parts):
    if any(p is None for p in parts):
        return None
    return sum(parts)


def _diagram_bound(F):
    dims = [X.exact_dim for X in F.values.values()]
    if any(d is None for d in dims):
        return None
    return max(dims, default=0)


def _action_key(F, f, n, key):
    A = F.shape
    if A.is_identity(f):
        return key
    return F.actions[f].key_image(n, key)


# ------------------------------------------------------------------ h_!
def h_shriek(F):
    """h_!F over NA, at the truncation of F."""
    A, N = F.shape, F.N
    NA = A.nerve(N)
    levels = [[(alpha, xk) for alpha in NA.keys[n] for xk in F[alpha[0]].keys[n]] for n in range(N + 1)]

    def act(n, key, theta):
        alpha, xk = key
        y = F[alpha[0]].act(n, xk, theta)
        arrow = A.string_arrow(alpha, 0, theta[0])
        return (A.act(n, alpha, theta), _action_key(F, arrow, len(theta) - 1, y))

    H = TruncatedSimplicialSet.from_model(N, levels, act, name=f"h!({F.name})", validate=False)
    H.with_exactness(_bound(NA.exact_dim, _diagram_bound(F)))
    return OverObject(H, SimplicialMap.from_keys(H, NA, lambda n, k: k[0], validate=False))


def h_shriek_map(m, HF=None, HG=None):
    """h_!(m) for a diagram map m: F -> G."""
    HF = HF or h_shriek(m.source)
    HG = HG or h_shriek(m.target)
    return SimplicialMap.from_keys(HF.total, HG.total,
                                   lambda n, k: (k[0], m[k[0][0]].key_image(n, k[1])), validate=False)


# ------------------------------------------------------------------ r_!
@dataclass
class RShriek:
    pairs: SimplicialDiagram
    fibered: SimplicialDiagram
    iso: IsoCertificate


def _over_nerve_key(A, alpha, beta):
    """The string of A/b lying over alpha whose final object is beta."""
    verts = A.string_vertices(alpha)
    n = len(verts) - 1
    fs = [A.compose(beta, A.string_arrow(alpha, i, n)) for i in range(n + 1)]
    return (fs[0], tuple((fs[i - 1], alpha[1][i - 1]) for i in range(1, n + 1)))


def r_shriek_pairs(X):
    """r_!X by the pairs formula (x, beta)."""
    pi = X.structure
    NA = pi.target
    A = _category_of(NA)
    T, N = X.total, X.total.N
    last = [[A.string_vertices(NA.keys[n][pi.components[n][x]])[-1] for x in range(T.size(n))]
            for n in range(N + 1)]
    values = {}
    for b in A.objects:
        levels = [[(T.keys[n][x], beta) for x in range(T.size(n)) for beta in A.hom(last[n][x], b)]
                  for n in range(N + 1)]

        def act(n, key, theta, T=T):
            xk, beta = key
            alpha = NA.keys[n][pi.components[n][T.index(n, xk)]]
            return (T.act(n, xk, theta), A.compose(beta, A.string_arrow(alpha, theta[-1], n)))

        V = TruncatedSimplicialSet.from_model(N, levels, act, name=f"r!X({b})", validate=False)
        V.with_exactness(T.exact_dim)
        values[b] = V
    return from_key_actions(A, values, lambda g, n, key: (key[0], A.compose(g, key[1])),
                            name="r!X", validate=False)


def r_shriek_fibered(X):
    """r_!X(b) = X x_NA N(A/b)."""
    pi = X.structure
    NA = pi.target
    A = _category_of(NA)
    N = X.total.N
    values = {}
    for b in A.objects:
        P = over_projection(A, b)
        fp = cons.fiber_product(pi, P.nerve_map(N))
        fp.obj.name = f"X x N(A/{b})"
        values[b] = fp.obj
    return from_key_actions(
        A, values,
        lambda g, n, key: (key[0], (A.compose(g, key[1][0]), tuple((A.compose(g, f), h) for f, h in key[1][1]))),
        name="X x N(A/-)", validate=False)


def r_shriek(X):
    """Both descriptions of r_!X with a certified isomorphism between them."""
    NA = X.structure.target
    A = _category_of(NA)
    P, Fb = r_shriek_pairs(X), r_shriek_fibered(X)
    pi = X.structure
    T = X.total

    def fn(b, n, key):
        xk, beta = key
        alpha = NA.keys[n][pi.components[n][T.index(n, xk)]]
        return (xk, _over_nerve_key(A, alpha, beta))

    return RShriek(P, Fb, diagram_iso_from_keys(P, Fb, fn))


def r_shriek_map(f, X, Y, RX=None, RY=None):
    """r_!(f) on the pairs description for f: X -> Y over NA."""
    RX = RX or r_shriek_pairs(X)
    RY = RY or r_shriek_pairs(Y)
    comps = {b: SimplicialMap.from_keys(RX[b], RY[b], lambda n, k: (f.key_image(n, k[0]), k[1]), validate=False)
             for b in RX.shape.objects}
    return DiagramMap(RX, RY, comps, validate=False)


def register_nerve(A, N):
    """The nerve of A at truncation N (nerves remember their category)."""
    return A.nerve(N)


def _category_of(NA):
    A = getattr(NA, "category", None)
    if A is None:
        raise SimplicialError("base is not the nerve of a finite category")
    return A


def over_nerve(A, X, structure):
    """Wrap a structure map X -> NA as an over-object, registering the nerve."""
    register_nerve(A, X.N)
    return OverObject(X, structure)


# ------------------------------------------------------------------ r^*
def _slim_sequences(F, A, alpha, last_face):
    verts = A.string_vertices(alpha)
    ms = alpha[1]
    out = []

    def grow(seq):
        i = len(seq)
        if i == len(verts):
            out.append(tuple(seq))
            return
        a = verts[i]
        if i == 0:
            cands = F[a].keys[0]
        else:
            prev = seq[-1]
            want = _action_key(F, ms[i - 1], i - 1, prev)
            cands = last_face[(a, i)].get(want, ())
        for c in cands:
            seq.append(c)
            grow(seq)
            seq.pop()

    grow([])
    return out


def r_star(F):
    """r^*F over NA via slim sequences, at the truncation of F."""
    A, N = F.shape, F.N
    NA = register_nerve(A, N)
    last_face = {}
    for a in A.objects:
        X = F[a]
        for i in range(1, N + 1):
            d = {}
            for x in range(X.size(i)):
                d.setdefault(X.keys[i - 1][X.faces[i][i][x]], []).append(X.keys[i][x])
            last_face[(a, i)] = d
    levels = []
    for n in range(N + 1):
        levels.append([(alpha, seq) for alpha in NA.keys[n] for seq in _slim_sequences(F, A, alpha, last_face)])

    def act(n, key, theta):
        alpha, seq = key
        verts = A.string_vertices(alpha)
        new = tuple(F[verts[theta[j]]].act(theta[j], seq[theta[j]], tuple(theta[:j + 1]))
                    for j in range(len(theta)))
        return (A.act(n, alpha, theta), new)

    R = TruncatedSimplicialSet.from_model(N, levels, act, name=f"r*({F.name})", validate=False)
    return OverObject(R, SimplicialMap.from_keys(R, NA, lambda n, k: k[0], validate=False))


def r_star_map(m, RF=None, RG=None):
    RF = RF or r_star(m.source)
    RG = RG or r_star(m.target)
    A = m.source.shape

    def fn(n, key):
        alpha, seq = key
        verts = A.string_vertices(alpha)
        return (alpha, tuple(m[verts[i]].key_image(i, x) for i, x in enumerate(seq)))

    return SimplicialMap.from_keys(RF.total, RG.total, fn, validate=False)


def representable_over(A, n, alpha, N):
    """Delta^n over NA classifying the string alpha."""
    NA = register_nerve(A, N)
    f = cons.simplex_map(NA, n, NA.index(n, alpha))
    return OverObject(f.source, f)


def slim_to_family(F, n, key, R_alpha=None):
    """The diagram map r_!(alpha) -> F encoded by a slim sequence (the full compatible family)."""
    A = F.shape
    alpha, seq = key
    if R_alpha is None:
        R_alpha = r_shriek_pairs(representable_over(A, n, alpha, F.N))
    verts = A.string_vertices(alpha)

    def fn(b, k, pair):
        theta, beta = pair
        top = theta[-1]
        y = F[verts[top]].act(top, seq[top], tuple(theta))
        return _action_key(F, beta, k, y)

    comps = {b: SimplicialMap.from_keys(R_alpha[b], F[b], lambda k, p, b=b: fn(b, k, p), validate=False)
             for b in A.objects}
    return DiagramMap(R_alpha, F, comps, validate=False)


def family_to_slim(phi, n, alpha):
    """Inverse of :func:`slim_to_family`: x_i is the image of (0..i, id)."""
    A = phi.source.shape
    verts = A.string_vertices(alpha)
    return (alpha, tuple(phi[verts[i]].key_image(i, (tuple(range(i + 1)), A.identity(verts[i])))
                         for i in range(n + 1)))


def fiber_over_vertex(over, v):
    """Fibre of an over-object over the vertex with index v, with its inclusion."""
    pt = cons.vertex_map(over.base, v)
    fp = cons.fiber_product(over.structure, pt)
    return fp.obj, fp.pr1


def r_star_fiber_iso(F, RF, a):
    """Fibre of r^*F over the vertex a is isomorphic to F(a) (x_n determines the sequence)."""
    NA = RF.base
    fib, _ = fiber_over_vertex(RF, NA.index(0, (a, ())))
    return iso_from_keys(fib, F[a], lambda n, key: key[0][1][-1])


# -------------------------------------------------------- adjunctions
def r_adjoint_of(psi, X, F, RX, RF):
    """(X -> r^*F over NA)  |->  (r_!X -> F):  (x, beta) |-> F(beta)(last entry of psi(x))."""
    A = F.shape

    def fn(b, n, key):
        xk, beta = key
        alpha, seq = psi.key_image(n, xk)
        return _action_key(F, beta, n, seq[-1])

    comps = {b: SimplicialMap.from_keys(RX[b], F[b], lambda n, k, b=b: fn(b, n, k), validate=False)
             for b in A.objects}
    return DiagramMap(RX, F, comps, validate=False)


def r_adjoint_from(phi, X, F, RX, RF):
    """(r_!X -> F)  |->  (X -> r^*F):  x_i = phi_{a_i}(x restricted to 0..i, id)."""
    A = F.shape
    T, pi = X.total, X.structure
    NA = pi.target

    def fn(n, xk):
        x = T.index(n, xk)
        alpha = NA.keys[n][pi.components[n][x]]
        verts = A.string_vertices(alpha)
        seq = tuple(phi[verts[i]].key_image(i, (T.keys[i][T.restrict(n, x, 0, i)], A.identity(verts[i])))
                    for i in range(n + 1))
        return (alpha, seq)

    return SimplicialMap.from_keys(T, RF.total, fn, validate=False)


def h_star(X, levels=None):
    """h^*X(b) = Map_NA(N(b/A), X), degreewise up to ``levels``.

    The level-n value needs maps out of Delta^n x N(b/A); this demands X
    at truncation n + dim N(b/A) with N(b/A) exact there.
    """
    pi = X.structure
    NA = pi.target
    A = _category_of(NA)
    NX = X.total.N
    depth = {}
    for b in A.objects:
        C = under_category(A, b)
        d = C.longest_chain()
        if d is None:
            raise TruncationError(None, NX, f"N({b}/A) is not finite-dimensional")
        depth[b] = d
    top = NX - max(depth.values(), default=0)
    L = top if levels is None else levels
    if L > top or L < 0:
        raise TruncationError(L + max(depth.values(), default=0), NX, "h^* level demand")
    values, sources, maps = {}, {}, {}
    for b in A.objects:
        P = under_projection(A, b)
        Nb = P.source.nerve(NX)
        st = P.nerve_map(NX)
        srcs, lev, table = [], [], {}
        for n in range(L + 1):
            D = cons.standard_simplex(n, NX)
            prod = cons.product(D, Nb)
            over = OverObject(prod.obj, st.compose(prod.pr2))
            found = enumerate_maps_over(over, X)
            keys = []
            for f in found:
                k = f.components
                table[(n, k)] = f
                keys.append(k)
            srcs.append(prod)
            lev.append(keys)
        sources[b] = srcs
        maps[b] = table

        def act(n, key, theta, b=b):
            prod_n, prod_k = sources[b][n].obj, sources[b][len(theta) - 1].obj
            f = maps[b][(n, key)]
            comps = []
            for l in range(NX + 1):
                row = []
                for u, y in prod_k.keys[l]:
                    row.append(f.components[l][prod_n.index(l, (tuple(theta[t] for t in u), y))])
                comps.append(tuple(row))
            return tuple(comps)

        V = TruncatedSimplicialSet.from_model(L, lev, act, name=f"h*X({b})", sort=True, validate=False)
        values[b] = V

    def gact(g, n, key):
        s, t = A.morphisms[g]
        prod_s, prod_t = sources[s][n].obj, sources[t][n].obj
        f = maps[s][(n, key)]
        comps = []
        for l in range(NX + 1):
            row = []
            for u, y in prod_t.keys[l]:
                f0, ms = y
                moved = (A.compose(f0, g), tuple((A.compose(fp, g), m) for fp, m in ms))
                row.append(f.components[l][prod_s.index(l, (u, moved))])
            comps.append(tuple(row))
        return tuple(comps)

    H = from_key_actions(A, values, gact, name="h*X", validate=False)
    return H, sources, maps


def h_adjoint_of(phi, F, X, HF, HX):
    """(h_!F -> X over NA)  |->  (F -> h^*X).

    x in F(b)_n goes to (theta, c-string) |-> phi(c-string, F(b -> c0)(theta^* x)).
    """
    H, sources, maps = HX
    A = F.shape
    L = H.N
    comps = {}
    for b in A.objects:
        rows = []
        for n in range(L + 1):
            prod = sources[b][n].obj
            row = []
            for xk in F[b].keys[n]:
                comp = []
                for l in range(prod.N + 1):
                    r = []
                    for u, y in prod.keys[l]:
                        f0, ms = y
                        z = F[b].act(n, xk, u)
                        z = _action_key(F, f0, l, z)
                        c = (A.tgt(f0), tuple(m[1] for m in ms))
                        r.append(phi.components[l][HF.total.index(l, (c, z))])
                    comp.append(tuple(r))
                row.append(H[b].index(n, tuple(comp)))
            rows.append(tuple(row))
        comps[b] = SimplicialMap(F[b].truncated(L), H[b], rows, validate=False)
    Ft = F.truncated(L)
    return DiagramMap(Ft, H, comps, validate=False)


def h_adjoint_from(psi, F, X, HF, HX):
    """(F -> h^*X)  |->  (h_!F -> X): (alpha, y) |-> psi_{a0}(y) at (id, alpha seen from a0)."""
    H, sources, maps = HX
    A = F.shape

    def fn(n, key):
        alpha, y = key
        a0, ms = alpha
        g = maps[a0][(n, H[a0].keys[n][psi[a0].components[n][F[a0].index(n, y)]])]
        prod = sources[a0][n].obj
        fs = [A.identity(a0)]
        for m in ms:
            fs.append(A.compose(m, fs[-1]))
        under_key = (fs[0], tuple((fs[i], ms[i]) for i in range(len(ms))))
        return X.total.keys[n][g.components[n][prod.index(n, (ops.identity(n), under_key))]]

    T = HF.total.truncated(H.N)
    return SimplicialMap.from_keys(T, X.total.truncated(H.N), fn, validate=False)


# ------------------------------------------------------------------ h^+
def _h_plus_classes(A, T, alpha_of, b, k, N):
    """Union-find over elements (n, x, rho, f) of the colimit at level k, value b."""
    elems = []
    for n in range(N + 1):
        for x in range(T.size(n)):
            for rho in ops.monotone_maps(k, n):
                for f in A.hom(alpha_of[n][x][0], b):
                    elems.append((n, x, rho, f))
    order = {e: (e[0], canon(T.keys[e[0]][e[1]]), e[2], canon(e[3])) for e in elems}
    parent = {e: e for e in elems}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(e1, e2):
        r1, r2 = find(e1), find(e2)
        if r1 != r2:
            if order[r1] <= order[r2]:
                parent[r2] = r1
            else:
                parent[r1] = r2

    for n in range(N + 1):
        for x in range(T.size(n)):
            alpha = alpha_of[n][x]
            if n >= 1:
                for i in range(n + 1):
                    xp = T.faces[n][i][x]
                    th = ops.coface(n, i)
                    c = A.string_arrow(alpha, 0, th[0])
                    for rho in ops.monotone_maps(k, n - 1):
                        for f in A.hom(alpha_of[n - 1][xp][0], b):
                            union((n - 1, xp, rho, f), (n, x, ops.compose(th, rho), A.compose(f, c)))
            if n < N:
                for i in range(n + 1):
                    xp = T.degeneracies[n][i][x]
                    sig = ops.codegeneracy(n, i)
                    for rho in ops.monotone_maps(k, n + 1):
                        for f in A.hom(alpha_of[n][x][0], b):
                            union((n + 1, xp, rho, f), (n, x, ops.compose(sig, rho), f))
    return {e: find(e) for e in elems}


def h_plus(X):
    """The left adjoint of h_!: the colimit of Delta^n x A(a_0, -) over the simplices of X.

    Computed over simplices of dimension <= N, which is exact when X has no
    nondegenerate simplices above N.  Labels are class representatives
    ``(n, x, rho, f)`` with x a label of X.
    """
    pi = X.structure
    NA = pi.target
    A = _category_of(NA)
    T, N = X.total, X.total.N
    alpha_of = [[NA.keys[n][pi.components[n][x]] for x in range(T.size(n))] for n in range(N + 1)]
    classes = {(b, k): _h_plus_classes(A, T, alpha_of, b, k, N) for b in A.objects for k in range(N + 1)}

    def label(e):
        n, x, rho, f = e
        return (n, T.keys[n][x], rho, f)

    def rep(b, k, n, xk, rho, f):
        return label(classes[(b, k)][(n, T.index(n, xk), rho, f)])

    values = {}
    for b in A.objects:
        levels = [sorted({label(r) for r in classes[(b, k)].values()}, key=canon) for k in range(N + 1)]

        def act(k, key, theta, b=b):
            n, xk, rho, f = key
            return rep(b, len(theta) - 1, n, xk, ops.compose(rho, theta), f)

        V = TruncatedSimplicialSet.from_model(N, levels, act, name=f"h+X({b})", validate=False)
        values[b] = V

    def gact(g, k, key):
        n, xk, rho, f = key
        return rep(A.tgt(g), k, n, xk, rho, A.compose(g, f))

    H = from_key_actions(A, values, gact, name="h+X", validate=False)
    H.representative = rep
    return H


def h_plus_adjoint_of(phi, X, F, HF):
    """(h^+X -> F)  |->  (X -> h_!F over NA): x |-> (pi x, phi_{a0}[x, id, id])."""
    A = F.shape
    T, pi = X.total, X.structure
    NA = pi.target
    H = phi.source

    def fn(n, xk):
        alpha = NA.keys[n][pi.components[n][T.index(n, xk)]]
        a0 = alpha[0]
        r = H.representative(a0, n, n, xk, ops.identity(n), A.identity(a0))
        return (alpha, phi[a0].key_image(n, r))

    return SimplicialMap.from_keys(T, HF.total, fn, validate=False)


def h_plus_adjoint_from(psi, X, F, H):
    """(X -> h_!F over NA)  |->  (h^+X -> F): [x, rho, f] |-> F(f)(rho^* y) with psi(x) = (alpha, y)."""
    A = F.shape

    def fn(b, k, key):
        n, xk, rho, f = key
        alpha, y = psi.key_image(n, xk)
        z = F[alpha[0]].act(n, y, rho)
        return _action_key(F, f, k, z)

    comps = {b: SimplicialMap.from_keys(H[b], F[b], lambda k, key, b=b: fn(b, k, key), validate=False)
             for b in A.objects}
    return DiagramMap(H, F, comps, validate=False)


# ------------------------------------------------------------------- tau
def tau(F, RH=None):
    """tau: r_!h_!F -> F, ((alpha, x), beta) |-> F(beta . alpha_{0n})(x)."""
    A = F.shape
    if RH is None:
        H = h_shriek(F)
        RH = r_shriek_pairs(H)

    def fn(b, n, key):
        (alpha, x), beta = key
        arrow = A.compose(beta, A.string_arrow(alpha, 0, n))
        return _action_key(F, arrow, n, x)

    comps = {b: SimplicialMap.from_keys(RH[b], F[b], lambda n, k, b=b: fn(b, n, k), validate=False)
             for b in A.objects}
    return DiagramMap(RH, F, comps, validate=False)


def tau_factorization_iso(A, a, b, RH, C):
    """Identify r_!h_!(Delta^0 x A(a,-))(b) with N(A'(a,b)).

    A simplex ((alpha, (pt, u)), beta) is the string a -u-> a_0 -> ... -> a_n -beta-> b.
    """
    def fn(n, key):
        (alpha, (_, u)), beta = key
        us = [A.compose(A.string_arrow(alpha, 0, i), u) for i in range(n + 1)]
        vs = [A.compose(beta, A.string_arrow(alpha, i, n)) for i in range(n + 1)]
        objs = list(zip(us, vs))
        return (objs[0], tuple((objs[i - 1], alpha[1][i - 1], objs[i]) for i in range(1, n + 1)))

    return iso_from_keys(RH[b], C.nerve(RH.N), fn)


# -------------------------------------------------------------- X//B
def over_construction(pi, N):
    """X//B with both bidegrees up to N; demands B at level 2N+1."""
    X, B = pi.source, pi.target
    B.require(2 * N + 1, "X//B base")
    X.require(N, "X//B source")
    fibers = []
    for m in range(N + 1):
        d = {}
        for x in range(X.size(m)):
            d.setdefault(pi.components[m][x], []).append(X.keys[m][x])
        fibers.append(d)

    def level_keys(m, n):
        out = []
        head = tuple(range(m + 1))
        for xi in range(B.size(m + n + 1)):
            for xk in fibers[m].get(B.apply(m + n + 1, xi, head), ()):
                out.append((xk, B.keys[m + n + 1][xi]))
        return out

    def act_h(m, n, key, theta):
        xk, xi = key
        return (X.act(m, xk, theta), B.act(m + n + 1, xi, ops.join(theta, ops.identity(n), m, n)))

    def act_v(m, n, key, phi):
        xk, xi = key
        return (xk, B.act(m + n + 1, xi, ops.join(ops.identity(m), phi, m, n)))

    return BisimplicialSet.from_model(N, N, level_keys, act_h, act_v, name=f"{X.name}//{B.name}",
                                      validate=False)


def augmentation_keys(W, B):
    """(x, xi) |-> xi restricted to m+1..m+n+1, the augmentation to cB."""
    def fn(m, n, key):
        return B.act(m + n + 1, key[1], tuple(range(m + 1, m + n + 2)))
    return fn


def diag_over(pi, N, W=None):
    """diag(X//B) as an over-object of B (truncated at N), projecting to xi|[n+1..2n+1]."""
    B = pi.target
    W = W or over_construction(pi, N)
    D = diagonal(W, N)
    st = SimplicialMap.from_keys(D, B.truncated(N),
                                 lambda n, k: B.act(2 * n + 1, k[1], tuple(range(n + 1, 2 * n + 2))),
                                 validate=False)
    return OverObject(D, st), W


def over_construction_map(f, pi_x, pi_y, N, WX=None, WY=None):
    """The bisimplicial map X//B -> Y//B of f: X -> Y over B."""
    WX = WX or over_construction(pi_x, N)
    WY = WY or over_construction(pi_y, N)
    return BisimplicialMap.from_keys(WX, WY, lambda m, n, k: (f.key_image(m, k[0]), k[1]), validate=False), WX, WY


def hr_vs_diag_iso(X, N):
    """h_!r_!X  ~=  diag(X//NA), (alpha, (x, beta)) |-> (x, pi(x) beta alpha)."""
    pi = X.structure
    NA = pi.target
    _category_of(NA)  # only nerves of finite categories
    R = r_shriek_pairs(X.truncated(N) if X.total.N > N else X)
    H = h_shriek(R)
    D, W = diag_over(pi, N)
    T = X.total

    def fn(n, key):
        alpha, (xk, beta) = key
        px = NA.keys[n][pi.components[n][T.index(n, xk)]]
        return (xk, (px[0], px[1] + (beta,) + alpha[1]))

    return iso_from_keys(H.total, D.total, fn), H, D


def interval_product_iso(pi, N):
    """diag((Delta^1 x X)//B)  ~=  Delta^1 x diag(X//B)."""
    X = pi.source
    P = cons.product(cons.standard_simplex(1, X.N), X)
    Dp, _ = diag_over(pi.compose(P.pr2), N)
    D, _ = diag_over(pi, N)
    Q = cons.product(cons.standard_simplex(1, N), D.total)
    return iso_from_keys(Dp.total, Q.obj, lambda n, k: (k[0][0], (k[0][1], k[1])))


# ----------------------------------------------------- path object B^{Delta^1}
def prism_position(chain):
    """For a chain of vertices (s, t) of Delta^1 x Delta^n: the prism simplex index and positions."""
    zeros = [t for s, t in chain if s == 0]
    m = max(zeros) if zeros else min(t for s, t in chain)
    return m, tuple(t if s == 0 else t + 1 for s, t in chain)


def prism_evaluate(B, n, family, chain):
    """Value of the path (family of labels in B_{n+1}) on a chain of Delta^1 x Delta^n."""
    m, pos = prism_position(chain)
    return B.act(n + 1, family[m], pos)


def _prism_rho(theta, l):
    k = len(theta) - 1
    return tuple(theta[t] if t <= l else theta[t - 1] + 1 for t in range(k + 2))


def path_object(B, M=None):
    """B^{Delta^1} up to level M (default N-1); returns (P, ev0, ev1, const).

    ev0, ev1: P -> B_{<=M}; const: B_{<=M} -> P is the constant-path map.
    """
    M = B.N - 1 if M is None else M
    B.require(M + 1, "path object")
    by_face = {}
    for n in range(1, M + 2):
        for j in range(n):
            d = {}
            for y in range(B.size(n)):
                d.setdefault(B.faces[n][j + 1][y], []).append(y)
            by_face[(n, j)] = d
    levels = []
    for n in range(M + 1):
        fams = [[y] for y in range(B.size(n + 1))]
        for j in range(n):
            nxt = []
            for fam in fams:
                f = B.faces[n + 1][j + 1][fam[-1]]
                for y in by_face[(n + 1, j)].get(f, ()):
                    nxt.append(fam + [y])
            fams = nxt
        levels.append([tuple(B.keys[n + 1][y] for y in fam) for fam in fams])

    def act(n, key, theta):
        return tuple(B.act(n + 1, key[theta[l]], _prism_rho(theta, l)) for l in range(len(theta)))

    P = TruncatedSimplicialSet.from_model(M, levels, act, name=f"{B.name}^D1", validate=False)
    Bt = B.truncated(M)
    ev0 = SimplicialMap.from_keys(P, Bt, lambda n, k: B.act(n + 1, k[n], tuple(range(n + 1))), validate=False)
    ev1 = SimplicialMap.from_keys(P, Bt, lambda n, k: B.act(n + 1, k[0], tuple(range(1, n + 2))),
                                  validate=False)
    const = SimplicialMap.from_keys(Bt, P, lambda n, k: tuple(B.act(n, k, ops.codegeneracy(n, j))
                                                              for j in range(n + 1)), validate=False)
    return P, ev0, ev1, const


def path_object_by_maps(B, M=None, budget=None):
    """Level sizes of B^{Delta^1} by enumerating maps Delta^1 x Delta^n -> B (independent route)."""
    from .search import count_maps

    M = B.N - 1 if M is None else M
    out = []
    for n in range(M + 1):
        P = cons.product(cons.standard_simplex(1, B.N), cons.standard_simplex(n, B.N)).obj
        out.append(count_maps(P, B, budget=budget))
    return tuple(out)


def ladder_path_object(A, M):
    """(NA)^{Delta^1} for a nerve, as ladders (top string, bottom string, verticals)."""
    NA = register_nerve(A, M)
    levels = []
    for n in range(M + 1):
        lev = []
        for top in NA.keys[n]:
            tv = A.string_vertices(top)
            for bot in NA.keys[n]:
                bv = A.string_vertices(bot)
                choices = [[]]
                for i in range(n + 1):
                    nxt = []
                    for ch in choices:
                        for lam in A.hom(tv[i], bv[i]):
                            if i == 0 or A.compose(lam, top[1][i - 1]) == A.compose(bot[1][i - 1], ch[-1]):
                                nxt.append(ch + [lam])
                    choices = nxt
                lev.extend((top, bot, tuple(ch)) for ch in choices)
        levels.append(lev)

    def act(n, key, theta):
        top, bot, lam = key
        return (A.act(n, top, theta), A.act(n, bot, theta), tuple(lam[t] for t in theta))

    return TruncatedSimplicialSet.from_model(M, levels, act, name=f"ladders({A.name})", validate=False)


def ladder_to_prism_iso(A, M, P=None):
    """Ladders -> prism families: y_j = top_0..top_j, lambda_j, bottom_j..bottom_n."""
    Lad = ladder_path_object(A, M)
    if P is None:
        P = path_object(A.nerve(M + 1), M)[0]

    def fn(n, key):
        top, bot, lam = key
        return tuple((top[0], top[1][:j] + (lam[j],) + bot[1][j:]) for j in range(n + 1))

    return iso_from_keys(Lad, P, fn)


@dataclass
class Ladder:
    """L(X) = X x_B B^{Delta^1} over B (via ev_1), with iota and the path data."""

    over: OverObject
    iota: SimplicialMap
    path: TruncatedSimplicialSet
    ev0: SimplicialMap
    ev1: SimplicialMap
    const: SimplicialMap
    pr_x: SimplicialMap
    pr_path: SimplicialMap


def ladder_functor(pi, M=None):
    """L(X) up to level M (default: B.N - 1, X truncated to match)."""
    B = pi.target
    M = B.N - 1 if M is None else M
    P, ev0, ev1, const = path_object(B, M)
    pit = pi.truncated(M)
    fp = cons.fiber_product(pit, ev0)
    L = fp.obj
    L.name = f"L({pi.source.name})"
    over = OverObject(L, ev1.compose(fp.pr2))
    X = pit.source

    def fn(n, xk):
        return (xk, const.key_image(n, pit.key_image(n, xk)))

    iota = SimplicialMap.from_keys(X, L, fn, validate=False)
    return Ladder(over, iota, P, ev0, ev1, const, fp.pr1, fp.pr2)


def gamma(pi, N, lad=None, dg=None):
    """gamma: diag(X//B) -> L(X) by pulling back along g(a, b) = (n+1)a + b; demands B at 2N+1."""
    B = pi.target
    B.require(2 * N + 1, "gamma")
    lad = lad or ladder_functor(pi, N)
    dg = dg or diag_over(pi, N)[0]

    def fn(n, key):
        xk, xi = key
        fam = tuple(B.act(2 * n + 1, xi, tuple(t if t <= j else n + t for t in range(n + 2)))
                    for j in range(n + 1))
        return (xk, fam)

    return SimplicialMap.from_keys(dg.total, lad.over.total, fn, validate=False), lad, dg


def g_map(n):
    """g: Delta^1 x Delta^n -> Delta^{2n+1} on vertices, g(a, b) = (n+1)a + b."""
    return {(a, b): (n + 1) * a + b for a in (0, 1) for b in range(n + 1)}


def gamma_ladder_check(A, pi, N, gam):
    """For B = NA, the ladder of gamma(x, xi) has verticals composed from the long string."""
    ok = True
    for n in range(N + 1):
        for key in gam.source.keys[n]:
            xk, xi = key
            fam = gam.key_image(n, key)[1]
            for j in range(n + 1):
                vertical = A.string_arrow(xi, j, n + 1 + j)
                if fam[j][1][j] != vertical:
                    ok = False
    return ok


# ----------------------------------------------------- structure isos
def nerve_chain_iso(n, N):
    """N[n] ~= Delta^n on labels."""
    from .category import chain

    A = chain(n)
    NA = register_nerve(A, N)
    D = cons.standard_simplex(n, N)
    return A, iso_from_keys(NA, D, lambda m, k: tuple(int(v) for v in A.string_vertices(k)))


def pullback_to_simplex_iso_h(F, G, theta):
    """Delta^m x_{Delta^n} h_!F  ~=  h_!(F . G) for the functor G of theta: [m] -> [n]."""
    from .diagrams import precompose

    A = F.shape
    n = len(A.objects) - 1
    N = F.N
    _, iso_n = nerve_chain_iso(n, N)
    HF = h_shriek(F)
    over_simplex = iso_n.forward.compose(HF.structure)
    tm = cons.simplex_map(cons.standard_simplex(n, N), len(theta) - 1,
                          cons.standard_simplex(n, N).index(len(theta) - 1, tuple(theta)))
    fp = cons.fiber_product(tm, over_simplex)
    FG = precompose(F, G)
    register_nerve(G.source, N)
    HG = h_shriek(FG)

    def fn(k, key):
        alpha, x = key
        u = tuple(int(v) for v in G.source.string_vertices(alpha))
        return (u, (G.on_string(alpha), x))

    return iso_from_keys(HG.total, fp.obj, fn), fp, HG


def pullback_to_simplex_iso_r(F, G, theta):
    """Delta^m x_{Delta^n} r^*F  ~=  r^*(F . G)."""
    from .diagrams import precompose

    A = F.shape
    n = len(A.objects) - 1
    N = F.N
    _, iso_n = nerve_chain_iso(n, N)
    RF = r_star(F)
    over_simplex = iso_n.forward.compose(RF.structure)
    tm = cons.simplex_map(cons.standard_simplex(n, N), len(theta) - 1,
                          cons.standard_simplex(n, N).index(len(theta) - 1, tuple(theta)))
    fp = cons.fiber_product(tm, over_simplex)
    FG = precompose(F, G)
    RG = r_star(FG)

    def fn(k, key):
        alpha, seq = key
        u = tuple(int(v) for v in G.source.string_vertices(alpha))
        return (u, (G.on_string(alpha), seq))

    return iso_from_keys(RG.total, fp.obj, fn), fp, RG


@dataclass
class PushoutSquareCheck:
    iso: bool
    comparison: SimplicialMap
    pushout: object


def horn_pushout_square(F, k):
    """Compare Lambda^n_k x F(0) -> Lambda^n_k x_{Delta^n} h_!F with Delta^n x F(0) -> h_!F.

    The square is a pushout exactly when the induced map from the pushout
    to h_!F is an isomorphism.
    """
    A = F.shape
    n = len(A.objects) - 1
    N = F.N
    _, iso_n = nerve_chain_iso(n, N)
    HF = h_shriek(F)
    over_simplex = iso_n.forward.compose(HF.structure)
    hn = cons.horn(n, k, N)
    fp = cons.fiber_product(hn.inclusion, over_simplex)
    F0 = F["0"]
    D = cons.standard_simplex(n, N)
    corner = cons.product(hn.obj, F0).obj
    big = cons.product(D, F0).obj
    to_big = SimplicialMap.from_keys(corner, big, lambda m, kk: (hn.inclusion.key_image(m, kk[0]), kk[1]),
                                     validate=False)

    def to_h(m, u, x):
        alpha = iso_n.backward.key_image(m, u)
        f0 = A.hom("0", alpha[0])[0]
        return (alpha, _action_key(F, f0, m, x))

    to_fp = SimplicialMap.from_keys(corner, fp.obj, lambda m, kk: (kk[0], to_h(m, hn.inclusion.key_image(m, kk[0]), kk[1])),
                                    validate=False)
    po = cons.pushout(to_fp, to_big)
    big_to_h = SimplicialMap.from_keys(big, HF.total, lambda m, kk: to_h(m, kk[0], kk[1]), validate=False)
    fp_to_h = fp.pr2
    rows = []
    for m in range(N + 1):
        row = [None] * po.obj.size(m)
        for x, p in enumerate(po.left.components[m]):
            row[p] = fp_to_h.components[m][x]
        for x, p in enumerate(po.right.components[m]):
            row[p] = big_to_h.components[m][x]
        rows.append(tuple(row))
    comp = SimplicialMap(po.obj, HF.total, rows, validate=False)
    return PushoutSquareCheck(comp.is_valid() and comp.is_iso(), comp, po)


def generator_image_iso(A, b, i):
    """h_!(i x A(b,-))  ~=  i x N(b/A) for a monomorphism i: K -> L, as isos on both ends."""
    from .diagrams import representable_map

    g = representable_map(A, b, i)
    N = i.source.N
    register_nerve(A, N)
    HS, HT = h_shriek(g.source), h_shriek(g.target)
    Nb = under_category(A, b).nerve(N)
    PS, PT = cons.product(i.source, Nb).obj, cons.product(i.target, Nb).obj

    def fn(m, key):
        alpha, (k, f) = key
        ms = alpha[1]
        fs = [f]
        for mm in ms:
            fs.append(A.compose(mm, fs[-1]))
        return (k, (fs[0], tuple((fs[j], ms[j]) for j in range(len(ms)))))

    src = iso_from_keys(HS.total, PS, fn)
    tgt = iso_from_keys(HT.total, PT, fn)
    hmap = h_shriek_map(g, HS, HT)
    pmap = SimplicialMap.from_keys(PS, PT, lambda m, key: (i.key_image(m, key[0]), key[1]), validate=False)
    square = tgt.forward.compose(hmap).components == pmap.compose(src.forward).components
    return src, tgt, square
