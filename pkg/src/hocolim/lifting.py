"""Right lifting properties, fibration verdicts and covariant deformation retracts.

Lifts are searched over maps determined on nondegenerate generators.  When
the bottom-right corner is a standard simplex the square is a simplex of
the base (Yoneda), and a lift is a single simplex with prescribed faces,
which is checked directly.  Every negative verdict is re-checked by an
independent exhaustive pass before it is reported.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import constructions as cons
from . import ops
from .errors import BudgetExceeded, MapError, SimplicialError
from .search import DEFAULT_BUDGET, MapSearch, Slot, enumerate_maps
from .simplicial import SimplicialMap

HOLDS, FAILS, BUDGET = "holds", "fails", "budget_exceeded"

HORN_KINDS = ("inner", "left", "kan", "trivial")


class _Budget:
    def __init__(self, total):
        self.total = DEFAULT_BUDGET if total is None else total
        self.used = 0

    def search(self, slots, what):
        return MapSearch(slots, budget=self.total - self.used, what=what)

    def spend(self, search):
        self.used += search.nodes

    def tick(self, k=1):
        self.used += k
        if self.used > self.total:
            raise BudgetExceeded(self.total, "lifting")


@dataclass
class LiftingProblem:
    """A commuting square  top: A -> X,  bottom: B -> Y  against i: A -> B and p: X -> Y."""

    i: SimplicialMap
    p: SimplicialMap
    top: SimplicialMap
    bottom: SimplicialMap
    label: str = ""
    rechecked: bool = False

    def commutes(self):
        return self.p.compose(self.top).components == self.bottom.compose(self.i).components

    def lifts(self):
        """All lifts, by plain enumeration of maps B -> X (no pruning by the square)."""
        out = []
        for l in enumerate_maps(self.i.target, self.p.source):
            if l.compose(self.i).components == self.top.components and \
                    self.p.compose(l).components == self.bottom.components:
                out.append(l)
        return out

    def describe(self):
        B = self.i.target
        return {
            "label": self.label,
            "top": [[self.p.source.keys[n][v] for v in self.top.components[n]]
                    for n in range(self.top.source.N + 1)],
            "bottom_generators": [[B.keys[n][x], self.p.target.keys[n][self.bottom.components[n][x]]]
                                  for n in range(B.N + 1) for x in B.nondegenerate(n)],
        }


@dataclass
class Verdict:
    result: str
    witness: LiftingProblem | None = None
    squares: int = 0
    max_lifts: int = 0
    nodes: int = 0

    @property
    def holds(self):
        return self.result == HOLDS

    @property
    def fails(self):
        return self.result == FAILS


@dataclass
class FibrationVerdict:
    kind: str
    dimension_bound: int
    result: str
    witness: LiftingProblem | None = None
    checked: list = field(default_factory=list)
    unique_fillers: bool = True
    nodes: int = 0

    @property
    def holds(self):
        return self.result == HOLDS

    @property
    def fails(self):
        return self.result == FAILS

    def to_dict(self):
        return {"kind": self.kind, "dimension_bound": self.dimension_bound, "result": self.result,
                "checked": [list(c) for c in self.checked], "unique_fillers": self.unique_fillers,
                "witness": None if self.witness is None else self.witness.describe()}


# ------------------------------------------------------------ general RLP
def has_rlp(p, i, budget=None, *, count_lifts=False):
    """Does p: X -> Y have the right lifting property against the mono i: A -> B?

    Enumerates every commuting square (up to the common truncation) and
    searches a lift for each; the first square without one, in enumeration
    order, is the witness.
    """
    if not i.is_mono():
        raise MapError("the left map of a lifting problem must be a monomorphism")
    if i.source.N != p.source.N:
        raise SimplicialError("lifting problem with mismatched truncations")
    bud = _Budget(budget)
    X, Y = p.source, p.target
    A, B = i.source, i.target
    squares = 0
    max_lifts = 0
    try:
        sb = bud.search([Slot(B, Y)], "squares (bottom)")
        for vb in sb.solutions():
            v = SimplicialMap(B, Y, vb[0], validate=False)
            vi = v.compose(i).components
            pc = p.components
            su = bud.search([Slot(A, X, accept=lambda n, a, x: pc[n][x] == vi[n][a])], "squares (top)")
            for ub in su.solutions():
                squares += 1
                u = SimplicialMap(A, X, ub[0], validate=False)
                n_lifts = _count_extensions(i, u, p, v, bud, limit=None if count_lifts else 1)
                max_lifts = max(max_lifts, n_lifts)
                if n_lifts == 0:
                    prob = LiftingProblem(i, p, u, v, label="square")
                    prob.rechecked = not prob.lifts()
                    if not prob.rechecked:
                        raise AssertionError("lift search disagrees with the exhaustive recheck")
                    bud.spend(su)
                    return Verdict(FAILS, prob, squares, max_lifts, bud.used)
            bud.spend(su)
        bud.spend(sb)
    except BudgetExceeded:
        return Verdict(BUDGET, None, squares, max_lifts, bud.total)
    return Verdict(HOLDS, None, squares, max_lifts, bud.used)


def _count_extensions(i, u, p, v, bud, limit):
    B, X = i.target, p.source
    fixed = [dict() for _ in range(B.N + 1)]
    for n in range(i.source.N + 1):
        for a in range(i.source.size(n)):
            fixed[n][i.components[n][a]] = u.components[n][a]
    pc, vc = p.components, v.components

    def allowed(n, b):
        hit = fixed[n].get(b)
        return None if hit is None else (hit,)

    s = bud.search([Slot(B, X, allowed=allowed, accept=lambda n, b, y: pc[n][y] == vc[n][b])], "lift search")
    count = 0
    for _ in s.solutions(limit):
        count += 1
    bud.spend(s)
    return count


# -------------------------------------------------------- horn families
def horn_family(kind, n):
    """The indices S for the generating inclusions of dimension n (S = () for the boundary)."""
    if kind == "inner":
        return [(k,) for k in range(1, n)] if n >= 2 else []
    if kind == "left":
        return [(k,) for k in range(n)] if n >= 1 else []
    if kind == "right":
        return [(k,) for k in range(1, n + 1)] if n >= 1 else []
    if kind == "kan":
        return [(k,) for k in range(n + 1)] if n >= 1 else []
    if kind == "trivial":
        return [()]
    raise SimplicialError(f"unknown horn family {kind!r}")


def _simplex_rlp(p, n, S, bud, count_lifts):
    """RLP of p against Lambda_S -> Delta^n, with the square read as a simplex y of the base."""
    X, Y = p.source.truncated(n), p.target.truncated(n)
    pc = p.components
    sub = cons.boundary_and_horn(n, S, n)
    H, inc = sub.obj, sub.inclusion
    D = inc.target
    top = D.index(n, ops.identity(n))
    faces_needed = [j for j in range(n + 1) if j not in S] if n else []
    # the face d_j of the top simplex, as a simplex of the horn
    horn_face = {j: inc.components[n - 1].index(D.faces[n][j][top]) for j in faces_needed} if n else {}
    pre = {}
    for x in range(X.size(n)):
        pre.setdefault(pc[n][x], []).append(x)
    squares = 0
    max_lifts = 0
    for y in range(Y.size(n)):
        ry = [tuple(Y.apply(n, y, H.keys[m][h]) for h in range(H.size(m))) for m in range(n + 1)]
        s = bud.search([Slot(H, X, accept=lambda m, h, x: pc[m][x] == ry[m][h])], "horn squares")
        for ub in s.solutions():
            squares += 1
            fillers = 0
            for x in pre.get(y, ()):
                bud.tick()
                if all(X.faces[n][j][x] == ub[0][n - 1][horn_face[j]] for j in faces_needed):
                    fillers += 1
                    if not count_lifts:
                        break
            max_lifts = max(max_lifts, fillers)
            if fillers == 0:
                bud.spend(s)
                u = SimplicialMap(H, X, ub[0], validate=False)
                v = cons.simplex_map(Y, n, y)
                label = "boundary" if not S else f"horn({n},{','.join(map(str, S))})"
                prob = LiftingProblem(inc, p.truncated(n), u, v, label=label)
                prob.rechecked = _recheck_simplex(prob, n, y, faces_needed, horn_face)
                if not prob.rechecked:
                    raise AssertionError("horn search disagrees with the exhaustive recheck")
                return prob, squares, max_lifts
        bud.spend(s)
    return None, squares, max_lifts


def _recheck_simplex(prob, n, y, faces_needed, horn_face):
    """Independent pass: scan every n-simplex of X through the operator action."""
    X = prob.p.source
    for x in range(X.size(n)):
        if prob.p.components[n][x] != y:
            continue
        if all(X.apply(n, x, ops.coface(n, j)) == prob.top.components[n - 1][horn_face[j]]
               for j in faces_needed):
            return False
    return True


def classify_fibration(p, kind, N=None, budget=None, *, count_lifts=False):
    """Lifting against the horn family of ``kind`` in dimensions up to N.

    kinds: inner (0 < k < n), left (0 <= k < n), right, kan (all k),
    trivial (boundary inclusions, n >= 0).
    """
    N = p.source.N if N is None else N
    if N > p.source.N:
        raise SimplicialError("verdict bound above the truncation")
    bud = _Budget(budget)
    checked = []
    unique = True
    try:
        for n in range(N + 1):
            for S in horn_family(kind, n):
                prob, squares, most = _simplex_rlp(p, n, S, bud, count_lifts)
                checked.append((n, S[0] if S else -1, squares))
                if most > 1:
                    unique = False
                if prob is not None:
                    return FibrationVerdict(kind, N, FAILS, prob, checked, unique, bud.used)
    except BudgetExceeded:
        return FibrationVerdict(kind, N, BUDGET, None, checked, unique, bud.total)
    return FibrationVerdict(kind, N, HOLDS, None, checked, unique, bud.used)


def is_quasicategory(X, N=None, budget=None):
    """Inner-horn verdict for X -> point, with filler uniqueness recorded."""
    return classify_fibration(cons.to_point(X), "inner", N, budget, count_lifts=True)


# --------------------------------------------------------------- retracts
@dataclass
class RetractData:
    """i: X -> Y with r: Y -> X and h: Delta^1 x Y -> Y; structure maps optional."""

    i: SimplicialMap
    r: SimplicialMap
    h: SimplicialMap
    product: object
    base_x: SimplicialMap | None = None
    base_y: SimplicialMap | None = None
    name: str = ""
    reversed: bool = False


@dataclass
class RetractVerdict:
    checks: dict

    @property
    def passed(self):
        return all(self.checks.values())


def endpoint_inclusion(P, eps):
    """Y -> Delta^1 x Y at the end eps, for P = product(Delta^1, Y)."""
    Y = P.pr2.target
    D = P.pr1.target
    rows = []
    for n in range(Y.N + 1):
        c = D.index(n, (eps,) * (n + 1))
        rows.append(tuple(P.obj.index(n, (D.keys[n][c], Y.keys[n][y])) for y in range(Y.size(n))))
    return SimplicialMap(Y, P.obj, rows, validate=False)


def verify_retract(d):
    """Check ri = id, h_0 = ir, h_1 = id, h = i . pr on Delta^1 x X, plus validity and mono-ness."""
    P = d.product
    Y = d.r.source
    X = d.r.target
    c = {}
    c["maps_valid"] = d.i.is_valid() and d.r.is_valid() and d.h.is_valid()
    c["i_mono"] = d.i.is_mono()
    if d.base_x is not None and d.base_y is not None:
        c["i_over_base"] = d.base_y.compose(d.i).components == d.base_x.components
    ident_x = tuple(tuple(range(X.size(n))) for n in range(X.N + 1))
    ident_y = tuple(tuple(range(Y.size(n))) for n in range(Y.N + 1))
    c["r_i_identity"] = tuple(d.r.compose(d.i).components) == ident_x
    start, end = (1, 0) if d.reversed else (0, 1)
    c["h0_is_ir"] = d.h.compose(endpoint_inclusion(P, start)).components == d.i.compose(d.r).components
    c["h1_is_identity"] = tuple(d.h.compose(endpoint_inclusion(P, end)).components) == ident_y
    D = P.pr1.target
    rel = True
    for n in range(Y.N + 1):
        for u in range(D.size(n)):
            for x in range(X.size(n)):
                y = d.i.components[n][x]
                z = P.obj.index(n, (D.keys[n][u], Y.keys[n][y]))
                if d.h.components[n][z] != y:
                    rel = False
    c["h_rel_x"] = rel
    return RetractVerdict(c)


def reversed_retract(d):
    """The orientation-reversed mutant: the same data read as a homotopy from id to ir."""
    return RetractData(d.i, d.r, d.h, d.product, d.base_x, d.base_y, name=f"reversed {d.name}",
                       reversed=True)


def _monotone(u):
    return all(a <= b for a, b in zip(u, u[1:]))


def _homotopy(P, Y, fn):
    """h: Delta^1 x Y -> Y from a key-level rule fn(n, alpha, ykey) -> ykey."""
    return SimplicialMap.from_keys(P.obj, Y, lambda n, k: fn(n, k[0], k[1]), validate=False)


def _first_one(alpha):
    for j, a in enumerate(alpha):
        if a == 1:
            return j
    return len(alpha)


def under_slice_retract(B, b):
    """Delta^0 -> b/B (the degenerate edge at b), r the unique map, h a k-fold s_0 of d_1^k."""
    from .slices import under_slice

    ov = under_slice(B, b)
    Y = ov.total
    M = Y.N
    start = Y.index(0, B.keys[1][B.degeneracies[0][0][b]])
    i = cons.vertex_map(Y, start)
    r = cons.to_point(Y)
    P = cons.product(cons.standard_simplex(1, M), Y)

    def rule(n, alpha, yk):
        k = _first_one(alpha)
        theta = tuple(0 if t <= k else t for t in range(n + 2))
        return B.act(n + 1, yk, theta)

    h = _homotopy(P, Y, rule)
    base_x = cons.vertex_map(B.truncated(M), b)
    return RetractData(i, r, h, P, base_x, ov.structure, name=f"delta0 -> {b}/B")


def simplex_vertex_retract(B, n, beta):
    """0: Delta^0 -> Delta^n over B via the simplex beta; h(alpha, theta)(j) = alpha(j) * theta(j)."""
    M = B.N
    D = cons.standard_simplex(n, M)
    i = cons.vertex_map(D, D.index(0, (0,)))
    r = cons.to_point(D)
    P = cons.product(cons.standard_simplex(1, M), D)
    h = _homotopy(P, D, lambda m, alpha, theta: tuple(a * t for a, t in zip(alpha, theta)))
    sb = cons.simplex_map(B, n, beta)
    base_x = sb.compose(i)
    return RetractData(i, r, h, P, base_x, sb, name=f"0 -> Delta^{n}")


def iota_retract(pi, M=None):
    """iota: X -> L(X), retraction by evaluation at 0, homotopy lambda'(s,t) = lambda(min(s, alpha(t)), t)."""
    from .transport import ladder_functor, prism_evaluate

    lad = ladder_functor(pi, M)
    B = pi.target
    L = lad.over.total
    P = cons.product(cons.standard_simplex(1, L.N), L)
    r = lad.pr_x

    def rule(n, alpha, key):
        xk, fam = key
        fam2 = []
        for j in range(n + 1):
            chain = [(0, t) for t in range(j + 1)] + [(1, t) for t in range(j, n + 1)]
            moved = [(min(s, alpha[t]), t) for s, t in chain]
            fam2.append(prism_evaluate(B, n, fam, moved))
        return (xk, tuple(fam2))

    h = _homotopy(P, L, rule)
    return RetractData(lad.iota, r, h, P, pi.truncated(L.N), lad.over.structure, name="iota")


def vertex_diagonal_retract(B, b0, N):
    """b0 -> diag(b0//B): h(alpha, xi) collapses the first k entries of the tail to b0."""
    from .transport import diag_over

    pi = cons.vertex_map(B, b0)
    dg, _ = diag_over(pi, N)
    Dg = dg.total
    ptN = cons.point(N)
    i = SimplicialMap.from_keys(ptN, Dg, lambda n, k: (k, B.act(0, B.keys[0][b0], (0,) * (2 * n + 2))),
                                validate=False)
    r = cons.to_point(Dg)
    r = SimplicialMap(Dg, ptN, r.components, validate=False)
    P = cons.product(cons.standard_simplex(1, N), Dg)

    def rule(n, alpha, key):
        xk, xi = key
        k = _first_one(alpha)
        theta = tuple(0 if t <= n + k else t for t in range(2 * n + 2))
        return (xk, B.act(2 * n + 1, xi, theta))

    h = _homotopy(P, Dg, rule)
    base_x = cons.vertex_map(B.truncated(N), b0)
    base_x = SimplicialMap(ptN, B.truncated(N), base_x.components, validate=False)
    return RetractData(i, r, h, P, base_x, dg.structure, name=f"{b0} -> diag({b0}//B)")


RETRACT_CASES = ("under-slice", "simplex-vertex", "constant-path", "vertex-diagonal")


def build_retract(case, *args, **kw):
    """Dispatch: 'under-slice' (B, b), 'simplex-vertex' (B, n, beta), 'constant-path' (pi[, M]),
    'vertex-diagonal' (B, b0, N)."""
    table = {"under-slice": under_slice_retract, "simplex-vertex": simplex_vertex_retract,
             "constant-path": iota_retract, "vertex-diagonal": vertex_diagonal_retract}
    try:
        fn = table[case]
    except KeyError:
        raise SimplicialError(f"unknown retract case {case!r}") from None
    return fn(*args, **kw)


# ------------------------------------------------------- pushout-products
@dataclass
class AnodyneVerdict:
    result: str  # "anodyne" or "inconclusive"
    steps: list
    nodes: int = 0

    @property
    def anodyne(self):
        return self.result == "anodyne"


def pushout_product(i, j):
    """The map  K x B  u_{K x A}  L x A  ->  L x B  for i: A -> B and j: K -> L, as a subobject."""
    B, L = i.target, j.target
    Q = cons.product(L, B)
    gens = []
    for n in range(Q.obj.N + 1):
        for z in range(Q.obj.size(n)):
            l, b = Q.pr1.components[n][z], Q.pr2.components[n][z]
            if l in set(j.components[n]) or b in set(i.components[n]):
                gens.append((n, z))
    sub = cons.subcomplex(Q.obj, gens, name="pushout-product")
    return sub, Q


def pushout_product_check(i, j, budget=None, kinds="left"):
    """Search a presentation of the pushout-product as a sequence of horn pushouts.

    Each step attaches a nondegenerate simplex z together with its face d_k z
    along Lambda^n_k (k from the family ``kinds``), and is certified by building
    the pushout and checking the comparison map is an isomorphism onto the
    enlarged subobject.  A found presentation proves the map anodyne; an
    exhausted budget yields ``inconclusive``, never a negative answer.
    """
    sub, Q = pushout_product(i, j)
    T = Q.obj
    bud = _Budget(budget)
    present = [set(sub.inclusion.components[n]) for n in range(T.N + 1)]
    target = sum(len(T.nondegenerate(n)) for n in range(T.N + 1))
    steps = []

    def nd_count():
        return sum(1 for n in range(T.N + 1) for z in T.nondegenerate(n) if z in present[n])

    def candidates():
        out = []
        for n in range(1, T.N + 1):
            for z in T.nondegenerate(n):
                if z in present[n]:
                    continue
                for (k,) in horn_family(kinds, n):
                    fk = T.faces[n][k][z]
                    if fk in present[n - 1] or T.is_degenerate(n - 1, fk):
                        continue
                    if all(T.faces[n][m][z] in present[n - 1] for m in range(n + 1) if m != k):
                        out.append((n, z, k))
        return out

    def attach(n, z, k):
        added = []
        for m in range(n + 1):
            for th in ops.monotone_maps(m, n):
                w = T.apply(n, z, th)
                if w not in present[m]:
                    present[m].add(w)
                    added.append((m, w))
        # also degeneracies of the new simplices up to the truncation
        frontier = list(added)
        while frontier:
            m, w = frontier.pop()
            if m < T.N:
                for s in range(m + 1):
                    v = T.degeneracies[m][s][w]
                    if v not in present[m + 1]:
                        present[m + 1].add(v)
                        added.append((m + 1, v))
                        frontier.append((m + 1, v))
        return added

    def certified(n, z, k):
        S = cons.restrict_to(T, [sorted(present[m]) for m in range(T.N + 1)], name="stage")
        hn = cons.horn(n, k, T.N)
        zmap = cons.simplex_map(T, n, z)
        pos = [{v: idx for idx, v in enumerate(S.inclusion.components[m])} for m in range(T.N + 1)]
        u = SimplicialMap(hn.obj, S.obj,
                          [tuple(pos[m][zmap.components[m][hn.inclusion.components[m][a]]]
                                 for a in range(hn.obj.size(m))) for m in range(T.N + 1)], validate=False)
        po = cons.pushout(u, hn.inclusion)
        rows = []
        for m in range(T.N + 1):
            row = [None] * po.obj.size(m)
            for a, q in enumerate(po.left.components[m]):
                row[q] = S.inclusion.components[m][a]
            for a, q in enumerate(po.right.components[m]):
                row[q] = zmap.components[m][a]
            rows.append(tuple(row))
        comp = SimplicialMap(po.obj, T, rows, validate=False)
        return comp.is_valid() and comp.is_mono()

    def dfs():
        bud.tick()
        if nd_count() == target:
            return True
        for n, z, k in candidates():
            if not certified(n, z, k):
                continue
            added = attach(n, z, k)
            steps.append((n, T.keys[n][z], k))
            if dfs():
                return True
            steps.pop()
            for m, w in added:
                present[m].discard(w)
        return False

    try:
        ok = dfs()
    except BudgetExceeded:
        return AnodyneVerdict("inconclusive", [], bud.total)
    except RecursionError:
        return AnodyneVerdict("inconclusive", [], bud.used)
    return AnodyneVerdict("anodyne" if ok else "inconclusive", list(steps) if ok else [], bud.used)
