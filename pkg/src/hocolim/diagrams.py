"""Diagrams A -> truncated simplicial sets, their maps, generators and cell presentations."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import constructions as cons
from .errors import DiagramError, MapError
from .search import Constraint, MapSearch, Slot
from .simplicial import SimplicialMap


class SimplicialDiagram:
    """Values on objects and action maps on morphisms, validated for functoriality."""

    def __init__(self, shape, values, actions, *, name="", validate=True):
        self.shape = shape
        self.values = {a: values[a] for a in shape.objects}
        self.actions = {f: actions[f] for f in shape.morphisms}
        self.name = name
        Ns = {X.N for X in self.values.values()}
        if len(Ns) > 1:
            raise DiagramError("diagram values must share a truncation level")
        self.N = Ns.pop() if Ns else 0
        if validate:
            self.validate()

    def __repr__(self):
        sizes = {a: X.sizes() for a, X in self.values.items()}
        return f"<SimplicialDiagram {self.name} on {self.shape.name}: {sizes}>"

    def __getitem__(self, a):
        return self.values[a]

    def action(self, f):
        return self.actions[f]

    def validate(self):
        A = self.shape
        for f, (s, t) in A.morphisms.items():
            m = self.actions[f]
            if not (m.source.same_tables(self.values[s]) and m.target.same_tables(self.values[t])):
                raise DiagramError(f"action of {f!r} has the wrong endpoints")
            try:
                m.validate()
            except MapError as exc:
                raise DiagramError(f"action of {f!r} is not simplicial: {exc}") from None
        for a in A.objects:
            ident = self.actions[A.identity(a)]
            if any(c != tuple(range(len(c))) for c in ident.components):
                raise DiagramError(f"identity of {a!r} does not act as the identity")
        for (g, f), h in A.comp.items():
            if self.actions[g].compose(self.actions[f]).components != self.actions[h].components:
                raise DiagramError(f"action is not functorial on {g!r} . {f!r}")
        return True

    def sizes(self):
        return {a: self.values[a].sizes() for a in self.shape.objects}

    def truncated(self, M):
        return SimplicialDiagram(self.shape, {a: X.truncated(M) for a, X in self.values.items()},
                                 {f: m.truncated(M) for f, m in self.actions.items()},
                                 name=self.name, validate=False)


class DiagramMap:
    """Componentwise simplicial maps, natural in the shape."""

    def __init__(self, source, target, components, *, name="", validate=True):
        if source.shape is not target.shape:
            raise DiagramError("diagram maps need a common shape")
        self.source = source
        self.target = target
        self.components = {a: components[a] for a in source.shape.objects}
        self.name = name
        if validate:
            self.validate()

    def __repr__(self):
        return f"<DiagramMap {self.name}>"

    def __getitem__(self, a):
        return self.components[a]

    def validate(self):
        A = self.source.shape
        for a in A.objects:
            c = self.components[a]
            if not (c.source.same_tables(self.source[a]) and c.target.same_tables(self.target[a])):
                raise DiagramError(f"component at {a!r} has the wrong endpoints")
            try:
                c.validate()
            except MapError as exc:
                raise DiagramError(f"component at {a!r} is not simplicial: {exc}") from None
        for f, (s, t) in A.morphisms.items():
            left = self.components[t].compose(self.source.actions[f])
            right = self.target.actions[f].compose(self.components[s])
            if left.components != right.components:
                raise DiagramError(f"naturality fails at {f!r}")
        return True

    def compose(self, inner):
        """self . inner"""
        return DiagramMap(inner.source, self.target,
                          {a: self.components[a].compose(inner.components[a]) for a in self.source.shape.objects},
                          validate=False)

    def is_mono(self):
        return all(c.is_mono() for c in self.components.values())

    def is_iso(self):
        return all(c.is_iso() for c in self.components.values())

    def inverse(self):
        return DiagramMap(self.target, self.source, {a: c.inverse() for a, c in self.components.items()},
                          validate=False)

    def same_as(self, other):
        return all(self.components[a].components == other.components[a].components for a in self.components)


def identity_map(F):
    return DiagramMap(F, F, {a: SimplicialMap.identity(X) for a, X in F.values.items()}, validate=False)


# ------------------------------------------------------------- builders
def from_key_actions(shape, values, act, *, name="", validate=True):
    """Diagram whose action of f sends the label k at level n to ``act(f, n, k)``."""
    actions = {}
    for f, (s, t) in shape.morphisms.items():
        actions[f] = SimplicialMap.from_keys(values[s], values[t], lambda n, k, f=f: act(f, n, k),
                                             validate=False)
    return SimplicialDiagram(shape, values, actions, name=name, validate=validate)


def constant_diagram(A, K, name="const"):
    return SimplicialDiagram(A, {a: K for a in A.objects},
                             {f: SimplicialMap.identity(K) for f in A.morphisms}, name=name)


def terminal_diagram(A, N):
    return constant_diagram(A, cons.point(N), name="terminal")


def empty_diagram(A, N):
    return constant_diagram(A, cons.empty(N), name="empty")


def _hom_product(K, arrows, name):
    X = cons.product(K, cons.discrete(arrows, K.N)).obj
    X.name = name
    return X


def representable_diagram(A, a, K):
    """K x A(a, -), with labels ``(k, f)`` and actions by post-composition."""
    values = {b: _hom_product(K, A.hom(a, b), f"{K.name}xA({a},{b})") for b in A.objects}
    return from_key_actions(A, values, lambda g, n, key: (key[0], A.compose(g, key[1])),
                            name=f"{K.name}xA({a},-)", validate=False)


def representable_map(A, a, i):
    """i x A(a, -) for a simplicial map i: K -> L."""
    F = representable_diagram(A, a, i.source)
    G = representable_diagram(A, a, i.target)
    comps = {b: SimplicialMap.from_keys(F[b], G[b], lambda n, k: (i.key_image(n, k[0]), k[1]), validate=False)
             for b in A.objects}
    return DiagramMap(F, G, comps, name=f"{i.name}xA({a},-)", validate=False)


def subrepresentable(A, a, K, arrows):
    """K x S for a subfunctor S of A(a, -) given by ``arrows[b]`` (closed under post-composition)."""
    values = {b: _hom_product(K, arrows[b], f"{K.name}xS({b})") for b in A.objects}
    for b in A.objects:
        for f in arrows[b]:
            for g in A.out_of(b):
                if A.compose(g, f) not in arrows[A.tgt(g)]:
                    raise DiagramError("arrow sets are not closed under post-composition")
    return from_key_actions(A, values, lambda g, n, key: (key[0], A.compose(g, key[1])), validate=False)


def tensor(M, F):
    """M x F objectwise, labels ``(m, x)``."""
    values = {a: cons.product(M, X).obj for a, X in F.values.items()}
    actions = {f: cons.map_product(SimplicialMap.identity(M), act)[2] for f, act in F.actions.items()}
    fixed = {}
    for f, (s, t) in F.shape.morphisms.items():
        fixed[f] = SimplicialMap(values[s], values[t], actions[f].components, validate=False)
    return SimplicialDiagram(F.shape, values, fixed, name=f"{M.name}x{F.name}", validate=False)


def tensor_map(i, F):
    """i x F : K x F -> L x F."""
    S, T = tensor(i.source, F), tensor(i.target, F)
    comps = {}
    for a, X in F.values.items():
        comps[a] = SimplicialMap(S[a], T[a], cons.map_product(i, SimplicialMap.identity(X))[2].components,
                                 validate=False)
    return DiagramMap(S, T, comps, validate=False)


def precompose(F, G):
    """F . G for a functor G: B -> A."""
    return SimplicialDiagram(G.source, {b: F[G.on_objects[b]] for b in G.source.objects},
                             {f: F.actions[G.on_morphisms[f]] for f in G.source.morphisms},
                             name=f"{F.name}.{G.name}", validate=False)


def diagram_pushout(f, g):
    """Objectwise pushout along a monomorphic leg, with induced actions."""
    A = f.source.shape
    legs, values = {}, {}
    for a in A.objects:
        P = cons.pushout(f[a], g[a])
        legs[a] = P
        values[a] = P.obj
    actions = {}
    for h, (s, t) in A.morphisms.items():
        comps = []
        for n in range(values[s].N + 1):
            row = [None] * values[s].size(n)
            X, Y = f.target, g.target
            for x, p in enumerate(legs[s].left.components[n]):
                row[p] = legs[t].left.components[n][X.actions[h].components[n][x]]
            for y, p in enumerate(legs[s].right.components[n]):
                row[p] = legs[t].right.components[n][Y.actions[h].components[n][y]]
            comps.append(tuple(row))
        actions[h] = SimplicialMap(values[s], values[t], comps, validate=False)
    P = SimplicialDiagram(A, values, actions, name="pushout", validate=False)
    left = DiagramMap(f.target, P, {a: SimplicialMap(f.target[a], values[a], legs[a].left.components,
                                                     validate=False) for a in A.objects}, validate=False)
    right = DiagramMap(g.target, P, {a: SimplicialMap(g.target[a], values[a], legs[a].right.components,
                                                      validate=False) for a in A.objects}, validate=False)
    return P, left, right


def induced_map(P, legs, maps, target):
    """The map out of a pushout P determined by maps out of its legs."""
    A = P.shape
    comps = {}
    for a in A.objects:
        rows = [[None] * P[a].size(n) for n in range(P.N + 1)]
        for leg, m in zip(legs, maps):
            for n in range(P.N + 1):
                for x, p in enumerate(leg[a].components[n]):
                    v = m[a].components[n][x]
                    if rows[n][p] is not None and rows[n][p] != v:
                        raise DiagramError("maps out of the legs disagree on the overlap")
                    rows[n][p] = v
        comps[a] = SimplicialMap(P[a], target[a], rows, validate=False)
    return DiagramMap(P, target, comps, validate=False)


# ----------------------------------------------------------- generators
def projective_generators(A, n, k=None, N=None):
    """``(boundary or horn) x A(a,-) -> Delta^n x A(a,-)`` for every object a."""
    N = n if N is None else N
    sub = cons.boundary(n, N) if k is None else cons.horn(n, k, N)
    return [representable_map(A, a, sub.inclusion) for a in A.objects]


def reedy_generators(A, reedy, b, n, k, N=None):
    """``Lambda^n_k x A(b,-)  u  Delta^n x A^-(b,-) -> Delta^n x A(b,-)``.

    The source is built as a pushout over the intersection ``Lambda^n_k x A^-(b,-)``.
    """
    from .category import minus_subfunctor

    N = n if N is None else N
    sub = cons.horn(n, k, N)
    D = sub.inclusion.target
    minus = minus_subfunctor(A, reedy, b).values
    full = {a: A.hom(b, a) for a in A.objects}

    def incl(K, L, ks, arrows_s, arrows_t):
        S = subrepresentable(A, b, K, arrows_s)
        T = subrepresentable(A, b, L, arrows_t)
        return DiagramMap(S, T, {a: SimplicialMap.from_keys(S[a], T[a], lambda m, key: (ks(m, key[0]), key[1]),
                                                            validate=False) for a in A.objects}, validate=False)

    horn_key = lambda m, key: sub.inclusion.key_image(m, key)
    same = lambda m, key: key
    corner_to_horn = incl(sub.obj, sub.obj, same, minus, full)
    corner_to_simplex = incl(sub.obj, D, horn_key, minus, minus)
    P, left, right = diagram_pushout(corner_to_horn, corner_to_simplex)
    target = subrepresentable(A, b, D, full)
    horn_in = incl(sub.obj, D, horn_key, full, full)
    minus_in = incl(D, D, same, minus, full)
    gen = induced_map(P, [left, right], [horn_in, minus_in], target)
    if not gen.is_mono():
        raise DiagramError("generator source does not embed")
    return gen


# ------------------------------------------------------------ map search
def diagram_map_search(F, G, *, budget=None, accept=None, allowed=None):
    """Joint search over natural families ``F(a) -> G(a)``."""
    A = F.shape
    objs = list(A.objects)
    slot_of = {a: s for s, a in enumerate(objs)}
    slots = [Slot(F[a], G[a],
                  accept=None if accept is None else (lambda n, x, y, a=a: accept(a, n, x, y)),
                  allowed=None if allowed is None else (lambda n, x, a=a: allowed(a, n, x)))
             for a in objs]
    constraints = []
    for f, (s, t) in A.morphisms.items():
        if A.is_identity(f):
            continue
        Ff, Gf = F.actions[f], G.actions[f]
        for n in range(F.N + 1):
            for x in F[s].nondegenerate(n):
                y = Ff.components[n][x]
                m, z, _ = F[t].decompose(n, y)
                cells = [(slot_of[s], n, x), (slot_of[t], m, z)]

                def check(state, s=s, t=t, n=n, x=x, y=y, Gf=Gf):
                    return state.value(slot_of[t], n, y) == Gf.components[n][state.value(slot_of[s], n, x)]

                constraints.append(Constraint(cells, check))
    return objs, MapSearch(slots, constraints, budget=budget, what="diagram map search")


def enumerate_diagram_maps(F, G, *, budget=None, limit=None):
    objs, search = diagram_map_search(F, G, budget=budget)
    out = []
    for comps in search.solutions(limit):
        out.append(DiagramMap(F, G, {a: SimplicialMap(F[a], G[a], comps[s], validate=False)
                                     for s, a in enumerate(objs)}, validate=False))
    return out


def count_diagram_maps(F, G, *, budget=None):
    _, search = diagram_map_search(F, G, budget=budget)
    return sum(1 for _ in search.solutions())


def find_diagram_isomorphism(F, G, *, budget=None):
    if F.sizes() != G.sizes():
        return None
    objs, search = diagram_map_search(F, G, budget=budget)
    for comps in search.solutions():
        m = DiagramMap(F, G, {a: SimplicialMap(F[a], G[a], comps[s], validate=False)
                              for s, a in enumerate(objs)}, validate=False)
        if m.is_iso():
            return m
    return None


# ------------------------------------------------------ pointwise checks
def pointwise_check(m, kind, *, N=None, budget=None):
    """Per-object verdicts for a diagram map: fibration, trivial-fibration or equivalence-proxy."""
    from . import homology, lifting

    out = {}
    for a in m.source.shape.objects:
        c = m[a]
        if kind == "fibration":
            out[a] = lifting.classify_fibration(c, "kan", N=N, budget=budget)
        elif kind == "trivial-fibration":
            out[a] = lifting.classify_fibration(c, "trivial", N=N, budget=budget)
        elif kind == "equivalence-proxy":
            out[a] = homology.certify_equivalence(c, "homology")
        else:
            raise DiagramError(f"unknown check kind {kind!r}")
    return out


# ------------------------------------------------------------- cells
@dataclass
class Cell:
    """Attach ``Delta^n x A(a,-)`` along the boundary sphere whose faces are ``faces`` (labels in F(a))."""

    obj: object
    dim: int
    faces: tuple = ()


@dataclass
class CellPresentation:
    shape: object
    N: int
    cells: list = field(default_factory=list)


def boundary_map_from_faces(sphere, X, n, faces):
    """The map ``boundary(n) -> X`` sending ``d_i iota`` to the (n-1)-simplex with label ``faces[i]``."""
    idx = [X.index(n - 1, k) for k in faces]
    for i in range(n + 1 if n >= 2 else 0):
        for j in range(i + 1, n + 1):
            if X.faces[n - 1][i][idx[j]] != X.faces[n - 1][j - 1][idx[i]]:
                raise DiagramError("attaching faces are not compatible")

    def image(m, key):
        missing = next(i for i in range(n + 1) if i not in key)
        rest = tuple(v if v < missing else v - 1 for v in key)
        return X.keys[m][X.apply(n - 1, idx[missing], rest)]

    return SimplicialMap.from_keys(sphere, X, image, validate=False)


def replay_cells(p):
    """Sequential pushouts along boundary inclusions; returns the final diagram and all stages."""
    A = p.shape
    cur = empty_diagram(A, p.N)
    stages = [cur]
    for cell in p.cells:
        if cell.obj not in A.objects or not 0 <= cell.dim <= p.N:
            raise DiagramError(f"ill-typed cell {cell!r}")
        gen = representable_map(A, cell.obj, cons.boundary(cell.dim, p.N).inclusion)
        if cell.dim == 0:
            attach = DiagramMap(gen.source, cur, {a: SimplicialMap(gen.source[a], cur[a],
                                                                   [()] * (p.N + 1), validate=False)
                                                  for a in A.objects}, validate=False)
        else:
            if len(cell.faces) != cell.dim + 1:
                raise DiagramError("a cell needs one face label per face")
            base = boundary_map_from_faces(cons.boundary(cell.dim, p.N).obj, cur[cell.obj], cell.dim, cell.faces)
            comps = {}
            for a in A.objects:
                comps[a] = SimplicialMap.from_keys(
                    gen.source[a], cur[a],
                    lambda m, key, a=a: cur.actions[key[1]].key_image(m, base.key_image(m, key[0])),
                    validate=False)
            attach = DiagramMap(gen.source, cur, comps, validate=False)
        attach.validate()
        cur, _, _ = diagram_pushout(attach, gen)
        stages.append(cur)
    return cur, stages
