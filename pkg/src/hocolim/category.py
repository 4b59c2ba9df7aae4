"""Finite categories, functors, nerves and the small categories built from them.

Morphisms are opaque hashable ids with recorded source and target;
composition is a table ``comp[(g, f)] = g . f`` (f applied first).
The nerve has n-simplices labelled ``(a0, (m1, ..., mn))`` for composable
strings ``a0 -m1-> a1 -> ... -mn-> an``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import CategoryError
from .simplicial import SimplicialMap, TruncatedSimplicialSet, canon


class FiniteCategory:
    def __init__(self, objects, morphisms, identities, composition, *, name="", validate=True):
        self.objects = tuple(sorted(objects, key=canon))
        self.morphisms = dict(morphisms)
        self.identities = dict(identities)
        self.comp = dict(composition)
        self.name = name
        self._hom = {}
        for f, (s, t) in sorted(self.morphisms.items(), key=lambda kv: canon(kv[0])):
            self._hom.setdefault((s, t), []).append(f)
        self._nerves = {}
        self._composite = {}
        if validate:
            self.validate()

    # ----------------------------------------------------------------- basics
    def __repr__(self):
        return f"<FiniteCategory {self.name} |ob|={len(self.objects)} |mor|={len(self.morphisms)}>"

    def src(self, f):
        return self.morphisms[f][0]

    def tgt(self, f):
        return self.morphisms[f][1]

    def hom(self, a, b):
        return self._hom.get((a, b), [])

    def identity(self, a):
        return self.identities[a]

    def is_identity(self, f):
        return self.identities.get(self.src(f)) == f

    def compose(self, g, f):
        """g . f"""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise CategoryError(f"{g!r} and {f!r} are not composable") from None

    def compose_path(self, a, path):
        """Composite of the string ``path`` starting at a (identity when empty)."""
        hit = self._composite.get((a, path))
        if hit is not None:
            return hit
        out = self.identities[a]
        for m in path:
            out = self.compose(m, out)
        self._composite[(a, path)] = out
        return out

    def is_iso(self, f):
        s, t = self.morphisms[f]
        return any(self.comp[(g, f)] == self.identities[s] and self.comp[(f, g)] == self.identities[t]
                   for g in self.hom(t, s))

    def validate(self):
        obs = set(self.objects)
        for f, (s, t) in self.morphisms.items():
            if s not in obs or t not in obs:
                raise CategoryError(f"morphism {f!r} has an unknown endpoint")
        for a in self.objects:
            i = self.identities.get(a)
            if i is None or self.morphisms.get(i) != (a, a):
                raise CategoryError(f"object {a!r} lacks an identity")
        for f, (s, t) in self.morphisms.items():
            for (x, y), gs in self._hom.items():
                if x != t:
                    continue
                for g in gs:
                    h = self.comp.get((g, f))
                    if h is None:
                        raise CategoryError(f"composite of {g!r} after {f!r} is missing")
                    if self.morphisms.get(h) != (s, y):
                        raise CategoryError(f"composite of {g!r} after {f!r} has the wrong type")
            if self.comp[(self.identities[t], f)] != f or self.comp[(f, self.identities[s])] != f:
                raise CategoryError(f"unit law fails for {f!r}")
        for (g, f), gf in self.comp.items():
            if g not in self.morphisms or f not in self.morphisms or self.src(g) != self.tgt(f):
                raise CategoryError(f"composition table has an ill-typed entry {(g, f)!r}")
        for f, (s, t) in self.morphisms.items():
            for g in [g for (x, _), gs in self._hom.items() if x == t for g in gs]:
                gf = self.comp[(g, f)]
                for h in [h for (x, _), hs in self._hom.items() if x == self.tgt(g) for h in hs]:
                    if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                        raise CategoryError(f"associativity fails on {h!r}, {g!r}, {f!r}")
        return True

    def out_of(self, a):
        return [f for (s, _), fs in sorted(self._hom.items(), key=lambda kv: canon(kv[0])) if s == a for f in fs]

    def into(self, b):
        return [f for (_, t), fs in sorted(self._hom.items(), key=lambda kv: canon(kv[0])) if t == b for f in fs]

    # ---------------------------------------------------------------- nerve
    def strings(self, n):
        """Composable strings of n morphisms as nerve labels, in canonical order."""
        out = []

        def grow(a0, last, path):
            if len(path) == n:
                out.append((a0, tuple(path)))
                return
            for f in self.out_of(last):
                path.append(f)
                grow(a0, self.tgt(f), path)
                path.pop()

        for a in self.objects:
            grow(a, a, [])
        out.sort(key=canon)
        return out

    def string_vertices(self, key):
        a0, ms = key
        out = [a0]
        for m in ms:
            out.append(self.tgt(m))
        return tuple(out)

    def string_arrow(self, key, i, j):
        """The composite a_i -> a_j of a nerve label (i <= j)."""
        a0, ms = key
        a = a0 if i == 0 else self.tgt(ms[i - 1])
        return self.compose_path(a, tuple(ms[i:j]))

    def act(self, n, key, theta):
        """theta^* on nerve labels."""
        verts = self.string_vertices(key)
        a0, ms = key
        new = []
        for j in range(1, len(theta)):
            lo, hi = theta[j - 1], theta[j]
            new.append(self.compose_path(verts[lo], tuple(ms[lo:hi])))
        return (verts[theta[0]], tuple(new))

    def has_endo_cycle(self):
        """Whether some nonidentity arrows compose around a cycle."""
        succ = {a: set() for a in self.objects}
        for f, (s, t) in self.morphisms.items():
            if not self.is_identity(f):
                if s == t:
                    return True
                succ[s].add(t)
        state = {}

        def visit(a):
            state[a] = 1
            for b in succ[a]:
                if state.get(b) == 1 or (b not in state and visit(b)):
                    return True
            state[a] = 2
            return False

        return any(a not in state and visit(a) for a in self.objects)

    def longest_chain(self):
        """Longest string of nonidentity composable arrows (None if unbounded)."""
        if self.has_endo_cycle():
            return None
        succ = {a: set() for a in self.objects}
        for f, (s, t) in self.morphisms.items():
            if s != t:
                succ[s].add(t)

        @lru_cache(maxsize=None)
        def depth(a):
            return max((1 + depth(b) for b in succ[a]), default=0)

        return max((depth(a) for a in self.objects), default=0)

    def nerve(self, N):
        hit = self._nerves.get(N)
        if hit is None:
            hit = TruncatedSimplicialSet.from_model(
                N, [self.strings(n) for n in range(N + 1)], self.act,
                bound=self.longest_chain(), name=f"N({self.name})", validate=False)
            hit.category = self
            self._nerves[N] = hit
        return hit

    # ----------------------------------------------------------- components
    def components(self):
        parent = {a: a for a in self.objects}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for f, (s, t) in self.morphisms.items():
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[max(rs, rt, key=canon)] = min(rs, rt, key=canon)
        groups = {}
        for a in self.objects:
            groups.setdefault(find(a), []).append(a)
        return [groups[r] for r in sorted(groups, key=canon)]

    def initial_objects(self, among=None):
        among = self.objects if among is None else among
        return [x for x in among if all(len(self.hom(x, y)) == 1 for y in among)]

    def terminal_objects(self, among=None):
        among = self.objects if among is None else among
        return [x for x in among if all(len(self.hom(y, x)) == 1 for y in among)]


def component_has_initial_and_terminal(C):
    """Per connected component: (objects, initial objects, terminal objects)."""
    report = []
    for comp in C.components():
        report.append({
            "objects": comp,
            "initial": C.initial_objects(comp),
            "terminal": C.terminal_objects(comp),
        })
    return report


# --------------------------------------------------------------- builders
def poset_category(elements, leq, name="poset"):
    """Category of a finite poset given by a reflexive-transitive relation (pairs)."""
    elements = list(elements)
    rel = set(leq) | {(a, a) for a in elements}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    for (a, b) in rel:
        if a != b and (b, a) in rel:
            raise CategoryError("relation is not antisymmetric")

    def mid(a, b):
        return f"id:{a}" if a == b else f"{a}->{b}"

    morphisms = {mid(a, b): (a, b) for a, b in rel}
    identities = {a: mid(a, a) for a in elements}
    comp = {}
    for (a, b) in rel:
        for (c, d) in rel:
            if b == c:
                comp[(mid(c, d), mid(a, b))] = mid(a, d)
    return FiniteCategory(elements, morphisms, identities, comp, name=name)


def chain(n):
    """The ordinal [n] = {0 < 1 < ... < n} with string objects."""
    obs = [str(i) for i in range(n + 1)]
    return poset_category(obs, [(obs[i], obs[i + 1]) for i in range(n)], name=f"[{n}]")


def cyclic_group(order, name=None):
    """One-object category of Z/order; morphism ``g{k}`` is k."""
    mor = {f"g{k}": ("*", "*") for k in range(order)}
    comp = {(f"g{a}", f"g{b}"): f"g{(a + b) % order}" for a in range(order) for b in range(order)}
    return FiniteCategory(["*"], mor, {"*": "g0"}, comp, name=name or f"Z/{order}")


def discrete_category(elements, name="discrete"):
    elements = list(elements)
    mor = {("id", e): (e, e) for e in elements}
    return FiniteCategory(elements, mor, {e: ("id", e) for e in elements},
                          {(("id", e), ("id", e)): ("id", e) for e in elements}, name=name)


def free_category(objects, arrows, name="free"):
    """Free category on an acyclic quiver ``{name: (src, tgt)}``; morphisms are paths.

    Path ids are the arrow names joined by ``.`` in application order.
    """
    objects = list(objects)
    by_src = {}
    for g, (s, t) in sorted(arrows.items()):
        by_src.setdefault(s, []).append((g, t))
    paths = {f"id:{a}": (a, a, ()) for a in objects}
    frontier = [(a, a, ()) for a in objects]
    for _ in range(len(objects) + 1):
        nxt = []
        for s, t, p in frontier:
            for g, t2 in by_src.get(t, []):
                q = p + (g,)
                if len(q) > len(objects):
                    raise CategoryError("quiver has a cycle; its free category is infinite")
                paths[".".join(q)] = (s, t2, q)
                nxt.append((s, t2, q))
        frontier = nxt
    if frontier:
        raise CategoryError("quiver has a cycle; its free category is infinite")
    pid = {(v[0], v[2]): k for k, v in paths.items()}
    morphisms = {k: (v[0], v[1]) for k, v in paths.items()}
    comp = {}
    for gk, (gs, gt, gp) in paths.items():
        for fk, (fs, ft, fp) in paths.items():
            if ft == gs:
                comp[(gk, fk)] = pid[(fs, fp + gp)]
    return FiniteCategory(objects, morphisms, {a: f"id:{a}" for a in objects}, comp, name=name)


def walking_retraction():
    """Objects c0, c1 with i: c0 -> c1, p: c1 -> c0, p.i = id and idempotent e = i.p."""
    mor = {"id0": ("c0", "c0"), "id1": ("c1", "c1"), "i": ("c0", "c1"), "p": ("c1", "c0"), "e": ("c1", "c1")}
    comp = {}
    table = {
        ("p", "i"): "id0", ("i", "p"): "e", ("e", "e"): "e", ("e", "i"): "i", ("p", "e"): "p",
    }
    for (s, t) in [("id0", "id0"), ("id1", "id1")]:
        comp[(s, t)] = s
    for f, (a, b) in mor.items():
        comp[(f, "id0" if a == "c0" else "id1")] = f
        comp[("id0" if b == "c0" else "id1", f)] = f
    comp.update(table)
    return FiniteCategory(["c0", "c1"], mor, {"c0": "id0", "c1": "id1"}, comp, name="retraction")


def contractible_groupoid():
    """Two uniquely isomorphic objects."""
    mor = {"id0": ("0", "0"), "id1": ("1", "1"), "u": ("0", "1"), "v": ("1", "0")}
    comp = {("v", "u"): "id0", ("u", "v"): "id1"}
    for f, (a, b) in mor.items():
        comp[(f, "id0" if a == "0" else "id1")] = f
        comp[("id0" if b == "0" else "id1", f)] = f
    return FiniteCategory(["0", "1"], mor, {"0": "id0", "1": "id1"}, comp, name="J")


# ---------------------------------------------------------------- functors
@dataclass
class FunctorData:
    source: FiniteCategory
    target: FiniteCategory
    on_objects: dict
    on_morphisms: dict
    name: str = ""

    def __post_init__(self):
        self.validate()

    def validate(self):
        A, B = self.source, self.target
        for f, (s, t) in A.morphisms.items():
            g = self.on_morphisms.get(f)
            if g is None or B.morphisms.get(g) != (self.on_objects[s], self.on_objects[t]):
                raise CategoryError(f"functor {self.name} mistypes {f!r}")
        for a in A.objects:
            if self.on_morphisms[A.identities[a]] != B.identities[self.on_objects[a]]:
                raise CategoryError(f"functor {self.name} does not preserve the identity of {a!r}")
        for (g, f), h in A.comp.items():
            if B.compose(self.on_morphisms[g], self.on_morphisms[f]) != self.on_morphisms[h]:
                raise CategoryError(f"functor {self.name} does not preserve {g!r} . {f!r}")
        return True

    def __call__(self, f):
        return self.on_morphisms[f]

    def compose(self, inner):
        """self . inner"""
        return FunctorData(inner.source, self.target,
                           {a: self.on_objects[b] for a, b in inner.on_objects.items()},
                           {f: self.on_morphisms[g] for f, g in inner.on_morphisms.items()},
                           name=f"{self.name}.{inner.name}")

    def on_string(self, key):
        a0, ms = key
        return (self.on_objects[a0], tuple(self.on_morphisms[m] for m in ms))

    def nerve_map(self, N):
        return SimplicialMap.from_keys(self.source.nerve(N), self.target.nerve(N),
                                       lambda n, k: self.on_string(k), validate=False)


def identity_functor(A):
    return FunctorData(A, A, {a: a for a in A.objects}, {f: f for f in A.morphisms}, name="id")


def monotone_functor(theta, n):
    """The functor [m] -> [n] of a monotone map theta:[m] -> [n]."""
    A, B = chain(len(theta) - 1), chain(n)

    def mid(a, b):
        return f"id:{a}" if a == b else f"{a}->{b}"

    om = {str(i): str(v) for i, v in enumerate(theta)}
    mm = {f: mid(om[s], om[t]) for f, (s, t) in A.morphisms.items()}
    return FunctorData(A, B, om, mm, name=f"theta{tuple(theta)}")


# ------------------------------------------------------------------ slices
def under_category(A, a):
    """a/A: objects arrows a -> c, morphisms g with g . f = f'; ids ``(f, g)``."""
    objs = A.out_of(a)
    mor, ident, comp = {}, {}, {}
    for f in objs:
        for g in A.out_of(A.tgt(f)):
            mor[(f, g)] = (f, A.compose(g, f))
        ident[f] = (f, A.identity(A.tgt(f)))
    for (f, g), (_, f2) in mor.items():
        for (f3, h) in [m for m in mor if m[0] == f2]:
            comp[((f3, h), (f, g))] = (f, A.compose(h, g))
    return FiniteCategory(objs, mor, ident, comp, name=f"{a}/{A.name}", validate=False)


def over_category(A, b):
    """A/b: objects arrows c -> b, morphisms g: c -> c' with f' . g = f; ids ``(f, g)``."""
    objs = A.into(b)
    mor, ident, comp = {}, {}, {}
    for f in objs:
        c = A.src(f)
        for f2 in objs:
            for g in A.hom(c, A.src(f2)):
                if A.compose(f2, g) == f:
                    mor[(f, g)] = (f, f2)
        ident[f] = (f, A.identity(c))
    for (f, g), (_, f2) in mor.items():
        for (f3, h), (_, f4) in mor.items():
            if f3 == f2:
                comp[((f3, h), (f, g))] = (f, A.compose(h, g))
    return FiniteCategory(objs, mor, ident, comp, name=f"{A.name}/{b}", validate=False)


def under_projection(A, a):
    """The forgetful functor a/A -> A."""
    C = under_category(A, a)
    return FunctorData(C, A, {f: A.tgt(f) for f in C.objects}, {m: m[1] for m in C.morphisms},
                       name="forget")


def over_projection(A, b):
    """The forgetful functor A/b -> A."""
    C = over_category(A, b)
    return FunctorData(C, A, {f: A.src(f) for f in C.objects}, {m: m[1] for m in C.morphisms},
                       name="forget")


def slice_categories(A, a):
    return under_category(A, a), over_category(A, a)


def is_poset(C):
    return all(len(C.hom(x, y)) <= 1 for x in C.objects for y in C.objects) and \
        all(not (x != y and C.hom(x, y) and C.hom(y, x)) for x in C.objects for y in C.objects)


def simplex_slice_poset(A, alpha, b):
    """alpha/b for a nerve label alpha: pairs (i, f: a_i -> b), ordered by i <= j and f' . alpha_ij = f.

    Returns ``(category, is_poset_certificate)``.
    """
    verts = A.string_vertices(alpha)
    objs = [(i, f) for i, ai in enumerate(verts) for f in A.hom(ai, b)]
    mor, comp, ident = {}, {}, {}
    for (i, f) in objs:
        for (j, f2) in objs:
            if i <= j and A.compose(f2, A.string_arrow(alpha, i, j)) == f:
                mor[((i, f), (j, f2))] = ((i, f), (j, f2))
        ident[(i, f)] = ((i, f), (i, f))
    for (x, y) in mor:
        for (y2, z) in mor:
            if y2 == y:
                comp[((y, z), (x, y))] = (x, z)
    C = FiniteCategory(objs, mor, ident, comp, name=f"alpha/{b}")
    return C, is_poset(C)


def factorization_category(A, a, b):
    """A'(a, b): factorizations (u: a -> c, v: c -> b); morphisms w with w.u = u', v'.w = v.

    Morphism ids are ``(source, w, target)``.

    Returns the category and the composition functor to the discrete category on A(a, b).
    """
    objs = [(u, v) for u in A.out_of(a) for v in A.hom(A.tgt(u), b)]
    mor, ident, comp = {}, {}, {}
    for (u, v) in objs:
        c = A.tgt(u)
        ident[(u, v)] = ((u, v), A.identity(c), (u, v))
        for (u2, v2) in objs:
            for w in A.hom(c, A.tgt(u2)):
                if A.compose(w, u) == u2 and A.compose(v2, w) == v:
                    # w alone does not fix the target: v2 . w = v may have several solutions v2
                    mor[((u, v), w, (u2, v2))] = ((u, v), (u2, v2))
    for (x, w, y) in mor:
        for (y2, w2, z) in mor:
            if y2 == y:
                comp[((y, w2, z), (x, w, y))] = (x, A.compose(w2, w), z)
    C = FiniteCategory(objs, mor, ident, comp, name=f"A'({a},{b})")
    D = discrete_category(A.hom(a, b), name=f"A({a},{b})")
    F = FunctorData(C, D, {(u, v): A.compose(v, u) for (u, v) in objs},
                    {m: ("id", A.compose(t[1][1], t[1][0])) for m, t in mor.items()}, name="compose")
    return C, F


# -------------------------------------------------------------------- Reedy
@dataclass
class ReedyData:
    """User-supplied degree function and plus/minus classes, validated on construction."""

    category: FiniteCategory
    degree: dict
    plus: frozenset
    minus: frozenset
    report: dict = field(default_factory=dict)

    def __post_init__(self):
        self.plus = frozenset(self.plus)
        self.minus = frozenset(self.minus)
        self.report = self.validate()

    def validate(self):
        A = self.category
        for a in A.objects:
            if a not in self.degree or self.degree[a] < 0:
                raise CategoryError(f"object {a!r} needs a non-negative degree")
            if A.identity(a) not in self.plus or A.identity(a) not in self.minus:
                raise CategoryError(f"identity of {a!r} must lie in both classes")
        for cls, label in ((self.plus, "plus"), (self.minus, "minus")):
            for f in cls:
                if f not in A.morphisms:
                    raise CategoryError(f"{label} class names an unknown morphism {f!r}")
            for f in cls:
                for g in cls:
                    if A.src(g) == A.tgt(f) and A.compose(g, f) not in cls:
                        raise CategoryError(f"{label} class is not closed under composition")
        for f in self.plus:
            s, t = A.morphisms[f]
            if self.degree[t] < self.degree[s]:
                raise CategoryError(f"plus morphism {f!r} lowers degree")
        for f in self.minus:
            s, t = A.morphisms[f]
            if self.degree[t] > self.degree[s]:
                raise CategoryError(f"minus morphism {f!r} raises degree")
        counts = {}
        for f in A.morphisms:
            facs = self.factorizations(f)
            if not facs:
                raise CategoryError(f"{f!r} has no minus-then-plus factorization")
            m0, p0 = facs[0]
            for m, p in facs[1:]:
                links = [w for w in A.hom(A.tgt(m0), A.tgt(m))
                         if A.is_iso(w) and A.compose(w, m0) == m and A.compose(p, w) == p0]
                if len(links) != 1:
                    raise CategoryError(f"factorizations of {f!r} are not unique up to unique isomorphism")
            counts[f] = len(facs)
        return {"factorizations": counts}

    def factorizations(self, f):
        A = self.category
        s, t = A.morphisms[f]
        out = []
        for m in sorted(self.minus, key=canon):
            if A.src(m) != s:
                continue
            for p in A.hom(A.tgt(m), t):
                if p in self.plus and A.compose(p, m) == f:
                    out.append((m, p))
        return out


@dataclass
class MinusSubfunctor:
    base: object
    values: dict
    comparison: dict
    isomorphism: bool
    definitions_agree: bool


def minus_subfunctor(A, reedy, b):
    """A^-(b, -) together with the colimit comparison over non-iso minus arrows out of b.

    ``values[a]`` lists the arrows b -> a admitting a non-invertible minus
    factor; ``comparison[a]`` maps each colimit class representative
    ``(m, u)`` to ``u . m``.
    """
    if reedy.category is not A:
        raise CategoryError("Reedy data belongs to another category")
    index = [m for m in sorted(reedy.minus, key=canon) if A.src(m) == b and not A.is_iso(m)]
    values, by_plus = {}, {}
    for a in A.objects:
        values[a] = [f for f in A.hom(b, a)
                     if any(A.compose(u, m) == f for m in index for u in A.hom(A.tgt(m), a))]
        by_plus[a] = [f for f in A.hom(b, a) if f not in reedy.plus]
    agree = all(values[a] == by_plus[a] for a in A.objects)
    comparison, iso = {}, True
    for a in A.objects:
        elems = [(m, u) for m in index for u in A.hom(A.tgt(m), a)]
        parent = {e: e for e in elems}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for m in index:
            for m2 in index:
                for w in A.hom(A.tgt(m), A.tgt(m2)):
                    if w in reedy.minus and A.compose(w, m) == m2:
                        for u2 in A.hom(A.tgt(m2), a):
                            r1, r2 = find((m2, u2)), find((m, A.compose(u2, w)))
                            if r1 != r2:
                                parent[max(r1, r2, key=canon)] = min(r1, r2, key=canon)
        classes = sorted({find(e) for e in elems}, key=canon)
        comp = {e: A.compose(e[1], e[0]) for e in classes}
        comparison[a] = comp
        images = list(comp.values())
        if len(set(images)) != len(images) or sorted(set(images), key=canon) != sorted(values[a], key=canon):
            iso = False
    return MinusSubfunctor(b, values, comparison, iso, agree)
