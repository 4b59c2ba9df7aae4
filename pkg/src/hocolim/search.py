"""Backtracking search for simplicial maps determined on nondegenerate generators.

A map out of X is fixed by its values on nondegenerate simplices; the value
on ``x = sigma^* y`` is ``sigma^* f(y)``.  Cells (nondegenerate source
simplices) are assigned in order of dimension, and candidates for a cell
come from the target's face index, so every partial assignment already
commutes with faces.  Several source/target pairs ("slots") can be searched
jointly with cross-slot constraints; diagram maps use this for naturality.
"""
from __future__ import annotations

import os

from .errors import BudgetExceeded, SimplicialError
from .simplicial import SimplicialMap



def _env_budget(default=2_000_000):
    try:
        return int(os.environ.get("HOCOLIM_BUDGET", default))
    except ValueError:
        return default


DEFAULT_BUDGET = _env_budget()


class Slot:
    """One source -> target component of a joint search.

    ``allowed(n, x)`` may return a container of admissible target indices
    for the nondegenerate simplex x (``None`` means unconstrained);
    ``accept(n, x, y)`` is a cheap per-candidate predicate.
    """

    def __init__(self, source, target, *, allowed=None, accept=None, name=""):
        if source.N != target.N:
            raise SimplicialError("slot truncations differ")
        self.source = source
        self.target = target
        self.allowed = allowed
        self.accept = accept
        self.name = name


class Constraint:
    """A predicate over assigned cells, checked once all of them are assigned."""

    def __init__(self, cells, check):
        self.cells = tuple(cells)
        self.check = check


class Assignment:
    """Read access to the values chosen so far, extended along degeneracies."""

    def __init__(self, slots):
        self.slots = slots
        self.vals = [[dict() for _ in range(s.source.N + 1)] for s in slots]

    def value(self, s, n, x):
        slot = self.slots[s]
        m, y, sig = slot.source.decompose(n, x)
        v = self.vals[s][m][y]
        if m == n:
            return v
        return slot.target.apply(m, v, sig)


class MapSearch:
    def __init__(self, slots, constraints=(), *, budget=None, what="map search"):
        self.slots = list(slots)
        self.budget = DEFAULT_BUDGET if budget is None else budget
        self.what = what
        self.nodes = 0
        cells = []
        for s, slot in enumerate(self.slots):
            for n in range(slot.source.N + 1):
                for x in slot.source.nondegenerate(n):
                    cells.append((n, s, x))
        cells.sort()
        self.cells = [(s, n, x) for n, s, x in cells]
        pos = {c: i for i, c in enumerate(self.cells)}
        self.checks = [[] for _ in self.cells]
        for con in constraints:
            try:
                last = max(pos[c] for c in con.cells)
            except KeyError:
                raise SimplicialError("constraint refers to a degenerate or unknown cell") from None
            self.checks[last].append(con)
        self.state = Assignment(self.slots)

    def _candidates(self, k):
        s, n, x = self.cells[k]
        slot = self.slots[s]
        src, tgt = slot.source, slot.target
        if n == 0:
            pool = range(tgt.size(0))
        else:
            req = tuple(self.state.value(s, n - 1, src.faces[n][i][x]) for i in range(n + 1))
            pool = tgt.face_index(n).get(req, ())
        if slot.allowed is not None:
            allow = slot.allowed(n, x)
            if allow is not None:
                pool = [y for y in pool if y in allow]
        if slot.accept is not None:
            pool = [y for y in pool if slot.accept(n, x, y)]
        return pool

    def solutions(self, limit=None):
        """Yield complete assignments (as component tables per slot)."""
        K = len(self.cells)
        found = 0
        if K == 0:
            yield self._components()
            return
        cand = [None] * K
        ptr = [0] * K
        cand[0] = list(self._candidates(0))
        depth = 0
        vals = self.state.vals
        while depth >= 0:
            s, n, x = self.cells[depth]
            if ptr[depth] < len(cand[depth]):
                y = cand[depth][ptr[depth]]
                ptr[depth] += 1
                self.nodes += 1
                if self.nodes > self.budget:
                    raise BudgetExceeded(self.budget, self.what)
                vals[s][n][x] = y
                if all(con.check(self.state) for con in self.checks[depth]):
                    if depth + 1 == K:
                        yield self._components()
                        found += 1
                        if limit is not None and found >= limit:
                            return
                    else:
                        depth += 1
                        cand[depth] = list(self._candidates(depth))
                        ptr[depth] = 0
            else:
                vals[s][n].pop(x, None)
                depth -= 1

    def _components(self):
        out = []
        for s, slot in enumerate(self.slots):
            comps = []
            for n in range(slot.source.N + 1):
                comps.append(tuple(self.state.value(s, n, x) for x in range(slot.source.size(n))))
            out.append(comps)
        return out


def enumerate_maps(X, Y, *, budget=None, limit=None, allowed=None, accept=None):
    """All simplicial maps X -> Y, in lexicographic order of generator images."""
    search = MapSearch([Slot(X, Y, allowed=allowed, accept=accept)], budget=budget,
                       what="enumerate_maps")
    return [SimplicialMap(X, Y, comps[0], validate=False) for comps in search.solutions(limit)]


def count_maps(X, Y, *, budget=None, allowed=None, accept=None):
    search = MapSearch([Slot(X, Y, allowed=allowed, accept=accept)], budget=budget, what="count_maps")
    return sum(1 for _ in search.solutions())


def _over_accept(pX, pY):
    cx, cy = pX.components, pY.components
    return lambda n, x, y: cy[n][y] == cx[n][x]


def enumerate_maps_over(X, Y, *, budget=None, limit=None):
    """Maps ``X.total -> Y.total`` commuting with the structure maps (OverObjects)."""
    return enumerate_maps(X.total, Y.total, budget=budget, limit=limit,
                          accept=_over_accept(X.structure, Y.structure))


def count_maps_over(X, Y, *, budget=None):
    return count_maps(X.total, Y.total, budget=budget, accept=_over_accept(X.structure, Y.structure))


def extensions(i, u, *, over=None, budget=None, limit=None):
    """Maps ``l: B -> X`` with ``l . i = u``, optionally with ``p . l = v`` for ``over=(p, v)``.

    ``i: A -> B`` must be a monomorphism.
    """
    B, X = i.target, u.target
    fixed = [dict() for _ in range(B.N + 1)]
    for n in range(i.source.N + 1):
        for a in range(i.source.size(n)):
            fixed[n][i.components[n][a]] = u.components[n][a]
    accept = None
    if over is not None:
        p, v = over
        pc, vc = p.components, v.components
        accept = lambda n, b, y: pc[n][y] == vc[n][b]

    def allowed(n, b):
        hit = fixed[n].get(b)
        return None if hit is None else (hit,)

    search = MapSearch([Slot(B, X, allowed=allowed, accept=accept)], budget=budget, what="lift search")
    return [SimplicialMap(B, X, comps[0], validate=False) for comps in search.solutions(limit)]


def find_isomorphism(X, Y, *, budget=None):
    """Some isomorphism X -> Y, or None."""
    if X.sizes() != Y.sizes():
        return None
    search = MapSearch([Slot(X, Y)], budget=budget, what="isomorphism search")
    for comps in search.solutions():
        f = SimplicialMap(X, Y, comps[0], validate=False)
        if f.is_iso():
            return f
    return None
