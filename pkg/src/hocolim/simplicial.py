"""Dimension-truncated simplicial sets, simplicial maps and over-objects.

A :class:`TruncatedSimplicialSet` stores every simplex of level ``n <= N``
as an integer index into ``keys[n]``; the key is an immutable, canonically
sortable label recording how the simplex was built.  Face and degeneracy
operators are explicit integer tables.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels, ops
from .errors import MapError, SimplicialError, SimplicialIdentityError, TruncationError


def canon(key):
    """Total sort key over the label types used in constructions."""
    if key is None:
        return (0,)
    if isinstance(key, bool):
        return (1, int(key))
    if isinstance(key, int):
        return (1, key)
    if isinstance(key, str):
        return (2, key)
    if isinstance(key, tuple):
        return (3, tuple(canon(k) for k in key))
    if isinstance(key, frozenset):
        return (4, tuple(sorted(canon(k) for k in key)))
    return (5, repr(key))


class TruncatedSimplicialSet:
    """Levels 0..N of a simplicial set with face/degeneracy tables.

    Parameters
    ----------
    keys : list of sequences
        ``keys[n]`` lists the labels of the n-simplices.
    faces : list
        ``faces[n][i][x]`` is the index of ``d_i x`` in level ``n-1`` (``faces[0]`` unused).
    degeneracies : list
        ``degeneracies[n][i][x]`` is the index of ``s_i x`` in level ``n+1``, for ``n < N``.
    exact_dim : int or None
        Certified bound: the untruncated object has no nondegenerate simplex
        above this dimension (always ``<= N``).  ``None`` when not certified.
    """

    __slots__ = ("keys", "faces", "degeneracies", "exact_dim", "name", "_index",
                 "_degen_src", "_ez", "_face_index", "_truncs", "_np", "category")

    def __init__(self, keys, faces, degeneracies, *, exact_dim=None, name="", validate=True):
        self.keys = tuple(tuple(level) for level in keys)
        if not self.keys:
            raise SimplicialError("a truncated simplicial set needs at least level 0")
        N = len(self.keys) - 1
        self.faces = [()] + [tuple(tuple(t) for t in faces[n]) for n in range(1, N + 1)]
        self.degeneracies = [tuple(tuple(t) for t in degeneracies[n]) for n in range(N)] + [()]
        self.name = name
        self._index = []
        for n, level in enumerate(self.keys):
            idx = {k: j for j, k in enumerate(level)}
            if len(idx) != len(level):
                raise SimplicialError(f"duplicate simplex keys at level {n}")
            self._index.append(idx)
        self._degen_src = None
        self._ez = {}
        self._face_index = {}
        self._truncs = {}
        self._np = None
        self.category = None
        self.exact_dim = exact_dim
        if validate:
            self.validate()
        if exact_dim is not None:
            if exact_dim > N:
                raise SimplicialError("exact_dim may not exceed the truncation")
            top = self.max_nondegenerate_dim()
            if top is not None and top > exact_dim:
                raise SimplicialError(
                    f"exactness at {exact_dim} claimed but a nondegenerate {top}-simplex exists")

    # ------------------------------------------------------------------ basics
    @property
    def N(self):
        return len(self.keys) - 1

    @property
    def truncation(self):
        return self.N

    def size(self, n):
        return len(self.keys[n])

    def sizes(self):
        return tuple(len(level) for level in self.keys)

    def total_size(self):
        return sum(self.sizes())

    def is_empty(self):
        return not self.keys[0]

    def key(self, n, x):
        return self.keys[n][x]

    def index(self, n, key):
        try:
            return self._index[n][key]
        except KeyError:
            raise SimplicialError(f"no {n}-simplex with key {key!r} in {self.name or 'object'}") from None

    def has_key(self, n, key):
        return key in self._index[n]

    def face(self, n, i, x):
        return self.faces[n][i][x]

    def degeneracy(self, n, i, x):
        if n >= self.N:
            raise TruncationError(n + 1, self.N, "degeneracy")
        return self.degeneracies[n][i][x]

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<TruncatedSimplicialSet{label} N={self.N} sizes={self.sizes()}>"

    # --------------------------------------------------------------- operators
    def apply(self, n, x, theta):
        """theta^* x for an n-simplex x and a monotone ``theta:[k]->[n]``."""
        surj, im = ops.split(theta)
        keep = set(im)
        cur = n
        for j in range(n, -1, -1):
            if j not in keep:
                x = self.faces[cur][j][x]
                cur -= 1
        for p in range(len(surj) - 1):
            if surj[p] == surj[p + 1]:
                if cur >= self.N:
                    raise TruncationError(cur + 1, self.N, "operator application")
                x = self.degeneracies[cur][p][x]
                cur += 1
        return x

    def act(self, n, key, theta):
        """Key-level version of :meth:`apply`."""
        k = len(theta) - 1
        return self.keys[k][self.apply(n, self.index(n, key), theta)]

    def vertex(self, n, x, j):
        return self.apply(n, x, (j,))

    def vertices(self, n, x):
        return tuple(self.apply(n, x, (j,)) for j in range(n + 1))

    def restrict(self, n, x, start, stop):
        """The face spanned by vertices start..stop."""
        return self.apply(n, x, tuple(range(start, stop + 1)))

    # -------------------------------------------------- Eilenberg-Zilber data
    def _degenerate_sources(self):
        if self._degen_src is None:
            src = [dict()]
            for n in range(1, self.N + 1):
                table = {}
                for i, row in enumerate(self.degeneracies[n - 1]):
                    for z, y in enumerate(row):
                        if y not in table:
                            table[y] = (i, z)
                src.append(table)
            self._degen_src = src
        return self._degen_src

    def is_degenerate(self, n, x):
        return x in self._degenerate_sources()[n]

    def nondegenerate(self, n):
        src = self._degenerate_sources()[n]
        return [x for x in range(len(self.keys[n])) if x not in src]

    def nondegenerate_count(self, n):
        return len(self.keys[n]) - len(self._degenerate_sources()[n])

    def nondegenerate_counts(self):
        return tuple(self.nondegenerate_count(n) for n in range(self.N + 1))

    def max_nondegenerate_dim(self):
        top = None
        for n in range(self.N + 1):
            if self.nondegenerate_count(n):
                top = n
        return top

    def decompose(self, n, x):
        """Eilenberg-Zilber decomposition ``x = sigma^* y``, y nondegenerate.

        Returns ``(m, y, sigma)`` with ``sigma:[n]->[m]`` surjective.
        """
        memo = self._ez.get(n)
        if memo is None:
            memo = self._ez[n] = {}
        hit = memo.get(x)
        if hit is not None:
            return hit
        src = self._degenerate_sources()[n]
        if x not in src:
            out = (n, x, ops.identity(n))
        else:
            i, z = src[x]
            m, y, sig = self.decompose(n - 1, z)
            out = (m, y, ops.compose(sig, ops.codegeneracy(n - 1, i)))
        memo[x] = out
        return out

    def face_tuple(self, n, x):
        return tuple(self.faces[n][i][x] for i in range(n + 1))

    def face_index(self, n):
        """Map from the tuple of faces to the n-simplices having them."""
        idx = self._face_index.get(n)
        if idx is None:
            idx = {}
            if n == 0:
                idx[()] = list(range(self.size(0)))
            else:
                for x in range(self.size(n)):
                    idx.setdefault(self.face_tuple(n, x), []).append(x)
            self._face_index[n] = idx
        return idx

    # -------------------------------------------------------------- checking
    def _table_arrays(self):
        return self.sizes(), self.faces, self.degeneracies

    def validate(self):
        """Raise :class:`SimplicialIdentityError` unless every identity holds."""
        sizes = self.sizes()
        N = self.N
        for n in range(1, N + 1):
            if len(self.faces[n]) != n + 1:
                raise SimplicialError(f"level {n} needs {n + 1} face maps")
            for i, row in enumerate(self.faces[n]):
                if len(row) != sizes[n] or any(not 0 <= v < sizes[n - 1] for v in row):
                    raise SimplicialError(f"face d_{i} on level {n} is not a function into level {n - 1}")
        for n in range(N):
            if len(self.degeneracies[n]) != n + 1:
                raise SimplicialError(f"level {n} needs {n + 1} degeneracy maps")
            for i, row in enumerate(self.degeneracies[n]):
                if len(row) != sizes[n] or any(not 0 <= v < sizes[n + 1] for v in row):
                    raise SimplicialError(f"degeneracy s_{i} on level {n} is not a function into level {n + 1}")
        bad = kernels.check_identities(list(sizes), self.faces, self.degeneracies)
        if bad is not None:
            name, n, idx, x = bad
            raise SimplicialIdentityError(name, n, idx, self.keys[n][x])
        for n in range(N):
            for i, row in enumerate(self.degeneracies[n]):
                if len(set(row)) != len(row):
                    raise SimplicialIdentityError("s_i injective", n, (i,), None)
        return True

    # ----------------------------------------------------------- truncation
    def truncated(self, M):
        """Levels 0..M of this object."""
        if M > self.N:
            raise TruncationError(M, self.N, "truncated")
        if M == self.N:
            return self
        hit = self._truncs.get(M)
        if hit is None:
            ex = self.exact_dim if self.exact_dim is not None and self.exact_dim <= M else None
            hit = TruncatedSimplicialSet(self.keys[:M + 1], self.faces[:M + 1],
                                         self.degeneracies[:M], exact_dim=ex,
                                         name=self.name, validate=False)
            hit.category = self.category
            self._truncs[M] = hit
        return hit

    def require(self, level, what=""):
        if level > self.N:
            raise TruncationError(level, self.N, what or self.name)

    def same_tables(self, other):
        return (self.keys == other.keys and self.faces == other.faces
                and self.degeneracies == other.degeneracies)

    def __eq__(self, other):
        return isinstance(other, TruncatedSimplicialSet) and self.same_tables(other)

    def __hash__(self):
        return hash((self.sizes(), self.keys[0]))

    # ------------------------------------------------------------ builders
    @classmethod
    def from_model(cls, N, level_keys, act, *, bound=None, name="", sort=True, validate=True):
        """Build tables from labels and a label-level operator action.

        ``act(n, key, theta)`` must return the label of ``theta^* key``.
        ``bound`` is a known upper bound on nondegenerate dimensions of the
        untruncated object; exactness is certified when ``bound <= N``.
        """
        keys = []
        for n in range(N + 1):
            level = list(level_keys[n])
            if sort:
                level.sort(key=canon)
            keys.append(level)
        index = [{k: j for j, k in enumerate(level)} for level in keys]

        def look(n, k, src, what):
            try:
                return index[n][k]
            except KeyError:
                raise SimplicialError(
                    f"{name or 'model'} not closed: {what} of {src!r} gives {k!r}, missing at level {n}") from None

        faces = [()]
        for n in range(1, N + 1):
            rows = []
            for i in range(n + 1):
                d = ops.coface(n, i)
                rows.append(tuple(look(n - 1, act(n, k, d), k, f"d_{i}") for k in keys[n]))
            faces.append(rows)
        degens = []
        for n in range(N):
            rows = []
            for i in range(n + 1):
                s = ops.codegeneracy(n, i)
                rows.append(tuple(look(n + 1, act(n, k, s), k, f"s_{i}") for k in keys[n]))
            degens.append(rows)
        obj = cls(keys, faces, degens, name=name, validate=validate)
        if bound is not None and bound <= N:
            obj.exact_dim = obj.max_nondegenerate_dim() if obj.max_nondegenerate_dim() is not None else 0
            if obj.exact_dim > bound:
                raise SimplicialError(f"{name}: nondegenerate simplex above the claimed bound {bound}")
        return obj

    def with_exactness(self, bound):
        """Certify exactness from a known nondegenerate-dimension bound."""
        if bound is not None and bound <= self.N:
            top = self.max_nondegenerate_dim()
            top = 0 if top is None else top
            if top > bound:
                raise SimplicialError(f"nondegenerate simplex above the claimed bound {bound}")
            self.exact_dim = top
        return self


class SimplicialMap:
    """A levelwise map commuting with faces and degeneracies."""

    __slots__ = ("source", "target", "components", "name")

    def __init__(self, source, target, components, *, validate=True, name=""):
        if source.N != target.N:
            raise MapError(f"truncation mismatch: {source.N} vs {target.N}")
        self.source = source
        self.target = target
        self.components = tuple(tuple(c) for c in components)
        self.name = name
        if validate:
            self.validate()

    def __call__(self, n, x):
        return self.components[n][x]

    def key_image(self, n, key):
        return self.target.keys[n][self.components[n][self.source.index(n, key)]]

    def __repr__(self):
        return f"<SimplicialMap {self.name or ''} {self.source.sizes()} -> {self.target.sizes()}>"

    @classmethod
    def from_keys(cls, source, target, fn, *, validate=True, name=""):
        """Build from a label function ``fn(n, key) -> key``."""
        comps = []
        for n in range(source.N + 1):
            comps.append(tuple(target.index(n, fn(n, k)) for k in source.keys[n]))
        return cls(source, target, comps, validate=validate, name=name)

    @classmethod
    def identity(cls, X):
        return cls(X, X, [tuple(range(X.size(n))) for n in range(X.N + 1)], validate=False, name="id")

    def validate(self):
        S, T = self.source, self.target
        if len(self.components) != S.N + 1:
            raise MapError("one component per level is required")
        for n in range(S.N + 1):
            c = self.components[n]
            if len(c) != S.size(n) or any(not 0 <= v < T.size(n) for v in c):
                raise MapError(f"component {n} is not a function between level sets")
        for n in range(1, S.N + 1):
            c, cd = self.components[n], self.components[n - 1]
            for i in range(n + 1):
                sf, tf = S.faces[n][i], T.faces[n][i]
                for x in range(S.size(n)):
                    if cd[sf[x]] != tf[c[x]]:
                        raise MapError(f"map does not commute with d_{i} at {S.keys[n][x]!r}")
        for n in range(S.N):
            c, cu = self.components[n], self.components[n + 1]
            for i in range(n + 1):
                ss, ts = S.degeneracies[n][i], T.degeneracies[n][i]
                for x in range(S.size(n)):
                    if cu[ss[x]] != ts[c[x]]:
                        raise MapError(f"map does not commute with s_{i} at {S.keys[n][x]!r}")
        return True

    def is_valid(self):
        try:
            return self.validate()
        except MapError:
            return False

    def compose(self, inner):
        """self . inner"""
        if inner.target is not self.source and not inner.target.same_tables(self.source):
            raise MapError("composition of non-composable maps")
        comps = [tuple(self.components[n][v] for v in inner.components[n])
                 for n in range(inner.source.N + 1)]
        return SimplicialMap(inner.source, self.target, comps, validate=False)

    __matmul__ = compose

    def is_mono(self):
        return all(len(set(c)) == len(c) for c in self.components)

    def is_epi(self):
        return all(len(set(c)) == self.target.size(n) for n, c in enumerate(self.components))

    def is_iso(self):
        return self.is_mono() and self.is_epi()

    def inverse(self):
        if not self.is_iso():
            raise MapError("map is not an isomorphism")
        comps = []
        for n, c in enumerate(self.components):
            inv = [0] * len(c)
            for x, y in enumerate(c):
                inv[y] = x
            comps.append(tuple(inv))
        return SimplicialMap(self.target, self.source, comps, validate=False)

    def same_as(self, other):
        return self.components == other.components

    def __eq__(self, other):
        return isinstance(other, SimplicialMap) and self.components == other.components \
            and self.source.same_tables(other.source) and self.target.same_tables(other.target)

    def __hash__(self):
        return hash(self.components)

    def truncated(self, M):
        return SimplicialMap(self.source.truncated(M), self.target.truncated(M),
                             self.components[:M + 1], validate=False)


@dataclass(frozen=True)
class OverObject:
    """A simplicial set together with a structure map to a base."""

    total: TruncatedSimplicialSet
    structure: SimplicialMap

    @property
    def base(self):
        return self.structure.target

    def __post_init__(self):
        if self.structure.source is not self.total and not self.structure.source.same_tables(self.total):
            raise MapError("structure map must start at the total object")

    def project(self, n, x):
        return self.structure.components[n][x]

    def truncated(self, M):
        return OverObject(self.total.truncated(M), self.structure.truncated(M))


def is_over_map(f, X, Y):
    """Whether ``f: X.total -> Y.total`` commutes with the structure maps."""
    for n in range(f.source.N + 1):
        px, py, c = X.structure.components[n], Y.structure.components[n], f.components[n]
        for x in range(f.source.size(n)):
            if py[c[x]] != px[x]:
                return False
    return True
