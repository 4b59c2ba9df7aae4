"""Truncated bisimplicial sets: levels (m, n) with commuting horizontal and vertical operators."""
from __future__ import annotations

from . import ops
from .errors import MapError, SimplicialError, TruncationError
from .simplicial import SimplicialMap, TruncatedSimplicialSet, canon


class BisimplicialSet:
    """Levels ``keys[m][n]`` for m <= M, n <= N.

    ``hface[m][n][i][x]`` lands in level (m-1, n), ``vface[m][n][i][x]`` in
    (m, n-1); degeneracies likewise raise one index.
    """

    def __init__(self, keys, hface, hdeg, vface, vdeg, *, name="", validate=True):
        self.keys = tuple(tuple(tuple(c) for c in row) for row in keys)
        self.hface, self.hdeg, self.vface, self.vdeg = hface, hdeg, vface, vdeg
        self.name = name
        self._index = [[{k: j for j, k in enumerate(c)} for c in row] for row in self.keys]
        if validate:
            self.validate()

    @property
    def M(self):
        return len(self.keys) - 1

    @property
    def N(self):
        return len(self.keys[0]) - 1

    def size(self, m, n):
        return len(self.keys[m][n])

    def sizes(self):
        return tuple(tuple(len(c) for c in row) for row in self.keys)

    def index(self, m, n, key):
        return self._index[m][n][key]

    def __repr__(self):
        return f"<BisimplicialSet {self.name} M={self.M} N={self.N}>"

    @classmethod
    def from_model(cls, M, N, level_keys, act_h, act_v, *, name="", validate=True):
        """``act_h(m, n, key, theta)`` acts on the first index, ``act_v`` on the second."""
        keys = [[sorted(level_keys(m, n), key=canon) for n in range(N + 1)] for m in range(M + 1)]
        index = [[{k: j for j, k in enumerate(c)} for c in row] for row in keys]

        def look(m, n, k, what):
            try:
                return index[m][n][k]
            except KeyError:
                raise SimplicialError(f"{name}: {what} leaves the model at ({m},{n}): {k!r}") from None

        hface = [[None] * (N + 1) for _ in range(M + 1)]
        hdeg = [[None] * (N + 1) for _ in range(M + 1)]
        vface = [[None] * (N + 1) for _ in range(M + 1)]
        vdeg = [[None] * (N + 1) for _ in range(M + 1)]
        for m in range(M + 1):
            for n in range(N + 1):
                ks = keys[m][n]
                if m >= 1:
                    hface[m][n] = [tuple(look(m - 1, n, act_h(m, n, k, ops.coface(m, i)), "d^h") for k in ks)
                                   for i in range(m + 1)]
                if m < M:
                    hdeg[m][n] = [tuple(look(m + 1, n, act_h(m, n, k, ops.codegeneracy(m, i)), "s^h") for k in ks)
                                  for i in range(m + 1)]
                if n >= 1:
                    vface[m][n] = [tuple(look(m, n - 1, act_v(m, n, k, ops.coface(n, i)), "d^v") for k in ks)
                                   for i in range(n + 1)]
                if n < N:
                    vdeg[m][n] = [tuple(look(m, n + 1, act_v(m, n, k, ops.codegeneracy(n, i)), "s^v") for k in ks)
                                  for i in range(n + 1)]
        return cls(keys, hface, hdeg, vface, vdeg, name=name, validate=validate)

    def column(self, m):
        """The vertical simplicial set at horizontal level m."""
        return TruncatedSimplicialSet(self.keys[m], [()] + [self.vface[m][n] for n in range(1, self.N + 1)],
                                      [self.vdeg[m][n] for n in range(self.N)], validate=False)

    def row(self, n):
        """The horizontal simplicial set at vertical level n."""
        return TruncatedSimplicialSet([self.keys[m][n] for m in range(self.M + 1)],
                                      [()] + [self.hface[m][n] for m in range(1, self.M + 1)],
                                      [self.hdeg[m][n] for m in range(self.M)], validate=False)

    def validate(self):
        for m in range(self.M + 1):
            self.column(m).validate()
        for n in range(self.N + 1):
            self.row(n).validate()
        for m in range(self.M + 1):
            for n in range(self.N + 1):
                for x in range(self.size(m, n)):
                    self._check_commute(m, n, x)
        return True

    def _check_commute(self, m, n, x):
        hops = []
        if m >= 1:
            hops += [("d", i, self.hface, self.hface) for i in range(m + 1)]
        if m < self.M:
            hops += [("s", i, self.hdeg, self.hdeg) for i in range(m + 1)]
        vops = []
        if n >= 1:
            vops += [("d", j) for j in range(n + 1)]
        if n < self.N:
            vops += [("s", j) for j in range(n + 1)]
        for hk, i, _, _ in hops:
            for vk, j in vops:
                mh = m - 1 if hk == "d" else m + 1
                nv = n - 1 if vk == "d" else n + 1
                htab = self.hface if hk == "d" else self.hdeg
                vtab = self.vface if vk == "d" else self.vdeg
                a = vtab[mh][n][j][htab[m][n][i][x]]
                b = htab[m][nv][i][vtab[m][n][j][x]]
                if a != b:
                    raise SimplicialError(
                        f"horizontal {hk}_{i} and vertical {vk}_{j} do not commute at ({m},{n}) "
                        f"on {self.keys[m][n][x]!r}")


def diagonal(W, N=None, *, bound=None, name=None):
    """diag(W): level n is W_{n,n}; the face d_i is d^h_i d^v_i."""
    top = min(W.M, W.N) if N is None else N
    if top > W.M or top > W.N:
        raise TruncationError(top, min(W.M, W.N), "diagonal")
    keys = [W.keys[n][n] for n in range(top + 1)]
    faces = [()]
    for n in range(1, top + 1):
        faces.append([tuple(W.hface[n][n - 1][i][v] for v in W.vface[n][n][i]) for i in range(n + 1)])
    degens = []
    for n in range(top):
        degens.append([tuple(W.hdeg[n][n + 1][i][v] for v in W.vdeg[n][n][i]) for i in range(n + 1)])
    D = TruncatedSimplicialSet(keys, faces, degens, name=name or f"diag({W.name})", validate=False)
    D.with_exactness(bound)
    return D


def external_product(X, Y):
    """(X [x] Y)_{m,n} = X_m x Y_n."""
    return BisimplicialSet.from_model(
        X.N, Y.N, lambda m, n: [(a, b) for a in X.keys[m] for b in Y.keys[n]],
        lambda m, n, k, th: (X.act(m, k[0], th), k[1]),
        lambda m, n, k, th: (k[0], Y.act(n, k[1], th)),
        name=f"{X.name}[x]{Y.name}")


def constant_bisimplicial(B, M):
    """cB: constant in the horizontal direction, (cB)_{m,n} = B_n."""
    return BisimplicialSet.from_model(
        M, B.N, lambda m, n: list(B.keys[n]),
        lambda m, n, k, th: k,
        lambda m, n, k, th: B.act(n, k, th),
        name=f"c{B.name}")


class BisimplicialMap:
    """Componentwise map ``comps[m][n]`` commuting with both directions."""

    def __init__(self, source, target, comps, *, validate=True):
        self.source, self.target = source, target
        self.comps = tuple(tuple(tuple(c) for c in row) for row in comps)
        if validate:
            self.validate()

    @classmethod
    def from_keys(cls, source, target, fn, *, validate=True):
        comps = [[tuple(target.index(m, n, fn(m, n, k)) for k in source.keys[m][n])
                  for n in range(source.N + 1)] for m in range(source.M + 1)]
        return cls(source, target, comps, validate=validate)

    def validate(self):
        S, T = self.source, self.target
        for m in range(S.M + 1):
            for n in range(S.N + 1):
                c = self.comps[m][n]
                for x in range(S.size(m, n)):
                    y = c[x]
                    if m >= 1:
                        for i in range(m + 1):
                            if self.comps[m - 1][n][S.hface[m][n][i][x]] != T.hface[m][n][i][y]:
                                raise MapError(f"bisimplicial map breaks d^h_{i} at ({m},{n})")
                    if n >= 1:
                        for j in range(n + 1):
                            if self.comps[m][n - 1][S.vface[m][n][j][x]] != T.vface[m][n][j][y]:
                                raise MapError(f"bisimplicial map breaks d^v_{j} at ({m},{n})")
                    if m < S.M:
                        for i in range(m + 1):
                            if self.comps[m + 1][n][S.hdeg[m][n][i][x]] != T.hdeg[m][n][i][y]:
                                raise MapError(f"bisimplicial map breaks s^h_{i} at ({m},{n})")
                    if n < S.N:
                        for j in range(n + 1):
                            if self.comps[m][n + 1][S.vdeg[m][n][j][x]] != T.vdeg[m][n][j][y]:
                                raise MapError(f"bisimplicial map breaks s^v_{j} at ({m},{n})")
        return True

    def diagonal(self, dsource, dtarget):
        top = dsource.N
        return SimplicialMap(dsource, dtarget, [self.comps[n][n] for n in range(top + 1)], validate=False)
