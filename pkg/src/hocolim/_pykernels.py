"""Pure-Python kernels.  Same contracts as the compiled ``_ckernels`` module."""
from math import gcd


def check_identities(sizes, faces, degens):
    """Scan face/degeneracy tables for the first violated simplicial identity.

    ``faces[n][i]`` and ``degens[n][i]`` are integer sequences indexed by the
    simplices of level n.  Returns ``None`` or ``(name, n, (i, j), x)``.
    """
    N = len(sizes) - 1
    for n in range(2, N + 1):
        fn, fm = faces[n], faces[n - 1]
        for j in range(1, n + 1):
            dj = fn[j]
            for i in range(j):
                di = fn[i]
                a, b = fm[i], fm[j - 1]
                for x in range(sizes[n]):
                    if a[dj[x]] != b[di[x]]:
                        return ("d_i d_j = d_{j-1} d_i", n, (i, j), x)
    for n in range(N):
        sn = degens[n]
        f_up = faces[n + 1]
        for j in range(n + 1):
            sj = sn[j]
            dj, dj1 = f_up[j], f_up[j + 1]
            for x in range(sizes[n]):
                y = sj[x]
                if dj[y] != x:
                    return ("d_j s_j = id", n, (j, j), x)
                if dj1[y] != x:
                    return ("d_{j+1} s_j = id", n, (j + 1, j), x)
            if n == 0:
                continue
            fdown = faces[n]
            sdown = degens[n - 1]
            for i in range(n + 2):
                if i == j or i == j + 1:
                    continue
                di_up = f_up[i]
                if i < j:
                    other_s, other_d = sdown[j - 1], fdown[i]
                    name = "d_i s_j = s_{j-1} d_i"
                else:
                    other_s, other_d = sdown[j], fdown[i - 1]
                    name = "d_i s_j = s_j d_{i-1}"
                for x in range(sizes[n]):
                    if di_up[sj[x]] != other_s[other_d[x]]:
                        return (name, n, (i, j), x)
    for n in range(N - 1):
        sn, sup = degens[n], degens[n + 1]
        for j in range(n + 1):
            for i in range(j + 1):
                a, b = sup[i], sup[j + 1]
                c, d = sn[j], sn[i]
                for x in range(sizes[n]):
                    if a[c[x]] != b[d[x]]:
                        return ("s_i s_j = s_{j+1} s_i", n, (i, j), x)
    return None


def _normalise(diag):
    """Turn a list of nonzero diagonal entries into invariant factors."""
    d = sorted(abs(v) for v in diag if v)
    big = [v for v in d if v != 1]
    ones = len(d) - len(big)
    for i in range(len(big)):
        for j in range(i + 1, len(big)):
            g = gcd(big[i], big[j])
            if g != big[i]:
                big[i], big[j] = g, big[i] * big[j] // g
    return [1] * ones + sorted(big)


def _dense_diagonal(A):
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = A[i][t]
                if v:
                    q = v // p
                    ri, rt = A[i], A[t]
                    for j in range(t, n):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    if ri[t]:
                        dirty = True
            rt = A[t]
            for j in range(t + 1, n):
                v = rt[j]
                if v:
                    q = v // p
                    for row in A:
                        if row[t]:
                            row[j] -= q * row[t]
                    if rt[j]:
                        dirty = True
            if not dirty:
                break
            best = None
            for i in range(t, m):
                v = A[i][t]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, "r")
            for j in range(t, n):
                v = A[t][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), j, "c")
            _, k, kind = best
            if kind == "r":
                A[t], A[k] = A[k], A[t]
            else:
                for row in A:
                    row[t], row[k] = row[k], row[t]
        diag.append(A[t][t])
        t += 1
    return diag


def smith_invariants(rows, ncols):
    """Invariant factors (nonzero, divisibility-ordered) of an integer matrix.

    ``rows`` is a list of ``{column: value}`` dicts.  Unit pivots are
    eliminated sparsely first; the residue goes through dense elimination
    with exact Python integers.
    """
    rows = [dict(r) for r in rows if r]
    cols = {}
    for ri, r in enumerate(rows):
        for c in r:
            cols.setdefault(c, set()).add(ri)
    alive = set(range(len(rows)))
    units = 0
    progress = True
    while progress:
        progress = False
        for ri in sorted(alive):
            r = rows[ri]
            pc = next((c for c in sorted(r) if r[c] in (1, -1)), None)
            if pc is None:
                continue
            pv = r[pc]
            for rj in sorted(cols[pc] - {ri}):
                s = rows[rj]
                q = s[pc] * pv
                for c, v in r.items():
                    nv = s.get(c, 0) - q * v
                    if nv:
                        if c not in s:
                            cols.setdefault(c, set()).add(rj)
                        s[c] = nv
                    elif c in s:
                        del s[c]
                        cols[c].discard(rj)
                if not s:
                    alive.discard(rj)
            for c in r:
                cols[c].discard(ri)
            del cols[pc]
            rows[ri] = {}
            alive.discard(ri)
            units += 1
            progress = True
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    used = sorted({c for r in rest for c in r})
    pos = {c: k for k, c in enumerate(used)}
    dense = [[0] * len(used) for _ in rest]
    for k, r in enumerate(rest):
        for c, v in r.items():
            dense[k][pos[c]] = v
    return _normalise([1] * units + (_dense_diagonal(dense) if dense else []))


def smith_invariants_dense(matrix):
    """Dense entry point used for cross-checking against the compiled kernel."""
    A = [list(map(int, row)) for row in matrix]
    return _normalise(_dense_diagonal(A)) if A and A[0] else []
