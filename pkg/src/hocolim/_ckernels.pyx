# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: simplicial identity scan and int64 Smith elimination."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport llabs

cnp.import_array()

ctypedef long long i64

cdef i64 LIMIT = 1LL << 31


def check_identities(sizes, faces, degens):
    """Same contract as ``_pykernels.check_identities``; tables as lists of 2-D arrays."""
    cdef Py_ssize_t N = len(sizes) - 1
    cdef Py_ssize_t n, i, j, x, sz
    cdef i64[:, ::1] fn
    cdef i64[:, ::1] fm
    cdef i64[:, ::1] fup
    cdef i64[:, ::1] sn
    cdef i64[:, ::1] sdown
    cdef i64[:, ::1] sup
    cdef i64[:, ::1] fdown
    cdef i64 y
    F = [None] * (N + 1)
    D = [None] * (N + 1)
    for n in range(1, N + 1):
        F[n] = np.ascontiguousarray(np.asarray(faces[n], dtype=np.int64).reshape(n + 1, sizes[n]))
    for n in range(N):
        D[n] = np.ascontiguousarray(np.asarray(degens[n], dtype=np.int64).reshape(n + 1, sizes[n]))
    for n in range(2, N + 1):
        fn = F[n]
        fm = F[n - 1]
        sz = sizes[n]
        for j in range(1, n + 1):
            for i in range(j):
                for x in range(sz):
                    if fm[i, fn[j, x]] != fm[j - 1, fn[i, x]]:
                        return ("d_i d_j = d_{j-1} d_i", n, (i, j), x)
    for n in range(N):
        sn = D[n]
        fup = F[n + 1]
        sz = sizes[n]
        for j in range(n + 1):
            for x in range(sz):
                y = sn[j, x]
                if fup[j, y] != x:
                    return ("d_j s_j = id", n, (j, j), x)
                if fup[j + 1, y] != x:
                    return ("d_{j+1} s_j = id", n, (j + 1, j), x)
            if n == 0:
                continue
            fdown = F[n]
            sdown = D[n - 1]
            for i in range(n + 2):
                if i == j or i == j + 1:
                    continue
                for x in range(sz):
                    if i < j:
                        if fup[i, sn[j, x]] != sdown[j - 1, fdown[i, x]]:
                            return ("d_i s_j = s_{j-1} d_i", n, (i, j), x)
                    else:
                        if fup[i, sn[j, x]] != sdown[j, fdown[i - 1, x]]:
                            return ("d_i s_j = s_j d_{i-1}", n, (i, j), x)
    for n in range(N - 1):
        sn = D[n]
        sup = D[n + 1]
        sz = sizes[n]
        for j in range(n + 1):
            for i in range(j + 1):
                for x in range(sz):
                    if sup[i, sn[j, x]] != sup[j + 1, sn[i, x]]:
                        return ("s_i s_j = s_{j+1} s_i", n, (i, j), x)
    return None


cdef inline void _swap_rows(i64[:, ::1] A, Py_ssize_t a, Py_ssize_t b, Py_ssize_t n):
    cdef Py_ssize_t j
    cdef i64 t
    if a == b:
        return
    for j in range(n):
        t = A[a, j]
        A[a, j] = A[b, j]
        A[b, j] = t


cdef inline void _swap_cols(i64[:, ::1] A, Py_ssize_t a, Py_ssize_t b, Py_ssize_t m):
    cdef Py_ssize_t i
    cdef i64 t
    if a == b:
        return
    for i in range(m):
        t = A[i, a]
        A[i, a] = A[i, b]
        A[i, b] = t


def dense_diagonal(matrix):
    """Diagonalise an int64 matrix by unimodular row/column operations.

    Raises OverflowError as soon as an entry leaves [-2**31, 2**31]; the
    caller then reruns the exact Python path.
    """
    cdef i64[:, ::1] A = np.array(matrix, dtype=np.int64, order="C", ndmin=2)
    cdef Py_ssize_t m = A.shape[0]
    cdef Py_ssize_t n = A.shape[1]
    cdef Py_ssize_t t = 0, i, j, bi, bj, k
    cdef i64 best, v, p, q
    cdef bint dirty, isrow
    diag = []
    while t < m and t < n:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                v = llabs(A[i, j])
                if v and (best == 0 or v < best):
                    best = v
                    bi = i
                    bj = j
                    if best == 1:
                        break
            if best == 1:
                break
        if best == 0:
            break
        _swap_rows(A, t, bi, n)
        _swap_cols(A, t, bj, m)
        while True:
            p = A[t, t]
            dirty = False
            for i in range(t + 1, m):
                v = A[i, t]
                if v:
                    q = v // p
                    if (v % p) and ((v < 0) != (p < 0)):
                        q -= 1
                    for j in range(t, n):
                        if A[t, j]:
                            A[i, j] -= q * A[t, j]
                            if llabs(A[i, j]) > LIMIT:
                                raise OverflowError("int64 kernel entry growth")
                    if A[i, t]:
                        dirty = True
            for j in range(t + 1, n):
                v = A[t, j]
                if v:
                    q = v // p
                    if (v % p) and ((v < 0) != (p < 0)):
                        q -= 1
                    for i in range(m):
                        if A[i, t]:
                            A[i, j] -= q * A[i, t]
                            if llabs(A[i, j]) > LIMIT:
                                raise OverflowError("int64 kernel entry growth")
                    if A[t, j]:
                        dirty = True
            if not dirty:
                break
            best = 0
            k = -1
            isrow = True
            for i in range(t, m):
                v = llabs(A[i, t])
                if v and (best == 0 or v < best):
                    best = v
                    k = i
                    isrow = True
            for j in range(t, n):
                v = llabs(A[t, j])
                if v and (best == 0 or v < best):
                    best = v
                    k = j
                    isrow = False
            if isrow:
                _swap_rows(A, t, k, n)
            else:
                _swap_cols(A, t, k, m)
        diag.append(int(A[t, t]))
        t += 1
    return diag
