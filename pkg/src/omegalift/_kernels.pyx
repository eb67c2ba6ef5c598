# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled index kernels: root-permutation composition, F-set scans, and
coroot-coordinate accumulation.  Semantics identical to _kernels_py."""

from cpython.array cimport array, clone, resize

import array as _array

cdef array _int_template = _array.array("i")

BACKEND = "c"


def identity_perm(Py_ssize_t n):
    cdef array out = clone(_int_template, n, False)
    cdef int[::1] o = out
    cdef Py_ssize_t i
    for i in range(n):
        o[i] = <int> i
    return out


def compose(int[::1] pu, int[::1] pv):
    cdef Py_ssize_t n = pv.shape[0]
    cdef array out = clone(_int_template, n, False)
    cdef int[::1] o = out
    cdef Py_ssize_t i
    for i in range(n):
        o[i] = pu[pv[i]]
    return out


def inverse_perm(int[::1] p):
    cdef Py_ssize_t n = p.shape[0]
    cdef array out = clone(_int_template, n, False)
    cdef int[::1] o = out
    cdef Py_ssize_t i
    for i in range(n):
        o[p[i]] = <int> i
    return out


def perm_power(int[::1] p, long n):
    if n < 0:
        return perm_power(inverse_perm(p), -n)
    cdef Py_ssize_t size = p.shape[0]
    cdef array out = identity_perm(size)
    cdef array tmp = clone(_int_template, size, False)
    cdef int[::1] ov, tv
    cdef Py_ssize_t i
    cdef long k
    for k in range(n):
        ov = out
        tv = tmp
        for i in range(size):
            tv[i] = p[ov[i]]
        out, tmp = tmp, out
    return out


def perm_order(int[::1] p):
    cdef Py_ssize_t size = p.shape[0]
    cdef array cur = clone(_int_template, size, False)
    cdef array tmp = clone(_int_template, size, False)
    cdef int[::1] cv = cur
    cdef int[::1] tv = tmp
    cdef Py_ssize_t i
    cdef long n = 1
    cdef bint ident
    for i in range(size):
        cv[i] = p[i]
    while True:
        ident = True
        for i in range(size):
            if cv[i] != <int> i:
                ident = False
                break
        if ident:
            return n
        for i in range(size):
            tv[i] = p[cv[i]]
        cur, tmp = tmp, cur
        cv = cur
        tv = tmp
        n += 1


def inversion_count(int[::1] p, Py_ssize_t npos):
    cdef Py_ssize_t i
    cdef long count = 0
    for i in range(npos):
        if p[i] >= npos:
            count += 1
    return count


def fset_indices(int[::1] pu, int[::1] pv, Py_ssize_t npos):
    cdef array out = clone(_int_template, npos, False)
    cdef int[::1] o = out
    cdef Py_ssize_t i, k = 0
    cdef int j
    for i in range(npos):
        j = pv[i]
        if j >= npos and pu[j] < npos:
            o[k] = <int> i
            k += 1
    resize(out, k)
    return out


def cocycle_coords(int[::1] pu, int[::1] pv, int[::1] ptwist,
                   Py_ssize_t npos, long long[::1] table, Py_ssize_t ncols):
    cdef long long[64] acc
    cdef Py_ssize_t i, c, base
    cdef int j
    if ncols > 64:
        raise ValueError("coordinate width above compiled limit")
    for c in range(ncols):
        acc[c] = 0
    for i in range(npos):
        j = pv[i]
        if j >= npos and pu[j] < npos:
            base = <Py_ssize_t> ptwist[i] * ncols
            for c in range(ncols):
                acc[c] += table[base + c]
    return tuple(acc[c] for c in range(ncols))
