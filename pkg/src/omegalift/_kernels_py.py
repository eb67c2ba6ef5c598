"""Pure-Python implementations of the hot index kernels.

Mirrors the compiled omegalift._kernels extension and is selected by
omegalift.kernels when the extension is unavailable or OMEGALIFT_PURE is
set.  Permutations of the root index set travel as array('i') (positive
roots first, so index i < npos iff the root is positive); coroot
coordinate tables travel as flat array('q') rows.
"""

from array import array

BACKEND = "python"


def identity_perm(n):
    return array("i", range(n))


def compose(pu, pv):
    """Permutation of the composite u∘v: out[i] = pu[pv[i]]."""
    return array("i", map(pu.__getitem__, pv))


def inverse_perm(p):
    out = array("i", bytes(4 * len(p)))
    for i, j in enumerate(p):
        out[j] = i
    return out


def perm_power(p, n):
    if n < 0:
        return perm_power(inverse_perm(p), -n)
    out = identity_perm(len(p))
    base = p
    while n:
        if n & 1:
            out = array("i", map(base.__getitem__, out))
        base = array("i", map(base.__getitem__, base))
        n >>= 1
    return out


def perm_order(p):
    ident = identity_perm(len(p))
    cur = p
    n = 1
    while cur != ident:
        cur = array("i", map(p.__getitem__, cur))
        n += 1
    return n


def inversion_count(p, npos):
    count = 0
    for i in range(npos):
        if p[i] >= npos:
            count += 1
    return count


def fset_indices(pu, pv, npos):
    """Positive indices i with v(i) negative and u(v(i)) positive."""
    out = array("i")
    for i in range(npos):
        j = pv[i]
        if j >= npos and pu[j] < npos:
            out.append(i)
    return out


def cocycle_coords(pu, pv, ptwist, npos, table, ncols):
    """Sum of coroot-coordinate rows table[ptwist[i]] over the F-set of (u, v)."""
    acc = [0] * ncols
    for i in range(npos):
        j = pv[i]
        if j >= npos and pu[j] < npos:
            base = ptwist[i] * ncols
            for c in range(ncols):
                acc[c] += table[base + c]
    return tuple(acc)
