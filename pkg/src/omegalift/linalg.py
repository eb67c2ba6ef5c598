"""Exact linear algebra over the rationals and the integers.

Vectors are tuples of Fraction; matrices are lists (or tuples) of such rows.
Integer lattice work (Hermite and Smith normal forms) runs on plain Python
ints, so everything is arbitrary precision and nothing here ever touches a
float.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(values) -> Vec:
    """Coerce an iterable of ints/strings/Fractions to an exact vector."""
    return tuple(Fraction(v) for v in values)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def vec_sub(x: Vec, y: Vec) -> Vec:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def vec_neg(x: Vec) -> Vec:
    return tuple(-a for a in x)


def vec_scale(c, x: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in x)


def vec_sum(vectors, dim: int | None = None) -> Vec:
    """Sum of a (possibly empty) iterable of vectors; dim required if empty."""
    acc = None
    for v in vectors:
        acc = v if acc is None else vec_add(acc, v)
    if acc is None:
        if dim is None:
            raise ValueError("empty sum needs an explicit dimension")
        return zero_vec(dim)
    return acc


def dot(x: Vec, y: Vec) -> Fraction:
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return sum((a * b for a, b in zip(x, y)), ZERO)


def is_integral(x: Vec) -> bool:
    return all(a.denominator == 1 for a in x)


def common_denominator(rows) -> int:
    d = 1
    for row in rows:
        for a in row:
            d = lcm(d, Fraction(a).denominator)
    return d


def mat_identity(n: int) -> list[list[Fraction]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_invert(rows) -> list[Vec]:
    """Inverse of a square rational matrix by Gauss-Jordan elimination."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + ident
         for row, ident in zip(rows, mat_identity(n), strict=True)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = ONE / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [tuple(row[n:]) for row in a]


# ---------------------------------------------------------------------------
# Integer lattice normal forms
# ---------------------------------------------------------------------------

def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def hnf(rows) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix.

    Returns the nonzero rows: echelon shape with strictly increasing pivot
    columns, positive pivots, and entries above each pivot reduced into
    [0, pivot).  Two generating sets span the same lattice iff their HNFs
    are identical, so this is the canonical form used for lattice equality.
    """
    work = [list(map(int, r)) for r in rows]
    if not work:
        return []
    ncols = len(work[0])
    top = 0
    for col in range(ncols):
        piv = next((i for i in range(top, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[top], work[piv] = work[piv], work[top]
        for i in range(top + 1, len(work)):
            if not work[i][col]:
                continue
            a, b = work[top][col], work[i][col]
            g, x, y = ext_gcd(a, b)
            ag, bg = a // g, b // g
            rt, ri = work[top], work[i]
            # unimodular 2x2 transform: pivot entry becomes g, other 0
            work[top] = [x * p + y * q for p, q in zip(rt, ri)]
            work[i] = [ag * q - bg * p for p, q in zip(rt, ri)]
        if work[top][col] < 0:
            work[top] = [-a for a in work[top]]
        for i in range(top):
            q = work[i][col] // work[top][col]
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[top])]
        top += 1
    return work[:top]


def hnf_solve(hrows, target) -> list[int] | None:
    """Integer coefficients x with x . hrows = target, or None.

    hrows must be in row HNF (independent rows).
    """
    t = list(map(int, target))
    coeffs = []
    for row in hrows:
        pc = next(j for j, e in enumerate(row) if e)
        q, r = divmod(t[pc], row[pc])
        if r:
            return None
        coeffs.append(q)
        if q:
            for j in range(pc, len(t)):
                t[j] -= q * row[j]
    if any(t):
        return None
    return coeffs


def snf_with_transforms(mat):
    """Smith normal form with transforms: returns (diag, U, V), U*M*V = D.

    diag lists the diagonal entries d_1 | d_2 | ... (nonnegative, zeros
    last); U and V are unimodular.  Intended for the small matrices that
    arise from rank <= 9 lattices.
    """
    a = [list(map(int, r)) for r in mat]
    k = len(a)
    n = len(a[0]) if k else 0
    u = [[int(i == j) for j in range(k)] for i in range(k)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    while t < min(k, n):
        # locate a nonzero entry of least magnitude in the trailing block
        best = None
        for i in range(t, k):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, k):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    addmul_row(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    addmul_col(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # enforce the divisibility chain d_t | a[i][j]
        fixed = False
        for i in range(t + 1, k):
            if fixed:
                break
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    addmul_row(t, i, -1)
                    fixed = True
                    break
        if fixed:
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = [a[i][i] for i in range(min(k, n))]
    return diag, u, v


def integer_kernel(mat) -> list[list[int]]:
    """Basis of {x : x . mat = 0} over the integers."""
    k = len(mat)
    if k == 0:
        return []
    diag, u, _v = snf_with_transforms(mat)
    s = sum(1 for d in diag if d)
    return [u[i] for i in range(s, k)]


def int_solve(mat, target) -> list[int] | None:
    """Some integer x with x . mat = target, or None if unsolvable."""
    k = len(mat)
    if k == 0:
        return [] if not any(target) else None
    n = len(mat[0])
    diag, u, v = snf_with_transforms(mat)
    tv = [sum(target[i] * v[i][j] for i in range(n)) for j in range(n)]
    y = [0] * k
    for j in range(n):
        d = diag[j] if j < len(diag) else 0
        if d:
            q, r = divmod(tv[j], d)
            if r:
                return None
            y[j] = q
        elif tv[j]:
            return None
    return [sum(y[i] * u[i][j] for i in range(k)) for j in range(k)]
