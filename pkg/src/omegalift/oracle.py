"""Concrete matrix model for type A over Laurent polynomials in pi.

Canonical Weyl lifts, torus cocharacters and sign elements of the
general-linear model are monomial matrices over Z[pi, pi^-1]; their literal
products are the independent ground truth the symbolic multiplication law
is validated against.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Vec
from .tits import TitsElement
from .weyl import WeylElement


class LaurentPoly:
    """An integer Laurent polynomial in one formal variable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[int(k)] = int(c)
        self.terms = clean

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, c: int, k: int) -> "LaurentPoly":
        return cls({k: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms):
            c = self.terms[k]
            if k == 0:
                bits.append(f"{c}")
            else:
                bits.append(f"{c}*pi^{k}")
        return " + ".join(bits)


_ZERO = LaurentPoly()
_ONE = LaurentPoly.const(1)

Matrix = tuple[tuple[LaurentPoly, ...], ...]


def lm_identity(n: int) -> Matrix:
    return tuple(
        tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)
    )


def lm_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = _ZERO
            for k in range(n):
                if a[i][k].terms and b[k][j].terms:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def lm_det_monomial(m: Matrix) -> LaurentPoly:
    """Determinant of a monomial matrix (one nonzero entry per row/column)."""
    n = len(m)
    perm = []
    for i in range(n):
        nz = [j for j in range(n) if not m[i][j].is_zero()]
        if len(nz) != 1:
            raise ValueError("matrix is not monomial")
        perm.append(nz[0])
    if sorted(perm) != list(range(n)):
        raise ValueError("matrix is not monomial")
    sign = 1
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        j = s
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    out = LaurentPoly.const(sign)
    for i in range(n):
        out = out * m[i][perm[i]]
    return out


def _root_support(n: int, alpha: Vec) -> tuple[int, int]:
    i = j = None
    for k, c in enumerate(alpha):
        if c == 1:
            i = k
        elif c == -1:
            j = k
        elif c != 0:
            raise ValueError(f"{alpha} is not a type-A root")
    if i is None or j is None or len(alpha) != n:
        raise ValueError(f"{alpha} is not a root of the rank-{n} model")
    return i, j


def oracle_nalpha(n: int, alpha: Vec) -> Matrix:
    """The canonical reflection representative u(1) u_-(-1) u(1) for a root."""
    i, j = _root_support(n, alpha)
    rows = [[_ONE if a == b else _ZERO for b in range(n)] for a in range(n)]
    rows[i][i] = _ZERO
    rows[i][j] = _ONE
    rows[j][i] = LaurentPoly.const(-1)
    rows[j][j] = _ZERO
    return tuple(tuple(r) for r in rows)


def oracle_springer_lift(w: WeylElement) -> Matrix:
    """Product of the n_alpha over the deterministic reduced word of w."""
    rs = w.rs
    n = rs.dim
    cache = rs._cache.setdefault("springer_lifts", {})
    key = w.perm.tobytes()
    got = cache.get(key)
    if got is None:
        got = lm_identity(n)
        for i in w.reduced_word():
            got = lm_mul(got, oracle_nalpha(n, rs.simple[i - 1]))
        cache[key] = got
    return got


def _int_entries(v: Vec) -> list[int]:
    out = []
    for c in v:
        f = Fraction(c)
        if f.denominator != 1:
            raise ValueError(f"{v} is not an integral cocharacter")
        out.append(int(f))
    return out


def oracle_torus(lam: Vec) -> Matrix:
    """lam(pi^-1): the diagonal matrix with entries pi^(-lam_i)."""
    ints = _int_entries(lam)
    n = len(ints)
    return tuple(
        tuple(LaurentPoly.monomial(1, -ints[i]) if i == j else _ZERO for j in range(n))
        for i in range(n)
    )


def oracle_sign(mu: Vec) -> Matrix:
    """mu(-1): the diagonal matrix with entries (-1)^(mu_i)."""
    ints = _int_entries(mu)
    n = len(ints)
    return tuple(
        tuple(LaurentPoly.const(-1 if ints[i] % 2 else 1) if i == j else _ZERO
              for j in range(n))
        for i in range(n)
    )


def to_matrix(x: TitsElement) -> Matrix:
    """Image of a symbolic element in the rank-n matrix model.

    Requires the translation part and a sign representative to be integral,
    which holds over the general-linear lattice.
    """
    return lm_mul(lm_mul(oracle_torus(x.lam), oracle_sign(x.sgn.ambient())),
                  oracle_springer_lift(x.w))
