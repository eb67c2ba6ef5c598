"""Symbolic arithmetic in the torus-normalizer model.

Elements live in normal form lambda(pi^-1) . mu(-1) . N(w): a cocharacter
exponent for the uniformizer, a 2-torsion torus part, and a canonical Weyl
lift.  Multiplication pulls torus parts left through the lifts and pays the
2-cocycle of the lift failure:

    (l1, m1, w1) (l2, m2, w2) = (l1 + w1 l2,
                                 m1 + w1 m2 + (w1 w2) c,
                                 w1 w2),

where c is the sum of the coroots over the F-set of (w1, w2), taken mod 2L.

Internally coweights are split into an integer coordinate vector over the
simple coroots (scaled by the lattice's fixed denominator) plus a Weyl-fixed
radical part, so the hot path is integer arithmetic; exact ambient vectors
are reconstructed on demand.
"""

from __future__ import annotations

from fractions import Fraction

from . import kernels
from .linalg import Vec, vec_add, vec_neg, vec_scale, vec_sum, zero_vec
from .rootsys import CocharLattice
from .weyl import WeylElement, identity as weyl_identity, random_element


def _act_coords(w: WeylElement, u: tuple[int, ...]) -> tuple[int, ...]:
    # image of sum(u_i * coroot_i) in simple-coroot coordinates
    rs = w.rs
    table = rs.coroot_coords
    perm = w.perm
    out = [0] * rs.rank
    for c, si in zip(u, rs.simple_indices):
        if c:
            row = table[perm[si]]
            for k in range(rs.rank):
                out[k] += c * row[k]
    return tuple(out)


def _split_coweight(lat: CocharLattice, v: Vec) -> tuple[tuple[int, ...], Vec]:
    rs = lat.rs
    e = lat.coroot_scale
    coords = rs.coroot_span_coords(v)
    scaled = []
    for c in coords:
        s = c * e
        if s.denominator != 1:
            raise ValueError(f"coweight {v} has coordinates outside the lattice scale")
        scaled.append(int(s))
    return tuple(scaled), rs.radical_part(v)


def _join_coweight(lat: CocharLattice, u: tuple[int, ...], rad: Vec) -> Vec:
    rs = lat.rs
    span = vec_sum(
        (vec_scale(Fraction(c, lat.coroot_scale), rs.coroot_by_index(i))
         for c, i in zip(u, rs.simple_indices) if c),
        rs.dim,
    )
    return vec_add(span, rad)


class SignClass:
    """A 2-torsion torus element mu(-1), i.e. a coweight taken mod 2L."""

    __slots__ = ("lattice", "_u", "_rad", "_bits")

    def __init__(self, lattice: CocharLattice, u, rad, bits=None):
        self.lattice = lattice
        self._u = u
        self._rad = rad
        self._bits = bits

    @classmethod
    def zero(cls, lattice: CocharLattice) -> "SignClass":
        rank = lattice.rs.rank
        return cls(lattice, (0,) * rank, zero_vec(lattice.rs.dim),
                   bits=(0,) * lattice.rank)

    @classmethod
    def from_coweight(cls, lattice: CocharLattice, v: Vec) -> "SignClass":
        if not lattice.contains(v):
            raise ValueError(f"coweight {v} is not in the lattice")
        u, rad = _split_coweight(lattice, v)
        e2 = 2 * lattice.coroot_scale
        return cls(lattice, tuple(c % e2 for c in u), rad)

    @property
    def coords(self) -> tuple[int, ...]:
        """Canonical bit vector over the lattice basis."""
        if self._bits is None:
            self._bits = self.lattice.mod2_class(self.ambient())
        return self._bits

    def ambient(self) -> Vec:
        """A representative coweight of the class."""
        return _join_coweight(self.lattice, self._u, self._rad)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, SignClass)
            and self.lattice == other.lattice
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.lattice, self.coords))

    def __repr__(self):
        return f"SignClass{self.coords}"


class TitsElement:
    """Normal form lambda(pi^-1) . mu(-1) . N(w) over a fixed lattice."""

    __slots__ = ("lattice", "_lam_u", "_lam_rad", "sgn", "w")

    def __init__(self, lattice, lam_u, lam_rad, sgn, w):
        self.lattice = lattice
        self._lam_u = lam_u
        self._lam_rad = lam_rad
        self.sgn = sgn
        self.w = w

    @classmethod
    def from_parts(cls, lattice: CocharLattice, lam: Vec, sign, w: WeylElement) -> "TitsElement":
        """Build an element from an exact coweight, a sign, and a Weyl part.

        sign may be None (trivial), a SignClass, or a coweight vector.
        """
        if not lattice.contains(lam):
            raise ValueError(f"translation part {lam} is not in the lattice")
        if sign is None:
            sgn = SignClass.zero(lattice)
        elif isinstance(sign, SignClass):
            if sign.lattice != lattice:
                raise ValueError("sign class lives over a different lattice")
            sgn = sign
        else:
            sgn = SignClass.from_coweight(lattice, sign)
        if w.rs is not lattice.rs:
            raise ValueError("Weyl part belongs to a different root system")
        lam_u, lam_rad = _split_coweight(lattice, lam)
        return cls(lattice, lam_u, lam_rad, sgn, w)

    @property
    def lam(self) -> Vec:
        return _join_coweight(self.lattice, self._lam_u, self._lam_rad)

    def is_identity(self) -> bool:
        return (
            not any(self._lam_u)
            and not any(self._lam_rad)
            and self.sgn.is_zero()
            and self.w.is_identity()
        )

    def __eq__(self, other):
        return (
            isinstance(other, TitsElement)
            and self.lattice == other.lattice
            and self._lam_u == other._lam_u
            and self._lam_rad == other._lam_rad
            and self.w == other.w
            and self.sgn == other.sgn
        )

    def __hash__(self):
        return hash((self.lattice, self._lam_u, self._lam_rad,
                     self.w, self.sgn.coords))

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, n: int):
        return power(self, n)

    def __repr__(self):
        return (f"TitsElement(lam={self.lam}, sign={self.sgn.coords}, "
                f"w={self.w.reduced_word()})")


def identity_element(lattice: CocharLattice) -> TitsElement:
    rs = lattice.rs
    return TitsElement(lattice, (0,) * rs.rank, zero_vec(rs.dim),
                       SignClass.zero(lattice), weyl_identity(rs))


def weyl_lift(lattice: CocharLattice, w: WeylElement) -> TitsElement:
    """The canonical lift N(w) as a normal-form element (0, 0, w)."""
    rs = lattice.rs
    if w.rs is not rs:
        raise ValueError("Weyl part belongs to a different root system")
    return TitsElement(lattice, (0,) * rs.rank, zero_vec(rs.dim),
                       SignClass.zero(lattice), w)


def torus_element(lattice: CocharLattice, lam: Vec) -> TitsElement:
    return TitsElement.from_parts(lattice, lam, None, weyl_identity(lattice.rs))


def sign_element(lattice: CocharLattice, mu: Vec) -> TitsElement:
    rs = lattice.rs
    return TitsElement(lattice, (0,) * rs.rank, zero_vec(rs.dim),
                       SignClass.from_coweight(lattice, mu), weyl_identity(rs))


def multiply(x: TitsElement, y: TitsElement) -> TitsElement:
    if x.lattice != y.lattice:
        raise ValueError("cannot multiply over different lattices")
    lat = x.lattice
    rs = lat.rs
    e = lat.coroot_scale
    pu, pv = x.w.perm, y.w.perm
    pw = kernels.compose(pu, pv)
    cocycle = kernels.cocycle_coords(pu, pv, pw, rs.npos,
                                     rs.coroot_table_flat, rs.rank)
    lam_u = tuple(a + b for a, b in zip(x._lam_u, _act_coords(x.w, y._lam_u)))
    lam_rad = vec_add(x._lam_rad, y._lam_rad)
    e2 = 2 * e
    sgn_u = tuple(
        (a + b + e * c) % e2
        for a, b, c in zip(x.sgn._u, _act_coords(x.w, y.sgn._u), cocycle)
    )
    sgn_rad = vec_add(x.sgn._rad, y.sgn._rad)
    return TitsElement(lat, lam_u, lam_rad, SignClass(lat, sgn_u, sgn_rad),
                       WeylElement(rs, pw))


def inverse(x: TitsElement) -> TitsElement:
    lat = x.lattice
    rs = lat.rs
    e = lat.coroot_scale
    winv = x.w.inverse()
    lam_u = tuple(-a for a in _act_coords(winv, x._lam_u))
    lam_rad = vec_neg(x._lam_rad)
    # F(w, w^-1) is the inversion set of w^-1; solving
    # mu + w mu' + c = 0 mod 2L gives mu' = w^-1(-mu - c).
    cinv = kernels.cocycle_coords(x.w.perm, winv.perm,
                                  kernels.identity_perm(2 * rs.npos),
                                  rs.npos, rs.coroot_table_flat, rs.rank)
    tmp = tuple(-(a + e * c) for a, c in zip(x.sgn._u, cinv))
    e2 = 2 * e
    sgn_u = tuple(c % e2 for c in _act_coords(winv, tmp))
    sgn_rad = vec_neg(x.sgn._rad)
    return TitsElement(lat, lam_u, lam_rad, SignClass(lat, sgn_u, sgn_rad),
                       WeylElement(rs, winv.perm))


def power(x: TitsElement, n: int) -> TitsElement:
    if n < 0:
        return power(inverse(x), -n)
    result = identity_element(x.lattice)
    base = x
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


def cocycle_sum(w: WeylElement, r: int) -> Vec:
    """Exact coroot sum over F_w(1), ..., F_w(r-1), before mod-2 reduction."""
    if r < 1:
        raise ValueError("power must be at least 1")
    rs = w.rs
    acc = [0] * rs.rank
    pid = kernels.identity_perm(2 * rs.npos)
    pm = w.perm
    for _ in range(1, r):
        c = kernels.cocycle_coords(w.perm, pm, pid, rs.npos,
                                   rs.coroot_table_flat, rs.rank)
        acc = [a + b for a, b in zip(acc, c)]
        pm = kernels.compose(pm, w.perm)
    return vec_sum(
        (vec_scale(a, rs.coroot_by_index(i)) for a, i in zip(acc, rs.simple_indices) if a),
        rs.dim,
    )


def lift_power_closed_form(lattice: CocharLattice, w: WeylElement, n: int) -> TitsElement:
    """N(w)^n via the closed-form product of the cocycle layers F_w(m).

    Used as the second route against power(weyl_lift(w), n).
    """
    if n < 0:
        raise ValueError("closed form takes nonnegative powers")
    rs = lattice.rs
    e = lattice.coroot_scale
    pwn = kernels.perm_power(w.perm, n)
    acc = [0] * rs.rank
    pm = w.perm
    for _ in range(1, n):
        c = kernels.cocycle_coords(w.perm, pm, pwn, rs.npos,
                                   rs.coroot_table_flat, rs.rank)
        acc = [a + b for a, b in zip(acc, c)]
        pm = kernels.compose(pm, w.perm)
    e2 = 2 * e
    sgn = SignClass(lattice, tuple((e * a) % e2 for a in acc),
                    zero_vec(rs.dim))
    return TitsElement(lattice, (0,) * rs.rank, zero_vec(rs.dim), sgn,
                       WeylElement(rs, pwn))


def _basis_splits(lat: CocharLattice):
    got = lat._cache.get("basis_splits")
    if got is None:
        got = tuple(_split_coweight(lat, b) for b in lat.basis)
        lat._cache["basis_splits"] = got
    return got


def random_tits_element(lat: CocharLattice, rng, w: WeylElement | None = None) -> TitsElement:
    """Seeded random element: small random translation, random sign bits,
    and a random (or supplied) Weyl part."""
    rs = lat.rs
    if w is None:
        w = random_element(rs, rng)
    splits = _basis_splits(lat)
    rank = rs.rank
    lam_u = [0] * rank
    lam_rad = zero_vec(rs.dim)
    sgn_u = [0] * rank
    sgn_rad = zero_vec(rs.dim)
    for u, rad in splits:
        z = rng.randint(-3, 3)
        if z:
            lam_u = [a + z * b for a, b in zip(lam_u, u)]
            if any(rad):
                lam_rad = vec_add(lam_rad, vec_scale(z, rad))
        if rng.getrandbits(1):
            sgn_u = [a + b for a, b in zip(sgn_u, u)]
            if any(rad):
                sgn_rad = vec_add(sgn_rad, rad)
    e2 = 2 * lat.coroot_scale
    sgn = SignClass(lat, tuple(c % e2 for c in sgn_u), sgn_rad)
    return TitsElement(lat, tuple(lam_u), lam_rad, sgn, w)


def serialize_element(x: TitsElement) -> dict:
    """JSON form: exact rational translation, sign bits, reduced word."""
    return {
        "lambda": [str(c) for c in x.lam],
        "sign": list(x.sgn.coords),
        "weyl": x.w.reduced_word(),
    }
