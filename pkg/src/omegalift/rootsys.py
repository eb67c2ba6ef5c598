"""Root systems, isogeny lattices, and root data in exact Bourbaki coordinates.

Realizations follow the standard plates: A_l lives in the sum-zero model of
dimension l+1, B/C/D_l in dimension l, the E family in dimension 8, F_4 in 4,
G_2 in 3.  All coordinates are Fractions; positivity, coroots, coweights and
the highest root are derived from the realization rather than hard-coded.

Roots are character-side vectors and cocharacters pair with them through the
ambient dot product.  For the plate realizations the two sides coincide; the
GSp datum realizes them in genuinely dual coordinates, so dual bases are
always computed through the Cartan pairing dot(alpha_j, alpha_k_coroot)
rather than through Gram matrices of one side.
"""

from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .linalg import (
    Vec,
    common_denominator,
    dot,
    hnf,
    hnf_solve,
    integer_kernel,
    mat_invert,
    snf_with_transforms,
    vec,
    vec_add,
    vec_neg,
    vec_scale,
    vec_sub,
    vec_sum,
)

DEFAULT_RANK_CAP = 9

_RANK_FLOOR = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True)
class CartanType:
    """An admissible (family, rank) pair."""

    family: str
    rank: int

    def __post_init__(self):
        fam, l = self.family, self.rank
        ok = (
            fam in _RANK_FLOOR and l >= _RANK_FLOOR[fam]
            or fam == "E" and l in (6, 7, 8)
            or fam == "F" and l == 4
            or fam == "G" and l == 2
        )
        if not ok:
            raise ValueError(f"inadmissible Cartan type {fam}{l}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _half(coords) -> Vec:
    return tuple(Fraction(c, 2) for c in coords)


def _unit(dim: int, i: int, c=1) -> Vec:
    return tuple(Fraction(c if k == i else 0) for k in range(dim))


def _pair_roots(dim, i, j, si, sj) -> Vec:
    return tuple(Fraction(si * int(k == i) + sj * int(k == j)) for k in range(dim))


def _realize(ctype: CartanType):
    """Return (ambient dimension, all roots, simple roots) for a plate type."""
    fam, l = ctype.family, ctype.rank
    roots: list[Vec] = []
    if fam == "A":
        n = l + 1
        for i in range(n):
            for j in range(n):
                if i != j:
                    roots.append(_pair_roots(n, i, j, 1, -1))
        simple = [_pair_roots(n, i, i + 1, 1, -1) for i in range(l)]
        return n, roots, simple
    if fam in "BCD":
        for i in range(l):
            for j in range(i + 1, l):
                for si in (1, -1):
                    for sj in (1, -1):
                        roots.append(_pair_roots(l, i, j, si, sj))
        simple = [_pair_roots(l, i, i + 1, 1, -1) for i in range(l - 1)]
        if fam == "B":
            roots += [_unit(l, i, s) for i in range(l) for s in (1, -1)]
            simple.append(_unit(l, l - 1))
        elif fam == "C":
            roots += [_unit(l, i, 2 * s) for i in range(l) for s in (1, -1)]
            simple.append(_unit(l, l - 1, 2))
        else:
            simple.append(_pair_roots(l, l - 2, l - 1, 1, 1))
        return l, roots, simple
    if fam == "E":
        def halves(fixed, free, parity):
            # sign patterns on the free slots with minus-count of given parity
            out = []
            for signs in itertools.product((1, -1), repeat=len(free)):
                if sum(1 for s in signs if s < 0) % 2 != parity:
                    continue
                coords = [0] * 8
                for idx, s in fixed:
                    coords[idx] = s
                for idx, s in zip(free, signs):
                    coords[idx] = s
                out.append(_half(coords))
            return out

        alpha1 = _half([1, -1, -1, -1, -1, -1, -1, 1])
        alpha2 = vec([1, 1, 0, 0, 0, 0, 0, 0])
        chain = [_pair_roots(8, i, i - 1, 1, -1) for i in range(1, 7)]  # alpha_3..alpha_8
        if l == 6:
            for i in range(5):
                for j in range(i + 1, 5):
                    for si in (1, -1):
                        for sj in (1, -1):
                            roots.append(_pair_roots(8, i, j, si, sj))
            # +-(e8 - e7 - e6 + sum of signed e_1..e_5), even minus-count
            roots += halves([(7, 1), (6, -1), (5, -1)], [0, 1, 2, 3, 4], parity=0)
            roots += halves([(7, -1), (6, 1), (5, 1)], [0, 1, 2, 3, 4], parity=1)
            return 8, roots, [alpha1, alpha2] + chain[:4]
        if l == 7:
            for i in range(6):
                for j in range(i + 1, 6):
                    for si in (1, -1):
                        for sj in (1, -1):
                            roots.append(_pair_roots(8, i, j, si, sj))
            roots.append(_pair_roots(8, 6, 7, 1, -1))
            roots.append(_pair_roots(8, 6, 7, -1, 1))
            # +-(e8 - e7 + sum of signed e_1..e_6), odd minus-count either way
            roots += halves([(7, 1), (6, -1)], [0, 1, 2, 3, 4, 5], parity=1)
            roots += halves([(7, -1), (6, 1)], [0, 1, 2, 3, 4, 5], parity=1)
            return 8, roots, [alpha1, alpha2] + chain[:5]
        for i in range(8):
            for j in range(i + 1, 8):
                for si in (1, -1):
                    for sj in (1, -1):
                        roots.append(_pair_roots(8, i, j, si, sj))
        roots += halves([], list(range(8)), parity=0)
        return 8, roots, [alpha1, alpha2] + chain
    if fam == "F":
        for i in range(4):
            roots += [_unit(4, i), _unit(4, i, -1)]
            for j in range(i + 1, 4):
                for si in (1, -1):
                    for sj in (1, -1):
                        roots.append(_pair_roots(4, i, j, si, sj))
        for signs in itertools.product((1, -1), repeat=4):
            roots.append(_half(signs))
        simple = [_pair_roots(4, 1, 2, 1, -1), _pair_roots(4, 2, 3, 1, -1),
                  _unit(4, 3), _half([1, -1, -1, -1])]
        return 4, roots, simple
    # G_2, in the sum-zero plane of dimension 3
    for coords in [(1, -1, 0), (0, 1, -1), (1, 0, -1),
                   (2, -1, -1), (-1, 2, -1), (-1, -1, 2)]:
        roots.append(vec(coords))
        roots.append(vec_neg(vec(coords)))
    return 3, roots, [vec([1, -1, 0]), vec([-2, 1, 1])]


class RootSystem:
    """A reduced root system (or the root part of a datum) with exact data.

    Roots are indexed positives-first: index i < npos is the i-th positive
    root in sorted order and index i + npos is its negative.  Weyl elements
    act through permutations of this index set.
    """

    def __init__(self, name: str, dim: int, roots, simple, ctype: CartanType | None = None):
        self.name = name
        self.ctype = ctype
        self.dim = dim
        self.simple = tuple(simple)
        self.rank = len(self.simple)
        uniq = sorted(set(roots))

        coroot_of = {r: vec_scale(Fraction(2) / dot(r, r), r) for r in uniq}
        # Cartan pairing M[j][k] = (alpha_j, alpha_k_coroot); its inverse
        # yields both dual families at once.
        cartan = [[dot(a, coroot_of[b]) for b in self.simple] for a in self.simple]
        minv = mat_invert(cartan)
        simple_cor = [coroot_of[a] for a in self.simple]
        # coweights: cocharacter-side duals of the simple roots
        self.coweights = tuple(
            vec_sum((vec_scale(minv[k][i], simple_cor[k]) for k in range(self.rank)), dim)
            for i in range(self.rank)
        )
        # fundamental weights: character-side duals of the simple coroots
        self.fundamental_weights = tuple(
            vec_sum((vec_scale(minv[i][j], self.simple[j]) for j in range(self.rank)), dim)
            for i in range(self.rank)
        )

        pos = []
        for r in uniq:
            coeffs = [dot(r, w) for w in self.coweights]
            if any(c.denominator != 1 for c in coeffs):
                raise ValueError(f"root {r} is not an integer combination of the base")
            if all(c >= 0 for c in coeffs):
                pos.append(r)
        if 2 * len(pos) != len(uniq):
            raise ValueError("positive roots do not split the root set in half")
        self.positive = tuple(sorted(pos))
        self.npos = len(self.positive)
        self.roots = self.positive + tuple(vec_neg(r) for r in self.positive)
        self._index = {r: i for i, r in enumerate(self.roots)}
        self._coroots = tuple(coroot_of[r] for r in self.roots)

        table = []
        for cr in self._coroots:
            coords = [dot(cr, w) for w in self.fundamental_weights]
            if any(c.denominator != 1 for c in coords):
                raise ValueError("coroot is not integral over the simple coroots")
            table.append(tuple(int(c) for c in coords))
        self.coroot_coords = tuple(table)

        if self.npos:
            heights = [sum(self.simple_coeffs(r)) for r in self.positive]
            self._highest_index = max(
                range(self.npos), key=lambda i: (heights[i], self.roots[i])
            )
        else:
            self._highest_index = None
        self._sidx = tuple(self._index[a] for a in self.simple)
        self._cache: dict = {}

    # -- indexing ------------------------------------------------------------

    @property
    def simple_indices(self) -> tuple[int, ...]:
        return self._sidx

    def index_of(self, root: Vec) -> int:
        return self._index[root]

    def neg_index(self, i: int) -> int:
        return i + self.npos if i < self.npos else i - self.npos

    def coroot_by_index(self, i: int) -> Vec:
        return self._coroots[i]

    def coroot(self, root: Vec) -> Vec:
        return self._coroots[self._index[root]]

    @property
    def highest(self) -> Vec:
        if self._highest_index is None:
            raise ValueError("root system has no roots")
        return self.roots[self._highest_index]

    @property
    def coroot_table_flat(self) -> array:
        flat = self._cache.get("coroot_table_flat")
        if flat is None:
            flat = array("q", [c for row in self.coroot_coords for c in row])
            self._cache["coroot_table_flat"] = flat
        return flat

    # -- decompositions ------------------------------------------------------

    def simple_coeffs(self, v: Vec) -> tuple[Fraction, ...]:
        """Coefficients over the simple roots of the root-span part of v."""
        return tuple(dot(v, w) for w in self.coweights)

    def coroot_span_coords(self, v: Vec) -> tuple[Fraction, ...]:
        """Coefficients over the simple coroots of the coroot-span part of v."""
        return tuple(dot(v, w) for w in self.fundamental_weights)

    def radical_part(self, v: Vec) -> Vec:
        """Component of a cocharacter pairing to zero with every root."""
        coords = self.coroot_span_coords(v)
        span = vec_sum(
            (vec_scale(c, self._coroots[i]) for c, i in zip(coords, self._sidx)),
            self.dim,
        )
        return vec_sub(v, span)

    def minuscule_indices(self) -> tuple[int, ...]:
        """1-based indices i with (highest root, coweight_i) = 1."""
        got = self._cache.get("minuscule")
        if got is None:
            a0 = self.highest
            got = tuple(i + 1 for i, w in enumerate(self.coweights) if dot(a0, w) == 1)
            self._cache["minuscule"] = got
        return got

    def __repr__(self):
        return f"RootSystem({self.name})"


@lru_cache(maxsize=None)
def _build_cached(ctype: CartanType) -> RootSystem:
    dim, roots, simple = _realize(ctype)
    return RootSystem(str(ctype), dim, roots, simple, ctype=ctype)


def build_root_system(ctype: CartanType, rank_cap: int | None = None) -> RootSystem:
    """Construct the root system for an admissible Cartan type.

    rank_cap (default 9) bounds the classical families; exceptional types
    are unaffected by it.
    """
    cap = DEFAULT_RANK_CAP if rank_cap is None else rank_cap
    if ctype.family in "ABCD" and ctype.rank > cap:
        raise ValueError(f"rank {ctype.rank} exceeds the configured cap {cap}")
    return _build_cached(ctype)


def highest_root(rs: RootSystem) -> Vec:
    return rs.highest


def fundamental_coweights(rs: RootSystem) -> tuple[Vec, ...]:
    return rs.coweights


def pairing(x: Vec, y: Vec) -> Fraction:
    return dot(x, y)


# ---------------------------------------------------------------------------
# Cocharacter lattices
# ---------------------------------------------------------------------------

class CocharLattice:
    """A finitely generated lattice of cocharacters containing the coroots.

    Stored canonically as (1/den) times an integer row-HNF basis, so two
    lattices are equal iff their stored forms coincide.
    """

    def __init__(self, rs: RootSystem, generators, name: str | None = None):
        self.rs = rs
        self.generators = tuple(generators)
        rows = list(self.generators) + [rs.coroot_by_index(i) for i in rs.simple_indices]
        den = common_denominator(rows)
        h = hnf([[int(a * den) for a in row] for row in rows])
        content = 0
        for row in h:
            for a in row:
                content = gcd(content, a)
        g = gcd(content, den)
        self.den = den // g
        self.hrows = tuple(tuple(a // g for a in row) for row in h)
        self.name = name
        self._cache: dict = {}
        for i in rs.simple_indices:
            if not self.contains(rs.coroot_by_index(i)):
                raise ValueError("lattice does not contain the coroots")

    @property
    def basis(self) -> tuple[Vec, ...]:
        return tuple(tuple(Fraction(a, self.den) for a in row) for row in self.hrows)

    @property
    def rank(self) -> int:
        return len(self.hrows)

    def _int_coords(self, v: Vec) -> list[int] | None:
        scaled = [Fraction(a) * self.den for a in v]
        if any(a.denominator != 1 for a in scaled):
            return None
        return hnf_solve(self.hrows, [int(a) for a in scaled])

    def contains(self, v: Vec) -> bool:
        return self._int_coords(v) is not None

    def coords(self, v: Vec) -> tuple[int, ...]:
        """Integer coordinates of v over the canonical basis."""
        got = self._int_coords(v)
        if got is None:
            raise ValueError(f"vector {v} is not in the lattice")
        return tuple(got)

    def mod2_class(self, v: Vec) -> tuple[int, ...]:
        """Coordinates of a member over the canonical basis, reduced mod 2."""
        return tuple(c & 1 for c in self.coords(v))

    def _key(self):
        return (id(self.rs), self.den, self.hrows)

    def __eq__(self, other):
        return isinstance(other, CocharLattice) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        label = self.name or f"rank {self.rank}"
        return f"CocharLattice({self.rs.name}, {label})"

    @property
    def coroot_scale(self) -> int:
        """Common denominator of members' coordinates over the simple coroots."""
        e = self._cache.get("coroot_scale")
        if e is None:
            e = 1
            for row in self.basis:
                for c in self.rs.coroot_span_coords(row):
                    e = lcm(e, c.denominator)
            self._cache["coroot_scale"] = e
        return e


def coroot_lattice(rs: RootSystem) -> CocharLattice:
    """Q: the lattice generated by the coroots (simply connected case)."""
    lat = rs._cache.get("coroot_lattice")
    if lat is None:
        lat = CocharLattice(rs, [rs.coroot_by_index(i) for i in rs.simple_indices], name="sc")
        rs._cache["coroot_lattice"] = lat
    return lat


def coweight_lattice(rs: RootSystem) -> CocharLattice:
    """P: the lattice generated by the fundamental coweights (adjoint case)."""
    lat = rs._cache.get("coweight_lattice")
    if lat is None:
        lat = CocharLattice(rs, rs.coweights, name="adjoint")
        rs._cache["coweight_lattice"] = lat
    return lat


def lattice_for_isogeny(rs: RootSystem, s_indices, name: str | None = None) -> CocharLattice:
    """Lattice generated by the coroots and the coweights indexed by s_indices.

    Every index must be minuscule: (highest root, coweight_i) = 1.
    """
    s = tuple(sorted(set(s_indices)))
    minuscule = rs.minuscule_indices()
    for i in s:
        if i not in minuscule:
            raise ValueError(f"index {i} is not minuscule for {rs.name}")
    gens = [rs.coroot_by_index(j) for j in rs.simple_indices]
    gens += [rs.coweights[i - 1] for i in s]
    if name is None:
        name = "sc" if not s else "coweights:" + ",".join(str(i) for i in s)
    lat = CocharLattice(rs, gens, name=name)
    if lat == coweight_lattice(rs):
        lat.name = "adjoint"
    return lat


def lattice_membership(lat: CocharLattice, v: Vec) -> bool:
    return lat.contains(v)


def mod2_class(lat: CocharLattice, v: Vec) -> tuple[int, ...]:
    return lat.mod2_class(v)


class CorootQuotient:
    """The quotient of a cocharacter lattice by the coroot lattice.

    Classes are canonical pairs (torsion coords, free coords); torsion
    coordinate i lives in Z/invariants[i].
    """

    def __init__(self, lat: CocharLattice):
        self.lattice = lat
        rs = lat.rs
        r = lat.rank
        m = [list(lat.coords(rs.coroot_by_index(i))) for i in rs.simple_indices]
        if m:
            diag, _u, v = snf_with_transforms(m)
        else:
            diag, v = [], [[int(i == j) for j in range(r)] for i in range(r)]
        self._v = v
        self._diag = list(diag) + [0] * (r - len(diag))
        self.torsion_slots = tuple(i for i, d in enumerate(self._diag) if d > 1)
        self.free_slots = tuple(i for i, d in enumerate(self._diag) if d == 0)
        self.invariants = tuple(self._diag[i] for i in self.torsion_slots)
        self.free_rank = len(self.free_slots)

    @property
    def order(self) -> int | None:
        """Group order, or None when the quotient is infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def class_of(self, v: Vec):
        x = self.lattice.coords(v)
        y = [sum(x[i] * self._v[i][j] for i in range(len(x))) for j in range(len(x))]
        tor = tuple(y[i] % self._diag[i] for i in self.torsion_slots)
        free = tuple(y[i] for i in self.free_slots)
        return (tor, free)

    @property
    def zero(self):
        return ((0,) * len(self.invariants), (0,) * self.free_rank)

    def add(self, a, b):
        tor = tuple((x + y) % d for x, y, d in zip(a[0], b[0], self.invariants))
        return (tor, tuple(x + y for x, y in zip(a[1], b[1])))

    def neg(self, a):
        tor = tuple((-x) % d for x, d in zip(a[0], self.invariants))
        return (tor, tuple(-x for x in a[1]))

    def scale(self, a, k: int):
        tor = tuple((x * k) % d for x, d in zip(a[0], self.invariants))
        return (tor, tuple(x * k for x in a[1]))

    def element_order(self, a) -> int:
        if any(a[1]):
            raise ValueError("element has infinite order")
        out = 1
        for x, d in zip(a[0], self.invariants):
            if x:
                out = lcm(out, d // gcd(x, d))
        return out


def quotient_by_coroot_lattice(lat: CocharLattice) -> CorootQuotient:
    q = lat._cache.get("coroot_quotient")
    if q is None:
        q = CorootQuotient(lat)
        lat._cache["coroot_quotient"] = q
    return q


# ---------------------------------------------------------------------------
# Root data beyond the almost-simple case
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootDatum:
    """A split root datum: realized roots plus a full cocharacter lattice."""

    name: str
    rs: RootSystem
    lattice: CocharLattice
    central_cochars: tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return self.lattice.rank


def _central_basis(rs: RootSystem, lat: CocharLattice) -> tuple[Vec, ...]:
    rows = []
    den = 1
    for b in lat.basis:
        pair = [dot(alpha, b) for alpha in rs.simple]
        den = lcm(den, common_denominator([pair]))
        rows.append(pair)
    int_rows = [[int(p * den) for p in row] for row in rows]
    kernel = integer_kernel(int_rows) if int_rows else []
    return tuple(
        vec_sum((vec_scale(c, b) for c, b in zip(kv, lat.basis)), rs.dim)
        for kv in kernel
    )


def center_is_connected(datum: RootDatum) -> bool:
    """Whether the character lattice of the center is torsion-free."""
    lat = datum.lattice
    rows = []
    for alpha in datum.rs.simple:
        pr = [dot(alpha, b) for b in lat.basis]
        if any(p.denominator != 1 for p in pr):
            raise ValueError("roots must pair integrally with the cocharacter lattice")
        rows.append([int(p) for p in pr])
    if not rows:
        return True
    diag, _u, _v = snf_with_transforms(rows)
    return all(d in (0, 1) for d in diag)


def gl_datum(n: int) -> RootDatum:
    """The general linear group of rank n: type A_{n-1} roots in Z^n."""
    if n < 2:
        raise ValueError("need n >= 2")
    rs = build_root_system(CartanType("A", n - 1), rank_cap=max(DEFAULT_RANK_CAP, n - 1))
    gens = [_unit(n, i) for i in range(n)]
    lat = CocharLattice(rs, gens, name=f"GL{n}")
    return RootDatum(f"GL{n}", rs, lat, _central_basis(rs, lat))


def gsp_datum(n: int) -> RootDatum:
    """The symplectic similitude group GSp(2n), realized in Z^(n+1).

    Cocharacter coordinates (a_1, ..., a_n, c) stand for the map sending t
    to diag(t^a_1, ..., t^a_n, t^(c-a_n), ..., t^(c-a_1)); roots are the
    dual-side functionals written in the same coordinates.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    m = n + 1
    f = _unit(m, n)
    roots = []
    for i in range(n):
        long_root = vec_sub(_unit(m, i, 2), f)
        roots += [long_root, vec_neg(long_root)]
        for j in range(i + 1, n):
            d = vec_sub(_unit(m, i), _unit(m, j))
            s = vec_sub(vec_add(_unit(m, i), _unit(m, j)), f)
            roots += [d, vec_neg(d), s, vec_neg(s)]
    simple = [vec_sub(_unit(m, i), _unit(m, i + 1)) for i in range(n - 1)]
    simple.append(vec_sub(_unit(m, n - 1, 2), f))
    rs = RootSystem(f"GSp{2 * n}.roots", m, roots, simple, ctype=CartanType("C", n))
    lat = CocharLattice(rs, [_unit(m, i) for i in range(m)], name=f"GSp{2 * n}")
    return RootDatum(f"GSp{2 * n}", rs, lat, _central_basis(rs, lat))
