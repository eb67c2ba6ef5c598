"""Finite Weyl group arithmetic on root-index permutations.

Elements are stored as permutations of the indexed root set, so equality
and composition are array operations; the linear action on cocharacters is
recovered from the images of the simple coroots.  The group is never
enumerated: everything works on individual elements.
"""

from __future__ import annotations

from fractions import Fraction

from . import kernels
from .linalg import Vec, dot, vec_add, vec_scale, vec_sub, vec_sum
from .rootsys import RootSystem


class WeylElement:
    """A Weyl group element as a permutation of the root index set."""

    __slots__ = ("rs", "perm")

    def __init__(self, rs: RootSystem, perm):
        self.rs = rs
        self.perm = perm

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.rs is other.rs
            and self.perm == other.perm
        )

    def __hash__(self):
        return hash((id(self.rs), self.perm.tobytes()))

    def __mul__(self, other):
        return compose(self, other)

    def __repr__(self):
        return f"WeylElement({self.rs.name}, word={self.reduced_word()})"

    def is_identity(self) -> bool:
        return kernels.inversion_count(self.perm, self.rs.npos) == 0

    def root_image_index(self, i: int) -> int:
        return self.perm[i]

    def act_on_root(self, root: Vec) -> Vec:
        return self.rs.roots[self.perm[self.rs.index_of(root)]]

    def apply(self, v: Vec) -> Vec:
        """Image of a cocharacter: the radical part is fixed, the coroot-span
        part moves by the permutation of the coroots."""
        rs = self.rs
        coords = rs.coroot_span_coords(v)
        span = vec_sum(
            (vec_scale(c, rs.coroot_by_index(i)) for c, i in zip(coords, rs.simple_indices)),
            rs.dim,
        )
        image = vec_sum(
            (vec_scale(c, rs.coroot_by_index(self.perm[i]))
             for c, i in zip(coords, rs.simple_indices)),
            rs.dim,
        )
        return vec_add(vec_sub(v, span), image)

    def inverse(self) -> "WeylElement":
        return WeylElement(self.rs, kernels.inverse_perm(self.perm))

    def order(self) -> int:
        return kernels.perm_order(self.perm)

    def length(self) -> int:
        return kernels.inversion_count(self.perm, self.rs.npos)

    def inversion_set(self) -> frozenset[Vec]:
        rs = self.rs
        return frozenset(
            rs.positive[i] for i in range(rs.npos) if self.perm[i] >= rs.npos
        )

    def reduced_word(self) -> list[int]:
        """Deterministic reduced word (smallest-index descent at every step)."""
        rs = self.rs
        word = []
        cur = self
        while True:
            i = next(
                (k for k in range(rs.rank) if cur.perm[rs.simple_indices[k]] >= rs.npos),
                None,
            )
            if i is None:
                return word[::-1]
            word.append(i + 1)
            cur = compose(cur, simple_reflection(rs, i + 1))


def identity(rs: RootSystem) -> WeylElement:
    w = rs._cache.get("weyl_identity")
    if w is None:
        w = WeylElement(rs, kernels.identity_perm(2 * rs.npos))
        rs._cache["weyl_identity"] = w
    return w


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """The reflection in the i-th simple root (1-based)."""
    if not 1 <= i <= rs.rank:
        raise ValueError(f"simple index {i} out of range for {rs.name}")
    w = rs._cache.get(("s", i))
    if w is None:
        alpha = rs.simple[i - 1]
        acor = rs.coroot(alpha)
        from array import array

        perm = array(
            "i",
            (rs.index_of(vec_sub(r, vec_scale(dot(r, acor), alpha))) for r in rs.roots),
        )
        w = WeylElement(rs, perm)
        rs._cache[("s", i)] = w
    return w


def compose(u: WeylElement, v: WeylElement) -> WeylElement:
    if u.rs is not v.rs:
        raise ValueError("cannot compose elements of different root systems")
    return WeylElement(u.rs, kernels.compose(u.perm, v.perm))


def apply(w: WeylElement, v: Vec) -> Vec:
    return w.apply(v)


def inverse(w: WeylElement) -> WeylElement:
    return w.inverse()


def order(w: WeylElement) -> int:
    return w.order()


def reduced_word(w: WeylElement) -> list[int]:
    return w.reduced_word()


def from_word(rs: RootSystem, word) -> WeylElement:
    w = identity(rs)
    for i in word:
        w = compose(w, simple_reflection(rs, i))
    return w


def longest_element(rs: RootSystem, subset=None) -> WeylElement:
    """Longest element of the parabolic generated by the listed simple indices.

    subset defaults to everything; the returned element maps each listed
    simple root to a negative root and squares to the identity.
    """
    indices = tuple(range(1, rs.rank + 1)) if subset is None else tuple(sorted(set(subset)))
    for j in indices:
        if not 1 <= j <= rs.rank:
            raise ValueError(f"simple index {j} out of range")
    key = ("longest", indices)
    w = rs._cache.get(key)
    if w is None:
        w = identity(rs)
        while True:
            j = next(
                (j for j in indices if w.perm[rs.simple_indices[j - 1]] < rs.npos),
                None,
            )
            if j is None:
                break
            w = compose(w, simple_reflection(rs, j))
        rs._cache[key] = w
    return w


def f_set(u: WeylElement, v: WeylElement) -> frozenset[Vec]:
    """Positive roots made negative by v and returned to positive by u."""
    if u.rs is not v.rs:
        raise ValueError("mixed root systems")
    rs = u.rs
    idxs = kernels.fset_indices(u.perm, v.perm, rs.npos)
    return frozenset(rs.positive[i] for i in idxs)


def f_w_set(w: WeylElement, i: int) -> frozenset[Vec]:
    """Positive roots negative under w^i and positive again under w^(i+1)."""
    if i < 1:
        raise ValueError("power must be at least 1")
    wi = WeylElement(w.rs, kernels.perm_power(w.perm, i))
    return f_set(w, wi)


def random_element(rs: RootSystem, rng, word_length: int = 24) -> WeylElement:
    """Seeded random element: a bounded random word, optionally pushed deep
    by the longest element so both ends of the length spectrum occur."""
    w = identity(rs)
    if rs.rank == 0:
        return w
    for _ in range(word_length):
        w = compose(w, simple_reflection(rs, rng.randrange(1, rs.rank + 1)))
    if rng.getrandbits(1):
        w = compose(w, longest_element(rs))
    return w
