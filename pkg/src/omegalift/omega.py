"""The extended affine Weyl group and the stabilizer of the fundamental alcove.

Elements t_lam . w of the extended group act on affine roots alpha + k*delta
by (lam, w) . (alpha + k d) = w(alpha) + (k - (w(alpha), lam)) d.  The
stabilizer of the alcove is parameterized by the minuscule coweights: the
nonidentity elements are rho_i = (eps_i, w_i) with w_i the product of the
two parabolic longest elements omitting/including node i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Vec, dot, vec_add, vec_sum, zero_vec
from .rootsys import (
    CocharLattice,
    RootSystem,
    coweight_lattice,
    quotient_by_coroot_lattice,
)
from .weyl import WeylElement, compose, identity as weyl_identity, longest_element


class AlcoveError(Exception):
    """Internal consistency failure in the alcove-stabilizer construction."""


@dataclass(frozen=True)
class AffineRoot:
    grad: Vec
    level: int


class ExtAffElem:
    """An element t_lam . w of the extended affine Weyl group."""

    __slots__ = ("lam", "w")

    def __init__(self, lam: Vec, w: WeylElement):
        self.lam = lam
        self.w = w

    def __mul__(self, other: "ExtAffElem") -> "ExtAffElem":
        return ExtAffElem(vec_add(self.lam, self.w.apply(other.lam)),
                          compose(self.w, other.w))

    def __eq__(self, other):
        return (isinstance(other, ExtAffElem)
                and self.lam == other.lam and self.w == other.w)

    def __hash__(self):
        return hash((self.lam, self.w))

    def __repr__(self):
        return f"ExtAffElem(lam={self.lam}, w={self.w.reduced_word()})"


def act_affine(g: ExtAffElem, a: AffineRoot) -> AffineRoot:
    grad = g.w.act_on_root(a.grad)
    shift = dot(grad, g.lam)
    if shift.denominator != 1:
        raise AlcoveError("affine level shift is not integral")
    return AffineRoot(grad, a.level - int(shift))


def affine_simple_set(rs: RootSystem) -> tuple[AffineRoot, ...]:
    """Node 0 is the affine node -highest + delta; node i is alpha_i."""
    nodes = rs._cache.get("affine_nodes")
    if nodes is None:
        nodes = (AffineRoot(rs.roots[rs.neg_index(rs._highest_index)], 1),)
        nodes += tuple(AffineRoot(a, 0) for a in rs.simple)
        rs._cache["affine_nodes"] = nodes
    return nodes


def affine_node_permutation(rs: RootSystem, g: ExtAffElem) -> tuple[int, ...]:
    """Permutation induced on the affine simple set, or AlcoveError."""
    nodes = affine_simple_set(rs)
    lookup = {n: k for k, n in enumerate(nodes)}
    out = []
    for node in nodes:
        image = act_affine(g, node)
        k = lookup.get(image)
        if k is None:
            raise AlcoveError(f"element does not stabilize the alcove: "
                              f"{node} maps to {image}")
        out.append(k)
    if sorted(out) != list(range(len(nodes))):
        raise AlcoveError("node images are not a permutation")
    return tuple(out)


def orbit_sum(w: WeylElement, eps: Vec, r: int) -> Vec:
    """Sum of eps over the first r iterates of w (exact)."""
    acc = zero_vec(len(eps))
    cur = eps
    for _ in range(r):
        acc = vec_add(acc, cur)
        cur = w.apply(cur)
    return acc


class OmegaGroup:
    """The alcove stabilizer for one cocharacter lattice, with its table."""

    def __init__(self, lattice: CocharLattice):
        rs = lattice.rs
        self.lattice = lattice
        big = coweight_lattice(rs)
        for b in lattice.basis:
            if not big.contains(b):
                raise ValueError("lattice is not contained in the coweight lattice")
        self.quotient = quotient_by_coroot_lattice(lattice)
        if self.quotient.free_rank:
            raise ValueError("alcove stabilizer tables need a finite coroot quotient")

        w_delta = longest_element(rs)
        elements = [ExtAffElem(zero_vec(rs.dim), weyl_identity(rs))]
        rho_index: dict[int, int] = {}
        all_idx = set(range(1, rs.rank + 1))
        for i in rs.minuscule_indices():
            eps = rs.coweights[i - 1]
            if not lattice.contains(eps):
                continue
            w_i = compose(longest_element(rs, all_idx - {i}), w_delta)
            rho_index[i] = len(elements)
            elements.append(ExtAffElem(eps, w_i))
        self.elements = tuple(elements)
        self.rho_index = rho_index

        self.classes = tuple(self.quotient.class_of(el.lam) for el in elements)
        if (len(set(self.classes)) != len(elements)
                or self.quotient.order != len(elements)):
            raise AlcoveError("stabilizer parameterization does not match the "
                              "coroot quotient")
        self.node_permutations = tuple(
            affine_node_permutation(rs, el) for el in elements
        )

        by_class = {c: k for k, c in enumerate(self.classes)}
        table = []
        for g in elements:
            row = []
            for h in elements:
                prod = g * h
                k = by_class[self.quotient.class_of(prod.lam)]
                if prod != elements[k]:
                    raise AlcoveError("stabilizer product left the parameterized set")
                row.append(k)
            table.append(tuple(row))
        self.table = tuple(table)

        self.structure = self.quotient.invariants
        self.orders = tuple(self.quotient.element_order(c) for c in self.classes)
        if len(self.structure) <= 1:
            n = self.quotient.order
            self.generator_choice = next(
                k for k in range(len(elements)) if self.orders[k] == n
            )
        else:
            self.generator_choice = None

    def __len__(self):
        return len(self.elements)

    @property
    def is_cyclic(self) -> bool:
        return self.generator_choice is not None

    def multiply(self, i: int, j: int) -> int:
        return self.table[i][j]

    def power(self, i: int, m: int) -> int:
        out = 0
        if m < 0:
            inv = self.table[i].index(0)
            return self.power(inv, -m)
        for _ in range(m):
            out = self.table[out][i]
        return out

    def to_dict(self) -> dict:
        return {
            "structure": {
                "torsion": list(self.structure),
                "free_rank": 0,
            },
            "order": len(self.elements),
            "elements": [
                {
                    "index": k,
                    "lambda": [str(c) for c in el.lam],
                    "weyl_word": el.w.reduced_word(),
                    "kappa_class": {
                        "torsion": list(self.classes[k][0]),
                        "free": list(self.classes[k][1]),
                    },
                    "node_permutation": list(self.node_permutations[k]),
                }
                for k, el in enumerate(self.elements)
            ],
            "table": [list(row) for row in self.table],
        }


def omega_for_lattice(lattice: CocharLattice) -> OmegaGroup:
    og = lattice._cache.get("omega_group")
    if og is None:
        og = OmegaGroup(lattice)
        lattice._cache["omega_group"] = og
    return og


def omega_ad(rs: RootSystem) -> OmegaGroup:
    return omega_for_lattice(coweight_lattice(rs))
