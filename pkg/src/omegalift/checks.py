"""Seeded property checks shared by the sweep driver and the test suite.

Each check takes an explicit seed, never ambient randomness, so reports are
reproducible byte for byte.
"""

from __future__ import annotations

import random

from .oracle import lm_mul, to_matrix
from .rootsys import CocharLattice, gl_datum
from .tits import (
    identity_element,
    inverse,
    lift_power_closed_form,
    multiply,
    power,
    random_tits_element,
    weyl_lift,
)
from .weyl import random_element


def associativity_check(lattice: CocharLattice, n_triples: int, seed: int,
                        pool_size: int = 60) -> bool:
    """(xy)z = x(yz) for seeded random triples of normalizer elements."""
    rng = random.Random(seed)
    rs = lattice.rs
    pool = [random_element(rs, rng) for _ in range(pool_size)]
    for _ in range(n_triples):
        x = random_tits_element(lattice, rng, w=rng.choice(pool))
        y = random_tits_element(lattice, rng, w=rng.choice(pool))
        z = random_tits_element(lattice, rng, w=rng.choice(pool))
        if multiply(multiply(x, y), z) != multiply(x, multiply(y, z)):
            return False
    return True


def inverse_check(lattice: CocharLattice, n_samples: int, seed: int) -> bool:
    rng = random.Random(seed)
    ident = identity_element(lattice)
    for _ in range(n_samples):
        x = random_tits_element(lattice, rng)
        xi = inverse(x)
        if multiply(x, xi) != ident or multiply(xi, x) != ident:
            return False
    return True


def power_consistency_check(lattice: CocharLattice, n_samples: int, seed: int,
                            max_power: int = 8) -> bool:
    """Iterated multiplication of a canonical lift vs the closed-form product."""
    rng = random.Random(seed)
    for _ in range(n_samples):
        w = random_element(lattice.rs, rng)
        n = rng.randint(0, max_power)
        if power(weyl_lift(lattice, w), n) != lift_power_closed_form(lattice, w, n):
            return False
    return True


def oracle_pair_check(n: int, n_pairs: int, seed: int, pool_size: int = 40) -> bool:
    """Symbolic multiplication matches literal matrix products in rank n."""
    lattice = gl_datum(n).lattice
    rng = random.Random(seed)
    pool = [random_element(lattice.rs, rng) for _ in range(pool_size)]
    for _ in range(n_pairs):
        x = random_tits_element(lattice, rng, w=rng.choice(pool))
        y = random_tits_element(lattice, rng, w=rng.choice(pool))
        if to_matrix(multiply(x, y)) != lm_mul(to_matrix(x), to_matrix(y)):
            return False
    return True
