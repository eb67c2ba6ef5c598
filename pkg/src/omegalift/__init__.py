"""Exact-arithmetic alcove-stabilizer groups and homomorphic lifts into a
symbolic model of the torus normalizer."""

from .kernels import BACKEND as kernel_backend
from .kottwitz import (
    SectionCertificate,
    SectionError,
    build_section,
    free_section,
    good_section,
    iota,
    iota_homomorphy_report,
    kappa,
)
from .omega import (
    AffineRoot,
    AlcoveError,
    ExtAffElem,
    OmegaGroup,
    act_affine,
    affine_node_permutation,
    omega_ad,
    omega_for_lattice,
    orbit_sum,
)
from .rootsys import (
    CartanType,
    CocharLattice,
    RootDatum,
    RootSystem,
    build_root_system,
    center_is_connected,
    coroot_lattice,
    coweight_lattice,
    fundamental_coweights,
    gl_datum,
    gsp_datum,
    highest_root,
    lattice_for_isogeny,
    lattice_membership,
    mod2_class,
    pairing,
    quotient_by_coroot_lattice,
)
from .tits import (
    SignClass,
    TitsElement,
    cocycle_sum,
    identity_element,
    inverse as tits_inverse,
    multiply,
    power,
    random_tits_element,
    serialize_element,
    sign_element,
    torus_element,
    weyl_lift,
)
from .weyl import (
    WeylElement,
    compose,
    f_set,
    f_w_set,
    from_word,
    longest_element,
    reduced_word,
    simple_reflection,
)

__version__ = "0.1.0"
