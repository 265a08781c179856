"""Exact alcove geometry, affine braid lifts, charge polynomials, and
stability-variation audits for irreducible root systems."""

__version__ = "0.1.0"

from .alcoves import (
    AffineHyperplane,
    AffineWeylElement,
    Alcove,
    Face,
    alcove_of_point,
    alcoves_within,
    face_of_point,
    fundamental_alcove,
    in_almost_regular,
    in_S,
    in_V,
    in_Vreg,
    is_above,
    normalize_to_S,
    preceq,
    stabilizer_order,
    walls_and_adjacency,
)
from .braid import (
    BraidWord,
    Gallery,
    equal_up_to_braid_moves,
    positive_lift,
    project_to_affine_weyl,
    wall_type,
)
from .coinvariants import (
    CoinvariantBasis,
    CoinvariantElement,
    coinvariant_basis,
    exp_class,
    invariant_generators,
    is_harmonic,
    quasi_exponential,
    weyl_sum,
)
from .covering import (
    CoveringPoint,
    TransportPath,
    deck_act,
    make_covering_point,
    phase,
    phase_track,
    project,
    stability_sanity,
    transport,
)
from .kmodel import (
    KClass,
    KModel,
    build_model,
    central_charge,
    d_polynomial,
    euler_chi_polynomial,
    k_action,
    simple_classes,
)
from .polynomials import Polynomial
from .rootsystem import (
    CartanDatum,
    Coroot,
    RootSystem,
    Weight,
    WeylElement,
    build_root_system,
    coroot_pairing,
    enumerate_weyl,
    finite_act,
    root_system,
)
from .rvsc import RVSCInstance, check_positivity, check_rvsc, check_wall_shift, prop1_dichotomy, vanishing_order
