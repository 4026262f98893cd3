"""Exact computations in extended affine Weyl groups."""

from .cosets import (
    DiagramAutomorphism,
    DoubleCosetRep,
    NotFinite,
    ParabolicSubgroup,
    apply_sigma,
    bruhat_leq,
    descent_check,
    enumerate_double_cosets,
    is_sigma_stable_coset,
    make_sigma,
    min_double_rep,
    parabolic,
)
from .datum import (
    ActionNotCompatible,
    DatumError,
    GroupDatum,
    LatticeTooLarge,
    LatticeTooSmall,
    load_datum,
    make_datum,
    preset,
    validate_datum,
)
from .group import (
    AffineRoot,
    CapExceeded,
    ExtAffineElement,
    IwahoriWeylGroup,
    KottwitzClass,
    act_on_affine_root,
    act_on_point,
    group_of,
    invert,
    kottwitz_class,
    length,
    multiply,
    omega_group,
    project_to_finite,
    quotient_mod_torsion,
    reduced_word,
    special_vertex_subgroup,
)
from .rootsys import CartanType, RootSystem, RootSystemError, build_root_system

__version__ = "0.1.0"
