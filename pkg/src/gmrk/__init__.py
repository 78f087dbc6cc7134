"""Explicit sl(n,R) generator matrices over truncated Spin(n) function
spaces, built by the decontraction commutator formula, with numerical
certification of where the construction closes (coset spaces) and where it
fails (the full space)."""

from .coupling import (
    CgValue,
    IrrepLabel,
    casimir2,
    cg,
    cg_spin4,
    dim,
    get_phase_convention,
    set_phase_convention,
)
from .errors import (
    ConfigError,
    GmrkError,
    InvalidLabelError,
    MissingComponentError,
    UnsupportedSpaceError,
)
from .halfint import HalfInt, magnetic_range
from .operators import (
    GellMannConfig,
    OperatorMatrix,
    build_casimir_K,
    build_casimir_M,
    build_K,
    build_M,
    build_T_closed,
    build_T_gellmann,
    build_U,
    cartesian_family,
    spherical_family,
    to_su_n,
)
from .repspace import (
    BasisIndex,
    BasisState,
    Block,
    SpaceSpec,
    enumerate_basis,
    interior_mask,
    interior_projector,
    invariant_k_vector,
    multiplicity_audit,
)
from .tensormaps import (
    TensorComponentMap,
    alpha_of,
    little_group_pairs,
    x_vector_cartesian,
    x_vector_of,
)
from .validator import (
    ResidualReport,
    check_MK,
    check_MM,
    check_MT,
    check_TT,
    check_UU,
    check_casimir_equality,
    check_jacobi_MTT,
    check_little_group_conditions,
    default_scan_grid,
    fit_T_equivalence,
    validity_scan,
)

__version__ = "0.1.0"

__all__ = [
    "CgValue",
    "IrrepLabel",
    "casimir2",
    "cg",
    "cg_spin4",
    "dim",
    "get_phase_convention",
    "set_phase_convention",
    "ConfigError",
    "GmrkError",
    "InvalidLabelError",
    "MissingComponentError",
    "UnsupportedSpaceError",
    "HalfInt",
    "magnetic_range",
    "GellMannConfig",
    "OperatorMatrix",
    "build_casimir_K",
    "build_casimir_M",
    "build_K",
    "build_M",
    "build_T_closed",
    "build_T_gellmann",
    "build_U",
    "cartesian_family",
    "spherical_family",
    "to_su_n",
    "BasisIndex",
    "BasisState",
    "Block",
    "SpaceSpec",
    "enumerate_basis",
    "interior_mask",
    "interior_projector",
    "invariant_k_vector",
    "multiplicity_audit",
    "TensorComponentMap",
    "alpha_of",
    "little_group_pairs",
    "x_vector_cartesian",
    "x_vector_of",
    "ResidualReport",
    "check_MK",
    "check_MM",
    "check_MT",
    "check_TT",
    "check_UU",
    "check_casimir_equality",
    "check_jacobi_MTT",
    "check_little_group_conditions",
    "default_scan_grid",
    "fit_T_equivalence",
    "validity_scan",
]
