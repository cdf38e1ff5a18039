"""quadlat: exact arithmetic for even integral quadratic lattices.

Lattices with integer Gram matrices, their discriminant forms, primitive
embeddings and isometry extensions, overlattice (glue) enumeration,
period-vector splittings over imaginary quadratic fields, and the finite
group-theoretic bounds used in Brauer-group finiteness arguments.
Everything is computed over arbitrary-precision integers and exact
rationals.
"""

from .errors import QuadLatError
from .linalg import (
    IntMatrix,
    RatMatrix,
    block_diag,
    det_exact,
    hermite_normal_form,
    invert_rational,
    kernel_basis,
    smith_normal_form,
    solve_rational,
)
from .lattice import (
    BRUTE_FORCE_CAP,
    DiscriminantForm,
    DiscriminantGroup,
    Lattice,
    Signature,
    direct_sum,
    disc_form_isomorphic,
    discriminant_form,
    discriminant_group,
    dual_basis,
    is_even,
    lattice_from_json,
    lattice_to_json,
    make_lattice,
    min_generators,
    pair,
    rescale,
    signature,
    standard,
)
from .embeddings import (
    NikulinVerdict,
    SublatticeEmbedding,
    as_lattice,
    build_iota2d,
    count_norm_vectors,
    extend_isometry,
    find_primitive_vector,
    in_tilde_O,
    induced_gram,
    is_isometry,
    is_primitive,
    nikulin_check,
    orthogonal_complement,
    saturate,
    saturation_index,
)
from .glue import (
    BINARY_DET_CAP,
    GlueSubgroup,
    enumerate_even_binary,
    even_overlattices,
    glue_order,
    isotropic_subgroups,
    overlattice_from_glue,
    subgroup_elements,
)
from .periods import (
    HodgeSplit,
    PeriodVector,
    QuadScalar,
    minimal_hodge_sublattice,
    neron_severi,
    pairing_with_conjugate,
    period_from_json,
    period_pairing,
    period_to_json,
    transcendental,
    validate_period,
)
from .brauer import (
    CohomologyPair,
    FiniteMatrixGroupModL,
    POINTS_SCAN_CAP,
    brauer_torsion_order,
    brute_force_points,
    fixed_subspace_mod_ell,
    minkowski_bound,
    nori_sandwich_check,
    quotient_structure,
)
from .expr import Atom, Power, Sum, evaluate_expr, parse_lattice_expr

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "BINARY_DET_CAP",
    "BRUTE_FORCE_CAP",
    "CohomologyPair",
    "DiscriminantForm",
    "DiscriminantGroup",
    "FiniteMatrixGroupModL",
    "GlueSubgroup",
    "HodgeSplit",
    "IntMatrix",
    "Lattice",
    "NikulinVerdict",
    "POINTS_SCAN_CAP",
    "PeriodVector",
    "Power",
    "QuadLatError",
    "QuadScalar",
    "RatMatrix",
    "Signature",
    "SublatticeEmbedding",
    "Sum",
    "as_lattice",
    "block_diag",
    "brauer_torsion_order",
    "brute_force_points",
    "build_iota2d",
    "count_norm_vectors",
    "det_exact",
    "direct_sum",
    "disc_form_isomorphic",
    "discriminant_form",
    "discriminant_group",
    "dual_basis",
    "enumerate_even_binary",
    "evaluate_expr",
    "even_overlattices",
    "extend_isometry",
    "find_primitive_vector",
    "fixed_subspace_mod_ell",
    "glue_order",
    "hermite_normal_form",
    "in_tilde_O",
    "induced_gram",
    "invert_rational",
    "is_even",
    "is_isometry",
    "is_primitive",
    "isotropic_subgroups",
    "kernel_basis",
    "lattice_from_json",
    "lattice_to_json",
    "make_lattice",
    "min_generators",
    "minimal_hodge_sublattice",
    "minkowski_bound",
    "neron_severi",
    "nikulin_check",
    "nori_sandwich_check",
    "orthogonal_complement",
    "overlattice_from_glue",
    "pair",
    "pairing_with_conjugate",
    "parse_lattice_expr",
    "period_from_json",
    "period_pairing",
    "period_to_json",
    "quotient_structure",
    "rescale",
    "saturate",
    "saturation_index",
    "signature",
    "smith_normal_form",
    "solve_rational",
    "standard",
    "subgroup_elements",
    "transcendental",
    "validate_period",
]
