"""Material symmetry classes of elasticity tensors induced by lattice symmetries."""

from .algebra import EXACT, NUMERIC, FieldElement, Matrix
from .errors import (
    AsymmetricInput,
    DegenerateGenerators,
    InvalidGenerator,
    LattisymError,
    ModeError,
    NonOrthonormalDirectors,
    NormOutsideField,
    NotOrthogonal,
    ParseError,
    ZeroMatrix,
)
from .lattice import Isometry, Lattice, PointGroup, compute_directors, enumerate_point_group, is_lattice_symmetry
from .symmetry import (
    FULL36,
    SYM21,
    ConstrainedSpace,
    SymmetryClass,
    classify,
    classify_matrix,
    commutant,
    commutation_operator,
    constrain_by_lattice,
    is_material_symmetry,
    is_positive_definite,
    isotropy_distance,
    material_group_exceeds_lattice_group,
)
from .voigt import (
    ElasticityMatrix,
    FourthOrderTensor,
    TensorBasis,
    apply_c,
    build_basis,
    from_fourth_order,
    from_voigt,
    induced_transform,
    to_fourth_order,
    to_voigt,
)

__version__ = "0.1.0"

__all__ = [
    "AsymmetricInput",
    "DegenerateGenerators",
    "InvalidGenerator",
    "LattisymError",
    "ModeError",
    "NonOrthonormalDirectors",
    "NormOutsideField",
    "NotOrthogonal",
    "ParseError",
    "ZeroMatrix",
    "FULL36",
    "SYM21",
    "ConstrainedSpace",
    "SymmetryClass",
    "classify",
    "classify_matrix",
    "commutant",
    "commutation_operator",
    "constrain_by_lattice",
    "is_material_symmetry",
    "is_positive_definite",
    "isotropy_distance",
    "material_group_exceeds_lattice_group",
    "ElasticityMatrix",
    "FourthOrderTensor",
    "TensorBasis",
    "apply_c",
    "build_basis",
    "from_fourth_order",
    "from_voigt",
    "induced_transform",
    "to_fourth_order",
    "to_voigt",
    "EXACT",
    "NUMERIC",
    "FieldElement",
    "Matrix",
    "Isometry",
    "Lattice",
    "PointGroup",
    "compute_directors",
    "enumerate_point_group",
    "is_lattice_symmetry",
]
