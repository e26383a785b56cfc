from app.reference_feec.eigen import (
    dense_eigs,
    divfree_dense_eigs,
    penalty_eig,
    shift_invert_eigs,
    smallest_positive_eig,
)
from app.reference_feec.reference import (
    operator_name,
    reference_pf_constant,
    refined_bc_faces,
    resolve_bc,
)
from app.reference_feec.refine import refine_times, uniform_refine
from app.reference_feec.whitney import (
    DiscreteComplex,
    OperatorPair,
    assemble_whitney,
    independent_multipliers,
    mass_matrix,
    validate_bc_faces,
)

__all__ = [
    "DiscreteComplex",
    "OperatorPair",
    "assemble_whitney",
    "dense_eigs",
    "divfree_dense_eigs",
    "independent_multipliers",
    "mass_matrix",
    "operator_name",
    "penalty_eig",
    "reference_pf_constant",
    "refine_times",
    "refined_bc_faces",
    "resolve_bc",
    "shift_invert_eigs",
    "smallest_positive_eig",
    "uniform_refine",
    "validate_bc_faces",
]
