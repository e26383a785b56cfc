from app.pf_bounds.context import MeshContext
from app.pf_bounds.estimator import (
    estimate_on_shelling,
    estimate_on_tree,
    estimate_pf,
    product_bound,
)
from app.pf_bounds.ledger import combine_rows, holder_aggregate, unwrap
from app.pf_bounds.recursion import (
    ExteriorCostModel,
    exterior_recursion_coeffs,
    exterior_start_constant,
    exterior_step,
    gradient_edge_cost,
    gradient_pair,
    gradient_recursion_coeffs,
    local_kform_constant,
    patch_factor,
)

__all__ = [
    "MeshContext",
    "ExteriorCostModel",
    "combine_rows",
    "estimate_on_shelling",
    "estimate_on_tree",
    "estimate_pf",
    "exterior_recursion_coeffs",
    "exterior_start_constant",
    "exterior_step",
    "gradient_edge_cost",
    "gradient_pair",
    "gradient_recursion_coeffs",
    "holder_aggregate",
    "local_kform_constant",
    "patch_factor",
    "product_bound",
    "unwrap",
]
