from app.star_maps.contraction import build_star_contraction, contraction_singular_values
from app.star_maps.piecewise import (
    Piece,
    PiecewiseAffineMap,
    transfer_constants,
    verify_piecewise_map,
)
from app.star_maps.reflection import StarFrame, build_star_reflection, theta_singular_values
from app.star_maps.starshape import star_inradius

__all__ = [
    "Piece",
    "PiecewiseAffineMap",
    "StarFrame",
    "build_star_contraction",
    "build_star_reflection",
    "contraction_singular_values",
    "star_inradius",
    "theta_singular_values",
    "transfer_constants",
    "verify_piecewise_map",
]
