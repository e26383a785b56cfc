from app.simplex_geometry.affine import AffineMap, bounded_pullback_factor, pullback_factor
from app.simplex_geometry.geometry import SimplexGeometryCalculator
from app.simplex_geometry.ratios import mesh_ratios
from app.simplex_geometry.reflection import (
    FaceReflection,
    block_singular_values,
    face_reflection,
    face_reflection_points,
    half_sum_singular_values,
)

__all__ = [
    "AffineMap",
    "FaceReflection",
    "SimplexGeometryCalculator",
    "block_singular_values",
    "bounded_pullback_factor",
    "face_reflection",
    "face_reflection_points",
    "half_sum_singular_values",
    "mesh_ratios",
    "pullback_factor",
]
