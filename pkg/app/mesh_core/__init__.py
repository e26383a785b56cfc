from app.mesh_core.complex import SimplicialComplex, build_complex, make_simplex
from app.mesh_core.topology import Star, Topology

__all__ = ["SimplicialComplex", "build_complex", "make_simplex", "Star", "Topology"]
