"""
내부 simplex star 의 star-shaped 반지름
"""
from typing import Sequence

import numpy as np

from app.exceptions import NotInteriorSimplex, StarShapeViolation
from app.mesh_core.complex import SimplicialComplex
from app.mesh_core.topology import Topology
from app.models.maps import StarShapeInfo
from app.utils.linalg import barycentric_system


def star_inradius(c: SimplicialComplex, s: Sequence[int]) -> StarShapeInfo:
    """
    st(S) 가 star-shaped 인 중심 구 B(z_S, varrho)

    varrho = min_{T in st(S), v in S} h_v(T) / (ell+1).
    star 경계 face (S 의 꼭짓점 맞은편 face) 의 hyperplane 까지 거리가 모두 varrho 이상인지
    검증합니다.

    Raises:
        SimplexNotFound: S 가 complex 에 없음
        NotInteriorSimplex: S 가 경계에 있음
        StarShapeViolation: 구가 경계 hyperplane 을 넘음
    """
    simplex = c.require(s)
    if not Topology.is_interior_simplex(c, simplex):
        raise NotInteriorSimplex(f"simplex {simplex} lies on the boundary", {"simplex": list(simplex)})
    ell = len(simplex) - 1
    center = c.coords[list(simplex)].mean(axis=0)
    cells = c.cells_containing(simplex)

    min_height = np.inf
    distances = []
    for idx in cells:
        cell = c.cells[idx]
        G, g = barycentric_system(c.cell_points(idx))
        grad_norms = np.linalg.norm(G, axis=1)
        for v in simplex:
            i = cell.index(v)
            min_height = min(min_height, 1.0 / grad_norms[i])
            # 꼭짓점 v 맞은편 face 까지 z_S 의 거리 = lambda_v(z_S) * h_v
            distances.append((G[i] @ center + g[i]) / grad_norms[i])

    radius = float(min_height / (ell + 1))
    worst = float(min(distances))
    if worst < radius * (1.0 - 1e-12):
        raise StarShapeViolation(
            f"ball of radius {radius:.6g} crosses a boundary face of st({simplex})",
            {"radius": radius, "distance": worst},
        )
    return StarShapeInfo(
        center=center.tolist(),
        radius=radius,
        ell=ell,
        min_height=float(min_height),
        verified=True,
    )
