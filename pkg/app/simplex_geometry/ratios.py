"""
메쉬 전역 비율 C_rho, C_theta, C_xi
"""
from itertools import combinations

import numpy as np

from app.mesh_core.complex import SimplicialComplex
from app.models.mesh import MeshRatios
from app.simplex_geometry.reflection import face_reflection
from app.utils.linalg import diameter, simplex_volume
from app.utils.logger import log


def mesh_ratios(c: SimplicialComplex) -> MeshRatios:
    """
    C_rho: face 이웃 부피비 최대 (양방향)
    C_theta: 정점 공유 셀 지름비 최대
    C_xi: face reflection 최대 특이값 (양방향)

    셀이 1개이면 모두 1 로 두고 single_cell 로 표시합니다.
    """
    if c.num_cells == 1:
        log.info("mesh_ratios: 셀 1개 메쉬, 비율을 1 로 둡니다")
        return MeshRatios(C_rho=1.0, C_theta=1.0, C_xi=1.0, single_cell=True)

    volumes = np.array([simplex_volume(c.cell_points(i)) for i in range(c.num_cells)])
    diameters = np.array([diameter(c.cell_points(i)) for i in range(c.num_cells)])

    C_rho = 1.0
    C_xi = 1.0
    for owners in c.cofaces.values():
        for i, j in combinations(owners, 2):
            C_rho = max(C_rho, volumes[i] / volumes[j], volumes[j] / volumes[i])
            forward = face_reflection(c.cells[i], c.cells[j], c.coords)
            backward = face_reflection(c.cells[j], c.cells[i], c.coords)
            C_xi = max(C_xi, forward.sigma_max, backward.sigma_max)

    C_theta = 1.0
    for v in c.skeleta[0]:
        owners = c.cells_at_vertex(v[0])
        if len(owners) > 1:
            d = diameters[owners]
            C_theta = max(C_theta, float(d.max() / d.min()))

    return MeshRatios(C_rho=float(C_rho), C_theta=float(C_theta), C_xi=float(C_xi))
