"""
p=2 기준 Poincare-Friedrichs 상수

메쉬를 균일 세분하고 Whitney 연산자 쌍을 조립해 최소 양의 고유값에서 상수를 얻습니다.
경계조건 없는 top-degree 직전 (div) 상수는 Dirichlet gradient 문제로 계산합니다.
"""
from typing import List, Optional, Sequence, Union

import numpy as np

from app.config import settings
from app.exceptions import DegreeOutOfRange, ExponentOutOfRange
from app.mesh_core.complex import SimplicialComplex
from app.mesh_core.topology import Topology
from app.models.mesh import Simplex
from app.models.reference import Constraint, EigenResult
from app.reference_feec.eigen import smallest_positive_eig
from app.reference_feec.refine import refine_times
from app.reference_feec.whitney import assemble_whitney, validate_bc_faces
from app.utils.logger import log

BoundarySelection = Union[str, Sequence[Sequence[int]]]


def operator_name(n: int, k: int) -> str:
    """degree k 의 d 에 대응하는 벡터 연산자 이름 (2D 에서 k=1 은 div 로 표기)"""
    if n == 2:
        return ("grad", "div")[k]
    return ("grad", "curl", "div")[k]


def resolve_bc(c: SimplicialComplex, bc: BoundarySelection) -> List[Simplex]:
    """'none' | 'all' | face 목록 -> 검증된 경계 face"""
    if isinstance(bc, str):
        if bc == "none":
            return []
        if bc == "all":
            return Topology.boundary_faces(c)
        raise ValueError(f"unknown boundary selection: {bc}")
    return validate_bc_faces(c, bc)


def refined_bc_faces(
    coarse: SimplicialComplex, fine: SimplicialComplex, faces: Sequence[Simplex]
) -> List[Simplex]:
    """
    세분 메쉬 경계 face 중 coarse face 안에 놓인 것

    face 꼭짓점의 coarse face 에 대한 최소제곱 barycentric 좌표가 비음수이고
    잔차가 0 인지로 판정합니다.
    """
    if not faces:
        return []
    scale = float(np.ptp(fine.coords, axis=0).max())
    tol = 1e-9 * scale
    out: List[Simplex] = []
    systems = []
    for face in faces:
        pts = coarse.coords[list(face)]
        A = np.vstack([pts.T, np.ones(len(face))])
        systems.append(A)
    for fine_face in Topology.boundary_faces(fine):
        verts = fine.coords[list(fine_face)]
        for A in systems:
            rhs = np.vstack([verts.T, np.ones(len(fine_face))])
            lam, *_ = np.linalg.lstsq(A, rhs, rcond=None)
            resid = np.linalg.norm(A @ lam - rhs)
            if resid <= tol and lam.min() >= -1e-9:
                out.append(fine_face)
                break
    return out


def reference_pf_constant(
    c: SimplicialComplex,
    k: int,
    p: float = 2.0,
    bc: BoundarySelection = "none",
    refinements: Optional[int] = None,
    cross_check: Optional[bool] = None,
) -> EigenResult:
    """
    FEEC 기준 상수

    Args:
        c: coarse 메쉬 (n = 2, 3)
        k: form degree (0..n-1)
        p: 2 만 지원
        bc: 'none' | 'all' | essential 경계조건을 줄 coarse 경계 face 목록
        refinements: 균일 세분 횟수 (기본: settings.default_refinements)

    Returns:
        EigenResult

    Raises:
        ExponentOutOfRange: p != 2
        DegreeOutOfRange: k 가 0..n-1 밖
    """
    if p != 2.0:
        raise ExponentOutOfRange("reference constants are only available for p=2", {"p": p})
    n = c.n
    if not 0 <= k <= n - 1:
        raise DegreeOutOfRange(f"degree k={k} outside 0..{n - 1}", {"n": n, "k": k})
    refinements = settings.default_refinements if refinements is None else refinements
    coarse_faces = resolve_bc(c, bc)
    fine = refine_times(c, refinements)

    route = "direct"
    if k == n - 1 and not coarse_faces:
        # 경계조건 없는 div 상수 = 전체 Dirichlet gradient 상수
        route = "dual_dirichlet"
        degree = 0
        faces = Topology.boundary_faces(fine)
    else:
        degree = k
        faces = refined_bc_faces(c, fine, coarse_faces)

    _, pair = assemble_whitney(fine, degree, faces)
    if degree == 0:
        result = smallest_positive_eig(
            pair, Constraint.NONE, kernel_dim=0 if faces else 1, cross_check=cross_check
        )
    else:
        result = smallest_positive_eig(pair, Constraint.MIXED_DIVFREE, cross_check=cross_check)

    result = result.model_copy(update={"refinement_level": refinements, "k": k, "route": route})
    log.info(
        f"기준 상수: {operator_name(n, k)} (k={k}), bc_faces={len(coarse_faces)}, "
        f"refine={refinements}, constant={result.constant:.6g}"
    )
    return result
