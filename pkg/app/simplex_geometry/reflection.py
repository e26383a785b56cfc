"""
face reflection: 공유 (n-1)-face F 를 고정하고 T1 -> T2 로 보내는 affine 사상 Xi
"""
import math
from typing import Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.exceptions import NotFaceNeighbors
from app.simplex_geometry.affine import AffineMap
from app.simplex_geometry.geometry import SimplexGeometryCalculator
from app.utils.linalg import diameter


def block_singular_values(a: float, c: float) -> Tuple[float, float]:
    """
    [[a, 0], [c, 1]] 블록의 특이값 (이차 특성식 형태, 항상 비음수)

    sigma_pm = sqrt((1 + a^2 + c^2 +- sqrt((1 + a^2 + c^2)^2 - 4 a^2)) / 2)
    """
    t = 1.0 + a * a + c * c
    disc = math.sqrt(max(t * t - 4.0 * a * a, 0.0))
    sigma_max = math.sqrt((t + disc) / 2.0)
    # 소거 오차를 피하기 위해 sigma_min = |a| / sigma_max
    sigma_min = abs(a) / sigma_max
    return sigma_max, sigma_min


def half_sum_singular_values(a: float, c: float) -> Tuple[float, float]:
    """반합/반차 형태 (a < 0 이면 음수가 될 수 있음, 참고용)"""
    plus = math.sqrt((1.0 + a) ** 2 + c * c)
    minus = math.sqrt((1.0 - a) ** 2 + c * c)
    return 0.5 * (plus + minus), 0.5 * (plus - minus)


class FaceReflection:
    """
    face reflection 과 closed-form 특이값 데이터

    Attributes:
        map: AffineMap (T1 -> T2)
        shared_face: 공유 face 정점 id
        a: -h2/h1
        c: |foot2 - foot1| / h1
        sigma_max, sigma_min: 안정 형태 특이값 (권위값)
        half_sum: 반합 형태 (참고)
        bound_sigma_max: kappa_A 기반 sigma_max 상한
        bound_inv_sigma_min: kappa_A 기반 1/sigma_min 상한
    """

    def __init__(
        self,
        affine: AffineMap,
        shared_face: Tuple[int, ...],
        a: float,
        c: float,
        bound_sigma_max: float,
        bound_inv_sigma_min: float,
    ):
        self.map = affine
        self.shared_face = shared_face
        self.a = a
        self.c = c
        self.sigma_max, self.sigma_min = block_singular_values(a, c)
        self.half_sum = half_sum_singular_values(a, c)
        self.bound_sigma_max = bound_sigma_max
        self.bound_inv_sigma_min = bound_inv_sigma_min

    def closed_form_matches_svd(self, tol: Optional[float] = None) -> bool:
        """closed form 과 수치 SVD 비교 (상대 tol)"""
        tol = settings.geometry_tol if tol is None else tol
        sv = self.map.singular_values
        return (
            abs(sv[0] - self.sigma_max) <= tol * self.sigma_max
            and abs(sv[-1] - self.sigma_min) <= tol * max(self.sigma_min, 1e-300)
        )

    def sigma_bounds(self) -> np.ndarray:
        """pullback 상한 계산용 특이값 상한 목록"""
        n = self.map.n
        return np.array([self.bound_sigma_max] + [1.0] * (n - 2) + [1.0 / self.bound_inv_sigma_min])


def _lemma_bound(delta_src: float, delta_dst: float, kappa_src: float) -> float:
    """sigma_max <= 1/2 sqrt((r k + 1)^2 + k^2) + 1/2 sqrt((r k - 1)^2 + k^2), r = delta_dst/delta_src"""
    rk = delta_dst / delta_src * kappa_src
    return 0.5 * math.sqrt((rk + 1.0) ** 2 + kappa_src ** 2) + 0.5 * math.sqrt(
        (rk - 1.0) ** 2 + kappa_src ** 2
    )


def _foot(face: np.ndarray, apex: np.ndarray) -> np.ndarray:
    """apex 의 face affine hull 위 수선의 발"""
    basis = (face[1:] - face[0]).T
    if basis.shape[1] == 0:
        return face[0].copy()
    coeff, *_ = np.linalg.lstsq(basis, apex - face[0], rcond=None)
    return face[0] + basis @ coeff


def face_reflection_points(
    face: np.ndarray, apex1: np.ndarray, apex2: np.ndarray
) -> Tuple[AffineMap, float, float]:
    """
    공유 face 좌표와 두 대면 꼭짓점으로 reflection 계산

    Returns:
        (AffineMap, a, c)
    """
    face = np.asarray(face, dtype=float)
    src = np.vstack([face, apex1])
    dst = np.vstack([face, apex2])
    affine = AffineMap.from_simplices(src, dst)

    foot1, foot2 = _foot(face, apex1), _foot(face, apex2)
    h1 = float(np.linalg.norm(apex1 - foot1))
    h2 = float(np.linalg.norm(apex2 - foot2))
    a = -h2 / h1
    c = float(np.linalg.norm(foot2 - foot1)) / h1
    return affine, a, c


def face_reflection(t1: Sequence[int], t2: Sequence[int], coords: np.ndarray) -> FaceReflection:
    """
    face 이웃 셀 T1, T2 사이의 reflection Xi: T1 -> T2

    Args:
        t1, t2: 셀 정점 id
        coords: 전체 좌표

    Returns:
        FaceReflection

    Raises:
        NotFaceNeighbors: 공유 정점이 정확히 n 개가 아님
    """
    coords = np.asarray(coords, dtype=float)
    n = coords.shape[1]
    shared = sorted(set(t1) & set(t2))
    if len(shared) != n or len(set(t1)) != n + 1 or len(set(t2)) != n + 1:
        raise NotFaceNeighbors(
            f"cells {tuple(t1)} and {tuple(t2)} do not share exactly one face",
            {"shared": shared},
        )
    (z1,) = set(t1) - set(shared)
    (z2,) = set(t2) - set(shared)
    face = coords[shared]
    affine, a, c = face_reflection_points(face, coords[z1], coords[z2])

    p1 = coords[list(t1)]
    p2 = coords[list(t2)]
    delta1, delta2 = diameter(p1), diameter(p2)
    kappa1 = SimplexGeometryCalculator.kappa_A(p1)
    kappa2 = SimplexGeometryCalculator.kappa_A(p2)
    return FaceReflection(
        affine,
        tuple(shared),
        a,
        c,
        bound_sigma_max=_lemma_bound(delta1, delta2, kappa1),
        bound_inv_sigma_min=_lemma_bound(delta2, delta1, kappa2),
    )
