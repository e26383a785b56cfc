"""
simplex 계량: 부피, 지름, 높이, kappa_A, kappa_M
"""
from itertools import permutations
from typing import Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.exceptions import DegenerateCell, DimensionTooLarge
from app.models.mesh import SimplexGeometry
from app.utils.linalg import barycentric_system, diameter, simplex_volume
from app.utils.logger import log


class SimplexGeometryCalculator:
    """
    simplex 기하량 계산기

    kappa_A = delta/h, kappa_A/sqrt(2n) <= kappa_M <= n*kappa_A 관계가 성립합니다.
    """

    @staticmethod
    def geometry_of(
        simplex: Sequence[int], coords: np.ndarray, with_kappa_M: bool = True
    ) -> SimplexGeometry:
        """
        정점 id 와 좌표 배열로 기하량 계산

        Args:
            simplex: n+1 개 정점 id
            coords: 전체 정점 좌표
            with_kappa_M: kappa_M 계산 여부

        Returns:
            SimplexGeometry
        """
        return SimplexGeometryCalculator.geometry_of_points(
            np.asarray(coords, dtype=float)[list(simplex)], with_kappa_M
        )

    @staticmethod
    def geometry_of_points(points: np.ndarray, with_kappa_M: bool = True) -> SimplexGeometry:
        """꼭짓점 좌표 (n+1, n) 로 기하량 계산"""
        points = np.asarray(points, dtype=float)
        n = points.shape[1]
        volume = simplex_volume(points)
        delta = diameter(points)
        if volume <= 1e-12 * delta ** n:
            raise DegenerateCell("simplex has zero volume", {"points": points.tolist()})

        # 높이 h_i = 1/|grad lambda_i|, 방향은 grad lambda_i
        G, _ = barycentric_system(points)
        grad_norms = np.linalg.norm(G, axis=1)
        heights = 1.0 / grad_norms
        height_vectors = G / grad_norms[:, None] ** 2
        h_min = float(heights.min())

        kappa_M: Optional[float] = None
        fallback = False
        if with_kappa_M:
            kappa_M, fallback = SimplexGeometryCalculator.kappa_M(points)

        return SimplexGeometry(
            volume=volume,
            diameter=delta,
            min_height=h_min,
            heights=heights.tolist(),
            height_vectors=height_vectors.tolist(),
            barycenter=points.mean(axis=0).tolist(),
            kappa_A=delta / h_min,
            kappa_M=kappa_M,
            kappa_M_fallback=fallback,
        )

    @staticmethod
    def kappa_A(points: np.ndarray) -> float:
        """aspect shape measure delta/h"""
        G, _ = barycentric_system(points)
        return diameter(points) * float(np.linalg.norm(G, axis=1).max())

    @staticmethod
    def kappa_M(points: np.ndarray, strict: bool = False) -> Tuple[float, bool]:
        """
        algebraic shape measure: (n+1)! 꼭짓점 순서에 대한 cond(J phi) 최대값

        Args:
            points: (n+1, n) 꼭짓점
            strict: True 이면 n 한도 초과 시 DimensionTooLarge

        Returns:
            (값, fallback 여부): n > kappa_m_max_dim 이면 n*kappa_A 를 반환하고 True
        """
        points = np.asarray(points, dtype=float)
        n = points.shape[1]
        if n > settings.kappa_m_max_dim:
            if strict:
                raise DimensionTooLarge(
                    f"kappa_M enumeration limited to n <= {settings.kappa_m_max_dim}"
                )
            log.warning(f"kappa_M: n={n} 전수 열거 생략, n*kappa_A 상한 사용")
            return n * SimplexGeometryCalculator.kappa_A(points), True

        orders = np.array(list(permutations(range(n + 1))))
        ordered = points[orders]  # (P, n+1, n)
        jacobians = np.transpose(ordered[:, 1:, :] - ordered[:, :1, :], (0, 2, 1))
        sv = np.linalg.svd(jacobians, compute_uv=False)
        return float((sv[:, 0] / sv[:, -1]).max()), False

    @staticmethod
    def reference_simplex(n: int) -> np.ndarray:
        """기준 simplex: 원점과 단위벡터"""
        return np.vstack([np.zeros(n), np.eye(n)])
