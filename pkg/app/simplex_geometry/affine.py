"""
AffineMap: x -> linear @ x + offset, 특이값/행렬식 캐시
"""
from typing import Optional

import numpy as np

from app.config import settings
from app.exceptions import SingularMap
from app.utils.linalg import edge_matrix, reciprocal


class AffineMap:
    """
    affine 사상과 Jacobian 특이값

    Attributes:
        linear: n x n 행렬
        offset: 길이 n 벡터
        singular_values: 내림차순 특이값
        det: 행렬식 (부호 포함)
    """

    def __init__(self, linear: np.ndarray, offset: Optional[np.ndarray] = None):
        self.linear = np.asarray(linear, dtype=float)
        n = self.linear.shape[0]
        self.offset = np.zeros(n) if offset is None else np.asarray(offset, dtype=float)
        self.singular_values = np.linalg.svd(self.linear, compute_uv=False)
        self.det = float(np.linalg.det(self.linear))

    @property
    def n(self) -> int:
        return self.linear.shape[0]

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(np.eye(n))

    @classmethod
    def from_simplices(cls, source: np.ndarray, target: np.ndarray) -> "AffineMap":
        """source 꼭짓점 i 를 target 꼭짓점 i 로 보내는 유일한 affine 사상"""
        source = np.asarray(source, dtype=float)
        target = np.asarray(target, dtype=float)
        linear = edge_matrix(target) @ np.linalg.inv(edge_matrix(source))
        offset = target[0] - linear @ source[0]
        return cls(linear, offset)

    @classmethod
    def fixing_hyperplane(
        cls, anchor: np.ndarray, normal: np.ndarray, direction: np.ndarray, factor: float
    ) -> "AffineMap":
        """
        anchor 를 지나고 normal 에 수직인 hyperplane 을 고정하는 사상

        linear = I - factor * direction normal^T / <normal, direction>
        """
        n = len(anchor)
        denom = float(normal @ direction)
        linear = np.eye(n) - factor * np.outer(direction, normal) / denom
        return cls(linear, anchor - linear @ anchor)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.linear.T + self.offset

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self o inner"""
        return AffineMap(self.linear @ inner.linear, self.linear @ inner.offset + self.offset)

    def inverse(self) -> "AffineMap":
        if abs(self.det) <= 1e-300:
            raise SingularMap("affine map is not invertible")
        inv = np.linalg.inv(self.linear)
        return AffineMap(inv, -inv @ self.offset)

    def perturbed(self, delta: np.ndarray) -> "AffineMap":
        """offset 에 delta 를 더한 사본"""
        return AffineMap(self.linear, self.offset + np.asarray(delta, dtype=float))

    def check(self, tol: Optional[float] = None) -> bool:
        """캐시된 특이값/행렬식이 행렬과 일치하는지 재계산"""
        tol = settings.geometry_tol if tol is None else tol
        fresh = np.linalg.svd(self.linear, compute_uv=False)
        scale = max(1.0, float(fresh[0]))
        if not np.allclose(fresh, self.singular_values, atol=tol * scale, rtol=0):
            return False
        prod = float(np.prod(fresh))
        return abs(abs(self.det) - prod) <= tol * max(prod, 1e-300)

    def pullback_factor(self, k: int, p: float) -> float:
        """
        k-form pullback 의 L^p 전달 상수

        sigma_1 ... sigma_k * |det|^{-1/p} (k=0 이면 빈 곱 = 1, p=inf 이면 det 인자 1)

        Raises:
            SingularMap: det = 0
        """
        if not 0 <= k <= self.n:
            raise ValueError(f"degree {k} outside 0..{self.n}")
        if abs(self.det) <= 1e-300:
            raise SingularMap("pullback through a singular map")
        top = float(np.prod(self.singular_values[:k])) if k else 1.0
        return top * abs(self.det) ** (-reciprocal(p))

    def __repr__(self) -> str:
        sv = ", ".join(f"{s:.4g}" for s in self.singular_values)
        return f"AffineMap(det={self.det:.4g}, sigma=[{sv}])"


def pullback_factor(m: AffineMap, k: int, p: float) -> float:
    """AffineMap.pullback_factor 의 함수형 별칭"""
    return m.pullback_factor(k, p)


def bounded_pullback_factor(sigma_bounds: np.ndarray, det: float, k: int, p: float) -> float:
    """
    특이값 상한 목록으로 계산한 pullback 상수 상한

    k = n 이면 곱이 |det| 이므로 정확한 값을 씁니다. 마지막 원소(최소 특이값 자리)는
    k < n 일 때 곱에 포함되지 않습니다.
    """
    bounds = np.sort(np.asarray(sigma_bounds, dtype=float))[::-1]
    if k >= len(bounds):
        top = abs(det)
    else:
        top = float(np.prod(bounds[:k])) if k else 1.0
    return top * abs(det) ** (-reciprocal(p))
