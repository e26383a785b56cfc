"""
공용 수치 헬퍼

simplex 부피, barycentric 좌표, 반공간 표현, 두 simplex 교집합 부피 (LP Chebyshev center +
HalfspaceIntersection) 등 여러 모듈이 공유하는 계산.
"""
import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, HalfspaceIntersection
from scipy.spatial import QhullError

from app.exceptions import DegenerateCell


def edge_matrix(points: np.ndarray) -> np.ndarray:
    """v_i - v_0 를 열로 갖는 n x n 행렬"""
    points = np.asarray(points, dtype=float)
    return (points[1:] - points[0]).T


def signed_volume(points: np.ndarray) -> float:
    """det(edge matrix)/n!"""
    points = np.asarray(points, dtype=float)
    n = points.shape[1]
    return float(np.linalg.det(edge_matrix(points)) / math.factorial(n))


def simplex_volume(points: np.ndarray) -> float:
    """n-simplex 부피 |det E| / n!"""
    return abs(signed_volume(points))


def diameter(points: np.ndarray) -> float:
    """꼭짓점 쌍 최대 거리 (simplex 및 convex hull 의 지름)"""
    points = np.asarray(points, dtype=float)
    diffs = points[:, None, :] - points[None, :, :]
    return float(np.sqrt((diffs ** 2).sum(axis=-1)).max())


def barycentric_system(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    barycentric 좌표의 affine 표현 lambda(x) = G x + g

    Args:
        points: (n+1, n) 꼭짓점

    Returns:
        (G, g): G 는 (n+1, n), 행 i 가 grad lambda_i
    """
    points = np.asarray(points, dtype=float)
    E = edge_matrix(points)
    try:
        E_inv = np.linalg.inv(E)
    except np.linalg.LinAlgError as e:
        raise DegenerateCell("singular edge matrix", {"points": points.tolist()}) from e
    G = np.vstack([-E_inv.sum(axis=0), E_inv])
    g_tail = -E_inv @ points[0]
    g = np.concatenate([[1.0 - g_tail.sum()], g_tail])
    return G, g


def barycentric_coordinates(points: np.ndarray, x: np.ndarray) -> np.ndarray:
    """x (..., n) 의 barycentric 좌표 (..., n+1)"""
    G, g = barycentric_system(points)
    return np.asarray(x, dtype=float) @ G.T + g


def contains_point(points: np.ndarray, x: np.ndarray, tol: float = 1e-10) -> bool:
    """점 x 가 simplex 내부(경계 포함)에 있는지"""
    return bool(np.all(barycentric_coordinates(points, x) >= -tol))


def halfspaces(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """simplex 를 A x <= b 로 표현 (행 정규화)"""
    G, g = barycentric_system(points)
    A, b = -G, g
    norms = np.linalg.norm(A, axis=1)
    return A / norms[:, None], b / norms


def chebyshev_center(A: np.ndarray, b: np.ndarray) -> Tuple[Optional[np.ndarray], float]:
    """
    다면체 A x <= b 의 Chebyshev center (최대 내접구)

    Returns:
        (center, radius): 비어 있으면 (None, 0.0)
    """
    n = A.shape[1]
    norms = np.linalg.norm(A, axis=1)
    c = np.zeros(n + 1)
    c[-1] = -1.0
    A_ub = np.hstack([A, norms[:, None]])
    bounds = [(None, None)] * n + [(0.0, None)]
    res = linprog(c, A_ub=A_ub, b_ub=b, bounds=bounds, method="highs")
    if not res.success:
        return None, 0.0
    return res.x[:n], float(res.x[-1])


def overlap_volume(P: np.ndarray, Q: np.ndarray, radius_tol: float = 1e-9) -> float:
    """
    두 n-simplex 교집합의 부피

    Chebyshev 반지름이 radius_tol * scale 이하이면 (접촉만 하는 경우) 0 을 반환합니다.
    """
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    A1, b1 = halfspaces(P)
    A2, b2 = halfspaces(Q)
    A = np.vstack([A1, A2])
    b = np.concatenate([b1, b2])
    center, radius = chebyshev_center(A, b)
    scale = max(diameter(P), diameter(Q))
    if center is None or radius <= radius_tol * scale:
        return 0.0
    try:
        hs = HalfspaceIntersection(np.hstack([A, -b[:, None]]), center)
        return float(ConvexHull(hs.intersections).volume)
    except QhullError:
        return 0.0


def hull_volume(points: np.ndarray) -> float:
    """점 집합 convex hull 의 부피"""
    return float(ConvexHull(np.asarray(points, dtype=float)).volume)


def reciprocal(p: float) -> float:
    """1/p (p = inf 이면 0)"""
    return 0.0 if math.isinf(p) else 1.0 / p


def conjugate_exponent(p: float) -> float:
    """1/p + 1/q = 1 인 q"""
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def lp_power(x: float, p: float) -> float:
    """x^{1/p} (x^{1/inf} = 1)"""
    return 1.0 if math.isinf(p) else float(x) ** (1.0 / p)
