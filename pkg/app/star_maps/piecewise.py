"""
PiecewiseAffineMap: simplex 조각별 affine 사상과 검증, pullback 전달 상수
"""
from itertools import combinations
from typing import List, Optional, Sequence

import numpy as np

from app.config import settings
from app.models.maps import MapVerificationReport, PieceMeta, TransferConstants
from app.simplex_geometry.affine import AffineMap, bounded_pullback_factor
from app.utils.linalg import barycentric_coordinates, diameter, overlap_volume, simplex_volume


class Piece:
    """
    조각 하나

    Attributes:
        domain: (n+1, n) 정의역 simplex 꼭짓점
        map: 조각 위 affine 사상
        meta: closed-form 특이값 데이터
        sigma_bounds: 정방향 특이값 상한 (transfer 상한 계산용)
        inverse_sigma_bounds: 역방향 특이값 상한
    """

    def __init__(
        self,
        domain: np.ndarray,
        affine: AffineMap,
        meta: PieceMeta,
        sigma_bounds: Sequence[float],
        inverse_sigma_bounds: Sequence[float],
    ):
        self.domain = np.asarray(domain, dtype=float)
        self.map = affine
        self.meta = meta
        self.sigma_bounds = np.asarray(sigma_bounds, dtype=float)
        self.inverse_sigma_bounds = np.asarray(inverse_sigma_bounds, dtype=float)

    @property
    def image(self) -> np.ndarray:
        return self.map(self.domain)


class PiecewiseAffineMap:
    """
    조각별 affine 사상

    Attributes:
        pieces: Piece 목록 (정의역 내부가 서로 겹치지 않음)
        fixed_faces: 사상이 항등이어야 하는 face 꼭짓점 배열 목록
        fixed_points: 사상이 고정해야 하는 점
        identity_outside: 조각 밖의 점을 그대로 두는지 여부
    """

    def __init__(
        self,
        pieces: List[Piece],
        fixed_faces: Optional[List[np.ndarray]] = None,
        fixed_points: Optional[List[np.ndarray]] = None,
        identity_outside: bool = False,
    ):
        self.pieces = pieces
        self.fixed_faces = [np.asarray(f, dtype=float) for f in (fixed_faces or [])]
        self.fixed_points = [np.asarray(x, dtype=float) for x in (fixed_points or [])]
        self.identity_outside = identity_outside

    @property
    def n(self) -> int:
        return self.pieces[0].map.n

    @property
    def scale(self) -> float:
        return max(diameter(piece.domain) for piece in self.pieces)

    def locate(self, x: np.ndarray, tol: float = 1e-9) -> Optional[int]:
        """x 를 포함하는 첫 조각 인덱스"""
        for i, piece in enumerate(self.pieces):
            if np.all(barycentric_coordinates(piece.domain, x) >= -tol):
                return i
        return None

    def apply(self, x: np.ndarray) -> np.ndarray:
        """
        점 하나에 사상 적용

        Raises:
            ValueError: 조각 밖의 점 (identity_outside=False)
        """
        x = np.asarray(x, dtype=float)
        idx = self.locate(x)
        if idx is None:
            if self.identity_outside:
                return x.copy()
            raise ValueError("point outside the map's domain")
        return self.pieces[idx].map(x)

    def perturbed(self, piece_index: int, delta: np.ndarray) -> "PiecewiseAffineMap":
        """조각 하나의 offset 을 바꾼 사본 (검증 음성 대조군용)"""
        pieces = list(self.pieces)
        old = pieces[piece_index]
        pieces[piece_index] = Piece(
            old.domain,
            old.map.perturbed(delta),
            old.meta,
            old.sigma_bounds,
            old.inverse_sigma_bounds,
        )
        return PiecewiseAffineMap(pieces, self.fixed_faces, self.fixed_points, self.identity_outside)

    def __len__(self) -> int:
        return len(self.pieces)


def transfer_constants(pw: PiecewiseAffineMap, k: int, p: float) -> TransferConstants:
    """
    k-form pullback 전달 상수

    forward = max_piece sigma_1...sigma_k |det|^{-1/p},
    inverse 는 역사상에 대한 같은 양. 상한은 조각별 특이값 상한으로 계산합니다.
    """
    n = pw.n
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} outside 0..{n}")
    forward = max(piece.map.pullback_factor(k, p) for piece in pw.pieces)
    inverse = max(piece.map.inverse().pullback_factor(k, p) for piece in pw.pieces)
    bound_forward = max(
        bounded_pullback_factor(piece.sigma_bounds, piece.meta.det, k, p) for piece in pw.pieces
    )
    bound_inverse = max(
        bounded_pullback_factor(piece.inverse_sigma_bounds, 1.0 / piece.meta.det, k, p)
        for piece in pw.pieces
    )
    if pw.identity_outside:
        # 조각 밖은 항등이므로 상수는 1 이상
        forward, inverse = max(forward, 1.0), max(inverse, 1.0)
        bound_forward, bound_inverse = max(bound_forward, 1.0), max(bound_inverse, 1.0)
    return TransferConstants(
        k=k,
        p=p,
        forward=forward,
        inverse=inverse,
        bound_forward=bound_forward,
        bound_inverse=bound_inverse,
    )


def _shared_rows(a: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray:
    """두 꼭짓점 배열에 공통으로 있는 점"""
    shared = [x for x in a if np.min(np.linalg.norm(b - x, axis=1)) <= tol]
    return np.array(shared)


def verify_piecewise_map(
    pw: PiecewiseAffineMap, samples: int = 100, seed: int = 0
) -> MapVerificationReport:
    """
    사상 검증: 연속성, 단사성, 고정 face 항등, SVD 와 closed form 일치

    Returns:
        MapVerificationReport: 항목별 통과 여부와 실패 설명
    """
    tol = settings.geometry_tol
    scale = pw.scale
    failures: List[str] = []
    checks = {"continuity": True, "injectivity": True, "identity": True, "singular_values": True}

    # 연속성: 공유 꼭짓점과 공유 face 무게중심
    for i, j in combinations(range(len(pw.pieces)), 2):
        a, b = pw.pieces[i], pw.pieces[j]
        shared = _shared_rows(a.domain, b.domain, tol * scale)
        if len(shared) == 0:
            continue
        points = np.vstack([shared, shared.mean(axis=0)])
        gap = float(np.max(np.linalg.norm(a.map(points) - b.map(points), axis=1)))
        if gap > tol * scale:
            checks["continuity"] = False
            failures.append(f"pieces {i},{j} disagree on shared points (gap {gap:.3e})")

    # 단사성: 조각 image 의 내부 겹침
    for i, j in combinations(range(len(pw.pieces)), 2):
        img_i, img_j = pw.pieces[i].image, pw.pieces[j].image
        vol = overlap_volume(img_i, img_j)
        if vol > tol * min(simplex_volume(img_i), simplex_volume(img_j)):
            checks["injectivity"] = False
            failures.append(f"images of pieces {i},{j} overlap (volume {vol:.3e})")

    # 고정 face 항등
    rng = np.random.default_rng(seed)
    for f_idx, face in enumerate(pw.fixed_faces):
        weights = rng.dirichlet(np.ones(len(face)), size=samples)
        for x in weights @ face:
            try:
                err = float(np.linalg.norm(pw.apply(x) - x))
            except ValueError:
                err = np.inf
            if err > tol * scale:
                checks["identity"] = False
                failures.append(f"fixed face {f_idx} moved by {err:.3e}")
                break
    for x in pw.fixed_points:
        err = float(np.linalg.norm(pw.apply(x) - x))
        if err > tol * scale:
            checks["identity"] = False
            failures.append(f"fixed point moved by {err:.3e}")

    # SVD 와 closed form
    for i, piece in enumerate(pw.pieces):
        sv = piece.map.singular_values
        meta = piece.meta
        ok = (
            abs(sv[0] - meta.sigma_max) <= tol * max(1.0, meta.sigma_max)
            and abs(sv[-1] - meta.sigma_min) <= tol * max(1.0, meta.sigma_max)
            and abs(abs(piece.map.det) - meta.det) <= tol * max(1.0, meta.det)
            and np.allclose(sv[1:-1], 1.0, atol=tol, rtol=0)
        )
        if not ok:
            checks["singular_values"] = False
            failures.append(f"piece {i}: SVD {np.round(sv, 6).tolist()} vs closed form")

    return MapVerificationReport(passed=not failures, checks=checks, failures=failures)
