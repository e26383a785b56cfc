"""
star contraction Xi_2: st(S) -> U

분할 조각 K 와 그 짝 K^c 의 합집합 [Q, z_{S'}, y] 를 K^c = [Q, z_S, y] 로 보내는
affine 사상입니다 (Q 와 y 고정, z_{S'} -> z_S). 합집합 밖에서는 항등입니다.
"""
import math
from typing import List, Sequence, Tuple

import numpy as np

from app.mesh_core.complex import SimplicialComplex
from app.models.maps import PieceKind, PieceMeta, TransferConstants
from app.simplex_geometry.affine import AffineMap
from app.star_maps.piecewise import Piece, PiecewiseAffineMap, transfer_constants
from app.star_maps.reflection import StarFrame, tan_beta
from app.utils.linalg import barycentric_system


def contraction_singular_values(rho: float, tan_b: float) -> Tuple[float, float]:
    """[[rho/(1+rho), 0], [-t/(1+rho), 1]] 의 특이값"""
    a = math.sqrt((2.0 * rho + 1.0) ** 2 + tan_b ** 2)
    b = math.sqrt(1.0 + tan_b ** 2)
    scale = 2.0 * (1.0 + rho)
    return (a + b) / scale, (a - b) / scale


def build_star_contraction(
    c: SimplicialComplex, s: Sequence[int], t: int, k: int = 0, p: float = 2.0
) -> Tuple[PiecewiseAffineMap, TransferConstants]:
    """
    Xi_2: st(S) -> U, dU \\ dT 위에서 항등

    Args:
        c: complex
        s: 내부 simplex S
        t: st(S) 의 셀 인덱스
        k, p: 함께 계산할 전달 상수의 degree 와 지수

    Returns:
        (PiecewiseAffineMap, TransferConstants)
    """
    n = c.n
    frame = StarFrame(c, s, t)
    rho = frame.rho

    pieces: List[Piece] = []
    fixed_faces: List[np.ndarray] = []
    for rest, s_j in frame.splits():
        others = [v for v in frame.S_prime if v != s_j]
        Q = frame.coords_of(rest) + frame.coords_of(others)
        domain = np.vstack(Q + [frame.z_S_prime, frame.y])
        target = np.vstack(Q + [frame.z_S, frame.y])
        affine = AffineMap.from_simplices(domain, target)

        # 고정 face [Q, y] 의 법선: 정의역에서 z_{S'} 의 barycentric gradient
        G, _ = barycentric_system(domain)
        t_beta = tan_beta(G[len(Q)], frame.z)
        sigma_max, sigma_min = contraction_singular_values(rho, t_beta)
        det = rho / (1.0 + rho)
        meta = PieceMeta(
            kind=PieceKind.CONTRACTION,
            rho=rho,
            tan_beta=t_beta,
            sigma_max=sigma_max,
            sigma_min=sigma_min,
            det=det,
        )
        pieces.append(Piece(
            domain,
            affine,
            meta,
            sigma_bounds=[sigma_max] + [1.0] * (n - 2) + [sigma_min],
            inverse_sigma_bounds=[1.0 / sigma_min] + [1.0] * (n - 2) + [1.0 / sigma_max],
        ))
        fixed_faces.append(np.vstack(Q + [frame.y]))

    pw = PiecewiseAffineMap(
        pieces, fixed_faces=fixed_faces, fixed_points=[frame.y], identity_outside=True
    )
    return pw, transfer_constants(pw, k, p)
