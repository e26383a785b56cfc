"""
star reflection Xi_1: T -> U = st(S) \\ T

T 를 z_S, z_{S'} 에서 barycentric 분할한 조각 K 마다, K 의 face 중 z_{S'} 맞은편 face 를
고정하고 z_{S'} 를 pivot y = z_S - rho (z_{S'} - z_S) 로 보내는 affine 사상을 씁니다.
ell = n-1 이면 face reflection 하나로 대체합니다.
"""
import math
from typing import List, Sequence, Tuple

import numpy as np

from app.exceptions import EmptyComplement, PivotDegenerate, SimplexNotFound
from app.mesh_core.complex import SimplicialComplex
from app.models.maps import PieceKind, PieceMeta
from app.simplex_geometry.affine import AffineMap
from app.simplex_geometry.geometry import SimplexGeometryCalculator
from app.simplex_geometry.reflection import face_reflection
from app.star_maps.piecewise import Piece, PiecewiseAffineMap
from app.star_maps.starshape import star_inradius
from app.utils.linalg import barycentric_system, diameter


def theta_singular_values(rho: float, tan_beta: float) -> Tuple[float, float]:
    """[[-rho, 0], [-(1+rho) t, 1]] 의 특이값"""
    a = 0.5 * (1.0 + rho) * math.sqrt(1.0 + tan_beta ** 2)
    b = 0.5 * math.sqrt((1.0 - rho) ** 2 + (1.0 + rho) ** 2 * tan_beta ** 2)
    return a + b, a - b


def tan_beta(normal: np.ndarray, direction: np.ndarray) -> float:
    """direction 을 normal 성분과 접선 성분으로 나눈 비 |b|/|h|"""
    unit = normal / np.linalg.norm(normal)
    h = float(unit @ direction)
    b = direction - h * unit
    return float(np.linalg.norm(b)) / abs(h)


class StarFrame:
    """
    S 와 셀 T 에 대한 분할 데이터

    Attributes:
        S, S_prime: S 와 T 안의 보완 simplex 정점 id
        z_S, z_S_prime: 두 무게중심
        z: z_{S'} - z_S
        rho: min(1, varrho/|z|)
        y: pivot z_S - rho z
        U: st(S) 에서 T 를 뺀 셀 인덱스
    """

    def __init__(self, c: SimplicialComplex, s: Sequence[int], t: int, needs_pivot: bool = True):
        self.c = c
        self.S = c.require(s)
        star = c.cells_containing(self.S)
        if t not in star:
            raise SimplexNotFound(
                f"cell {t} is not in st({self.S})", {"cell": t, "star": star}
            )
        self.t = t
        self.cell = c.cells[t]
        self.U = [j for j in star if j != t]
        if not self.U:
            raise EmptyComplement(f"st({self.S}) has no cell besides {t}", {"cell": t})

        self.ell = len(self.S) - 1
        self.S_prime = tuple(v for v in self.cell if v not in self.S)
        self.points = c.cell_points(t)
        self.z_S = c.coords[list(self.S)].mean(axis=0)
        self.z_S_prime = c.coords[list(self.S_prime)].mean(axis=0)
        self.z = self.z_S_prime - self.z_S
        norm = float(np.linalg.norm(self.z))
        if norm <= 1e-14 * diameter(self.points):
            raise PivotDegenerate("barycenters of S and S' coincide")

        self.rho = 1.0
        self.y = self.z_S - self.z
        if needs_pivot:
            info = star_inradius(c, self.S)
            self.rho = min(1.0, info.radius / norm)
            self.y = self.z_S - self.rho * self.z

    def splits(self) -> List[Tuple[Tuple[int, ...], int]]:
        """(S 에서 뺀 정점 제외한 나머지, 제거할 S' 정점) 쌍"""
        out = []
        for s_i in self.S:
            rest = tuple(v for v in self.S if v != s_i)
            for s_j in self.S_prime:
                out.append((rest, s_j))
        return out

    def coords_of(self, ids: Sequence[int]) -> List[np.ndarray]:
        return [self.c.coords[v] for v in ids]

    def facet_normal(self, opposite: int) -> np.ndarray:
        """T 에서 opposite 맞은편 facet 의 단위 법선"""
        G, _ = barycentric_system(self.points)
        row = G[self.cell.index(opposite)]
        return row / np.linalg.norm(row)

    def facets_containing_S(self) -> List[np.ndarray]:
        return [self.c.coords[[v for v in self.cell if v != s_j]] for s_j in self.S_prime]


def _face_reflection_map(frame: StarFrame) -> PiecewiseAffineMap:
    (other,) = frame.U
    fr = face_reflection(frame.cell, frame.c.cells[other], frame.c.coords)
    n = frame.c.n
    det = abs(fr.map.det)
    meta = PieceMeta(
        kind=PieceKind.FACE_REFLECTION,
        rho=det,
        tan_beta=fr.c,
        sigma_max=fr.sigma_max,
        sigma_min=fr.sigma_min,
        det=det,
    )
    inverse_bounds = [fr.bound_inv_sigma_min] + [1.0] * (n - 2) + [1.0 / fr.bound_sigma_max]
    piece = Piece(frame.points, fr.map, meta, fr.sigma_bounds(), inverse_bounds)
    return PiecewiseAffineMap([piece], fixed_faces=[frame.c.coords[list(fr.shared_face)]])


def build_star_reflection(c: SimplicialComplex, s: Sequence[int], t: int) -> PiecewiseAffineMap:
    """
    Xi_1: T -> U, Gamma_1 = T n U 위에서 항등

    Args:
        c: complex
        s: 내부 simplex S
        t: st(S) 의 셀 인덱스

    Returns:
        PiecewiseAffineMap (ell = n-1 이면 face reflection 조각 하나)

    Raises:
        EmptyComplement, PivotDegenerate, NotInteriorSimplex
    """
    n = c.n
    frame = StarFrame(c, s, t, needs_pivot=len(c.require(s)) - 1 < n - 1)
    if frame.ell == n - 1:
        return _face_reflection_map(frame)

    rho = frame.rho
    kappa = SimplexGeometryCalculator.kappa_A(frame.points)
    mu, _ = theta_singular_values(rho, (n - frame.ell) * kappa)

    pieces: List[Piece] = []
    for rest, s_j in frame.splits():
        others = [v for v in frame.S_prime if v != s_j]
        domain = np.vstack(
            [frame.z_S] + frame.coords_of(rest) + [frame.z_S_prime] + frame.coords_of(others)
        )
        normal = frame.facet_normal(s_j)
        affine = AffineMap.fixing_hyperplane(frame.z_S, normal, frame.z, 1.0 + rho)
        t_beta = tan_beta(normal, frame.z)
        sigma_max, sigma_min = theta_singular_values(rho, t_beta)
        meta = PieceMeta(
            kind=PieceKind.THETA,
            rho=rho,
            tan_beta=t_beta,
            sigma_max=sigma_max,
            sigma_min=sigma_min,
            det=rho,
        )
        pieces.append(Piece(
            domain,
            affine,
            meta,
            sigma_bounds=[mu] + [1.0] * (n - 2) + [rho / mu],
            inverse_sigma_bounds=[mu / rho] + [1.0] * (n - 2) + [1.0 / mu],
        ))

    return PiecewiseAffineMap(pieces, fixed_faces=frame.facets_containing_S())
