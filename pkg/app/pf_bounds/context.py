"""
한 메쉬에 대한 기하량/사상 캐시

탐색 중 같은 (S, 셀) 쌍의 star 사상과 전달 상수를 여러 번 요청하므로 한 번만 만듭니다.
"""
from typing import Dict, Optional, Sequence, Tuple

from app.mesh_core.complex import SimplicialComplex
from app.models.maps import TransferConstants
from app.models.mesh import MeshRatios, Simplex, SimplexGeometry
from app.simplex_geometry.geometry import SimplexGeometryCalculator
from app.simplex_geometry.ratios import mesh_ratios
from app.simplex_geometry.reflection import FaceReflection, face_reflection
from app.star_maps.contraction import build_star_contraction
from app.star_maps.piecewise import PiecewiseAffineMap, transfer_constants
from app.star_maps.reflection import build_star_reflection


class MeshContext:
    """
    메쉬 단위 캐시

    Attributes:
        c: complex
    """

    def __init__(self, c: SimplicialComplex):
        self.c = c
        self._geometry: Dict[int, SimplexGeometry] = {}
        self._face_reflection: Dict[Tuple[int, int], FaceReflection] = {}
        self._reflection: Dict[Tuple[Simplex, int], PiecewiseAffineMap] = {}
        self._contraction: Dict[Tuple[Simplex, int], PiecewiseAffineMap] = {}
        self._transfer: Dict[Tuple[str, Simplex, int, int, float], TransferConstants] = {}
        self._ratios: Optional[MeshRatios] = None

    @property
    def n(self) -> int:
        return self.c.n

    def geometry(self, idx: int) -> SimplexGeometry:
        if idx not in self._geometry:
            self._geometry[idx] = SimplexGeometryCalculator.geometry_of(
                self.c.cells[idx], self.c.coords
            )
        return self._geometry[idx]

    def volume_ratio(self, idx: int, other: int) -> float:
        """vol(T_idx) / vol(T_other)"""
        return self.geometry(idx).volume / self.geometry(other).volume

    def face_reflection(self, src: int, dst: int) -> FaceReflection:
        key = (src, dst)
        if key not in self._face_reflection:
            self._face_reflection[key] = face_reflection(
                self.c.cells[src], self.c.cells[dst], self.c.coords
            )
        return self._face_reflection[key]

    def ratios(self) -> MeshRatios:
        if self._ratios is None:
            self._ratios = mesh_ratios(self.c)
        return self._ratios

    def star_reflection(self, s: Sequence[int], cell: int) -> PiecewiseAffineMap:
        key = (tuple(s), cell)
        if key not in self._reflection:
            self._reflection[key] = build_star_reflection(self.c, s, cell)
        return self._reflection[key]

    def star_contraction(self, s: Sequence[int], cell: int) -> PiecewiseAffineMap:
        key = (tuple(s), cell)
        if key not in self._contraction:
            pw, _ = build_star_contraction(self.c, s, cell)
            self._contraction[key] = pw
        return self._contraction[key]

    def transfer(
        self, kind: str, s: Sequence[int], cell: int, k: int, p: float
    ) -> TransferConstants:
        """
        star 사상의 전달 상수

        Args:
            kind: "reflection" (Xi_1) | "contraction" (Xi_2)
        """
        key = (kind, tuple(s), cell, k, p)
        if key not in self._transfer:
            if kind == "reflection":
                pw = self.star_reflection(s, cell)
            elif kind == "contraction":
                pw = self.star_contraction(s, cell)
            else:
                raise ValueError(f"unknown map kind: {kind}")
            self._transfer[key] = transfer_constants(pw, k, p)
        return self._transfer[key]
