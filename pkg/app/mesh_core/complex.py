"""
SimplicialComplex 와 build_complex

셀은 오름차순 정점 tuple 로 저장하고, 방향은 별도 부호 배열(orientation)로 보관합니다.
구성 후에는 불변 객체입니다.
"""
from collections import defaultdict
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Set

import numpy as np

from app.config import settings
from app.exceptions import (
    DegenerateCell,
    DuplicateCell,
    IndexOutOfRange,
    NonRealizable,
    SimplexNotFound,
)
from app.models.mesh import Simplex
from app.utils.linalg import barycentric_coordinates, diameter, overlap_volume, signed_volume
from app.utils.logger import log


def make_simplex(ids: Iterable[int]) -> Simplex:
    """정점 id 를 오름차순 tuple 로 정규화 (중복 불가)"""
    s = tuple(sorted(int(i) for i in ids))
    if len(set(s)) != len(s):
        raise DegenerateCell(f"repeated vertex in simplex {s}")
    return s


class SimplicialComplex:
    """
    n 차원 simplicial complex

    Attributes:
        n: top 차원
        coords: (V, n) 정점 좌표
        cells: n-셀 목록 (입력 순서 유지, 인덱스가 셀 id)
        skeleta: 차원 d 별 정렬된 d-simplex 목록
        cofaces: (n-1)-face -> 포함하는 셀 인덱스 목록
        orientation: 셀별 det 부호
    """

    def __init__(
        self,
        n: int,
        coords: np.ndarray,
        cells: List[Simplex],
        orientation: np.ndarray,
    ):
        self.n = n
        self.coords = coords
        self.cells = cells
        self.orientation = orientation
        self.cell_index: Dict[Simplex, int] = {cell: i for i, cell in enumerate(cells)}

        skeleta: List[Set[Simplex]] = [set() for _ in range(n + 1)]
        for cell in cells:
            for d in range(n + 1):
                skeleta[d].update(combinations(cell, d + 1))
        self.skeleta: List[List[Simplex]] = [sorted(level) for level in skeleta]
        self.skeleton_index: List[Dict[Simplex, int]] = [
            {s: i for i, s in enumerate(level)} for level in self.skeleta
        ]

        self.cofaces: Dict[Simplex, List[int]] = defaultdict(list)
        self._vertex_cells: Dict[int, List[int]] = defaultdict(list)
        for idx, cell in enumerate(cells):
            for v in cell:
                self._vertex_cells[v].append(idx)
            for face in combinations(cell, n):
                self.cofaces[face].append(idx)
        self.cofaces = dict(self.cofaces)

    # ------------------------------------------------------------ queries
    @property
    def num_cells(self) -> int:
        return len(self.cells)

    @property
    def num_vertices(self) -> int:
        return len(self.skeleta[0])

    def points(self, s: Sequence[int]) -> np.ndarray:
        """simplex 꼭짓점 좌표 (len(s), n)"""
        return self.coords[list(s)]

    def cell_points(self, idx: int) -> np.ndarray:
        return self.coords[list(self.cells[idx])]

    def contains(self, s: Sequence[int]) -> bool:
        s = tuple(sorted(s))
        d = len(s) - 1
        return 0 <= d <= self.n and s in self.skeleton_index[d]

    def require(self, s: Sequence[int]) -> Simplex:
        """s 를 정규화하고 complex 에 없으면 SimplexNotFound"""
        s = tuple(sorted(int(v) for v in s))
        if not self.contains(s):
            raise SimplexNotFound(f"simplex {s} not in complex", {"simplex": list(s)})
        return s

    def cells_containing(self, s: Sequence[int]) -> List[int]:
        """s 를 포함하는 n-셀 인덱스 (오름차순)"""
        s = tuple(s)
        if not s:
            return list(range(self.num_cells))
        candidates = set(self._vertex_cells.get(s[0], []))
        for v in s[1:]:
            candidates &= set(self._vertex_cells.get(v, []))
        return sorted(candidates)

    def cells_at_vertex(self, v: int) -> List[int]:
        return list(self._vertex_cells.get(v, []))

    def face_neighbors(self, idx: int) -> List[int]:
        """(n-1)-face 를 공유하는 셀"""
        out = []
        for face in combinations(self.cells[idx], self.n):
            out.extend(j for j in self.cofaces.get(face, []) if j != idx)
        return sorted(out)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(level) for d, level in enumerate(self.skeleta))

    def counts(self) -> List[int]:
        """차원별 simplex 수"""
        return [len(level) for level in self.skeleta]

    def sub_complex(self, cell_ids: Sequence[int]) -> "SimplicialComplex":
        """셀 부분집합의 closure (정점 id 와 좌표 배열은 공유)"""
        cells = [self.cells[i] for i in cell_ids]
        return SimplicialComplex(self.n, self.coords, cells, self.orientation[list(cell_ids)])

    def scaled(self, factor: float) -> "SimplicialComplex":
        """좌표를 factor 배 한 사본"""
        return SimplicialComplex(self.n, self.coords * factor, list(self.cells), self.orientation)

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self.n}, counts={self.counts()})"


def _check_face_pair(c: SimplicialComplex, i: int, j: int, shared: Set[int]) -> None:
    """face 공유 쌍: 대면 꼭짓점이 공유 face 양쪽에 있어야 함"""
    (opp_j,) = set(c.cells[j]) - shared
    cell_i = c.cells[i]
    (opp_i,) = set(cell_i) - shared
    lam = barycentric_coordinates(c.cell_points(i), c.coords[opp_j])
    lam_opp = lam[cell_i.index(opp_i)]
    if lam_opp >= -1e-12:
        raise NonRealizable(
            f"cells {c.cells[i]} and {c.cells[j]} lie on the same side of their shared face",
            {"cells": [list(c.cells[i]), list(c.cells[j])]},
        )


def _check_overlap_pair(c: SimplicialComplex, i: int, j: int, volumes: np.ndarray, tol: float):
    vol = overlap_volume(c.cell_points(i), c.cell_points(j))
    if vol > tol * min(volumes[i], volumes[j]):
        raise NonRealizable(
            f"cells {c.cells[i]} and {c.cells[j]} overlap (volume {vol:.3e})",
            {"cells": [list(c.cells[i]), list(c.cells[j])], "overlap": vol},
        )


def build_complex(
    n: int,
    coords: Sequence[Sequence[float]],
    cells: Sequence[Sequence[int]],
    check_overlap: bool = True,
    all_pairs: Optional[bool] = None,
) -> SimplicialComplex:
    """
    좌표와 n-셀로 complex 구성 및 검증

    Args:
        n: 차원
        coords: V 개의 길이 n 좌표
        cells: n+1 개 정점 id 의 셀 목록
        check_overlap: 기하 실현 가능성 검사 여부 (세분 메쉬는 생략)
        all_pairs: 모든 셀 쌍 겹침 검사 (기본: settings.all_pairs_overlap_check)

    Returns:
        SimplicialComplex
    """
    coords_arr = np.asarray(coords, dtype=float)
    if coords_arr.ndim != 2 or coords_arr.shape[1] != n:
        raise IndexOutOfRange(f"coordinates must have shape (V, {n})")
    if not np.all(np.isfinite(coords_arr)):
        raise DegenerateCell("non-finite vertex coordinates")
    num_vertices = coords_arr.shape[0]

    normalized: List[Simplex] = []
    seen: Dict[Simplex, int] = {}
    for idx, raw in enumerate(cells):
        if len(raw) != n + 1:
            raise DegenerateCell(f"cell {idx} has {len(raw)} vertices, expected {n + 1}")
        for v in raw:
            if not 0 <= int(v) < num_vertices:
                raise IndexOutOfRange(f"cell {idx} references vertex {v}", {"cell": idx})
        cell = make_simplex(raw)
        if cell in seen:
            raise DuplicateCell(f"cell {cell} repeated (cells {seen[cell]} and {idx})")
        seen[cell] = idx
        normalized.append(cell)

    orientation = np.zeros(len(normalized))
    volumes = np.zeros(len(normalized))
    for idx, cell in enumerate(normalized):
        pts = coords_arr[list(cell)]
        vol = signed_volume(pts)
        if abs(vol) <= 1e-12 * diameter(pts) ** n:
            raise DegenerateCell(f"cell {cell} has zero volume", {"cell": list(cell)})
        orientation[idx] = np.sign(vol)
        volumes[idx] = abs(vol)

    c = SimplicialComplex(n, coords_arr, normalized, orientation)

    unused = num_vertices - c.num_vertices
    if unused:
        log.warning(f"셀에 속하지 않는 정점 {unused}개 무시")
    if n >= 4:
        log.warning(f"n={n}: manifold 판정은 조합적 필요조건만 검사합니다")

    if check_overlap:
        tol = settings.volume_overlap_tol
        checked: Set[tuple] = set()
        for face, owners in c.cofaces.items():
            for a, b in combinations(owners, 2):
                _check_face_pair(c, a, b, set(face))
                checked.add((a, b))
        use_all = settings.all_pairs_overlap_check if all_pairs is None else all_pairs
        if use_all:
            pairs: Iterable[tuple] = combinations(range(c.num_cells), 2)
        else:
            vertex_pairs = set()
            for owners in c._vertex_cells.values():
                vertex_pairs.update(combinations(sorted(owners), 2))
            pairs = sorted(vertex_pairs)
        for a, b in pairs:
            if (a, b) not in checked:
                _check_overlap_pair(c, a, b, volumes, tol)

    log.debug(f"complex 구성 완료: n={n}, counts={c.counts()}")
    return c
