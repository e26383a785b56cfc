"""
균일 세분

2D: 변 중점으로 4 분할, 3D: 꼭짓점 4 개 + 가운데 octahedron 을 가장 짧은 대각선으로 4 분할.
"""
from typing import Dict, List, Tuple

import numpy as np

from app.exceptions import UnsupportedDimension
from app.mesh_core.complex import SimplicialComplex, build_complex
from app.utils.logger import log


class _Midpoints:
    """변 -> 새 정점 id"""

    def __init__(self, coords: np.ndarray):
        self.coords: List[np.ndarray] = list(coords)
        self.index: Dict[Tuple[int, int], int] = {}

    def __call__(self, a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        if key not in self.index:
            self.index[key] = len(self.coords)
            self.coords.append(0.5 * (self.coords[a] + self.coords[b]))
        return self.index[key]


def _split_triangle(cell: Tuple[int, ...], mid: _Midpoints) -> List[Tuple[int, ...]]:
    a, b, c = cell
    ab, ac, bc = mid(a, b), mid(a, c), mid(b, c)
    return [(a, ab, ac), (b, ab, bc), (c, ac, bc), (ab, ac, bc)]


def _split_tetrahedron(cell: Tuple[int, ...], mid: _Midpoints) -> List[Tuple[int, ...]]:
    v0, v1, v2, v3 = cell
    m01, m02, m03 = mid(v0, v1), mid(v0, v2), mid(v0, v3)
    m12, m13, m23 = mid(v1, v2), mid(v1, v3), mid(v2, v3)
    children = [
        (v0, m01, m02, m03),
        (v1, m01, m12, m13),
        (v2, m02, m12, m23),
        (v3, m03, m13, m23),
    ]
    # octahedron 의 마주보는 꼭짓점 쌍
    pairs = [(m01, m23), (m02, m13), (m03, m12)]
    lengths = [np.linalg.norm(mid.coords[a] - mid.coords[b]) for a, b in pairs]
    i = int(np.argmin(lengths))
    d1, d2 = pairs[i]
    (b1, b2), (c1, c2) = [pairs[j] for j in range(3) if j != i]
    ring = [b1, c1, b2, c2]
    for t in range(4):
        children.append((d1, d2, ring[t], ring[(t + 1) % 4]))
    return children


def uniform_refine(c: SimplicialComplex) -> SimplicialComplex:
    """
    한 번 균일 세분

    Returns:
        셀 수가 2D 에서 4 배, 3D 에서 8 배인 complex

    Raises:
        UnsupportedDimension: n 이 2, 3 이 아님
    """
    if c.n == 2:
        split = _split_triangle
    elif c.n == 3:
        split = _split_tetrahedron
    else:
        raise UnsupportedDimension(f"uniform refinement needs n in (2, 3), got {c.n}", {"n": c.n})

    mid = _Midpoints(c.coords)
    cells: List[Tuple[int, ...]] = []
    for cell in c.cells:
        cells.extend(split(cell, mid))
    refined = build_complex(c.n, np.array(mid.coords), cells, check_overlap=False)
    log.debug(f"uniform_refine: {c.num_cells} -> {refined.num_cells} cells")
    return refined


def refine_times(c: SimplicialComplex, times: int) -> SimplicialComplex:
    for _ in range(times):
        c = uniform_refine(c)
    return c
