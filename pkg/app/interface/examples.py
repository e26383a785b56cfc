"""
내장 예제 메쉬

모든 메쉬는 코드로 생성하며 같은 이름은 항상 같은 좌표와 셀을 돌려줍니다.
slit 메쉬는 slit 위 정점을 두 벌 두어 조합적으로 2-ball 이 되게 합니다.
"""
from itertools import permutations
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from app.exceptions import UnknownExample
from app.mesh_core.complex import SimplicialComplex, build_complex

Point = Tuple[float, ...]

# annulus8 의 띠 순서 (단계 6 에서 isolated vertex 로 실패)
ANNULUS_STRIP_ORDER = [0, 1, 2, 3, 4, 5, 6, 7]


class _MeshBuilder:
    """좌표로 정점을 합치며 셀을 모음"""

    def __init__(self, n: int):
        self.n = n
        self.coords: List[Point] = []
        self.index: Dict[Point, int] = {}
        self.cells: List[List[int]] = []

    def vertex(self, point: Sequence[float]) -> int:
        key = tuple(round(float(x), 12) + 0.0 for x in point)
        if key not in self.index:
            self.index[key] = len(self.coords)
            self.coords.append(key)
        return self.index[key]

    def add(self, *points: Sequence[float]) -> None:
        self.cells.append([self.vertex(p) for p in points])

    def build(self, check_overlap: bool = True) -> SimplicialComplex:
        return build_complex(self.n, self.coords, self.cells, check_overlap=check_overlap)


def square2() -> SimplicialComplex:
    """단위 정사각형, 대각선 하나로 2 분할"""
    coords = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    return build_complex(2, coords, [[0, 1, 2], [0, 2, 3]])


def lshape4() -> SimplicialComplex:
    """(-1,1)^2 \\ [0,1)^2, 오목 꼭짓점 부채꼴 4 분할"""
    coords = [[-1, -1], [1, -1], [1, 0], [0, 0], [0, 1], [-1, 1]]
    return build_complex(2, coords, [[0, 1, 3], [1, 2, 3], [0, 3, 5], [3, 4, 5]])


# slit 공통 정점: A B C_low D E F C_up (C 는 slit 끝 (1,0) 의 두 벌)
_SLIT_COORDS = [[-1, -1], [1, -1], [1, 0], [0, 0], [1, 1], [-1, 1], [1, 0]]


def slit5() -> SimplicialComplex:
    """(-1,1)^2 \\ [0,1)x{0}, 원점 주위 5 분할"""
    cells = [[0, 1, 3], [1, 2, 3], [6, 4, 3], [4, 5, 3], [5, 0, 3]]
    return build_complex(2, _SLIT_COORDS, cells, check_overlap=False)


def slit8a() -> SimplicialComplex:
    """8 개 삼각형이 모두 원점에 닿는 slit 분할"""
    coords = _SLIT_COORDS + [[0, -1], [-1, 0], [0, 1]]
    U, L, O = 7, 8, 9
    cells = [
        [0, U, 3], [U, 1, 3], [1, 2, 3], [6, 4, 3],
        [4, O, 3], [O, 5, 3], [5, L, 3], [L, 0, 3],
    ]
    return build_complex(2, coords, cells, check_overlap=False)


def slit8b() -> SimplicialComplex:
    """8 개 중 4 개만 원점에 닿는 slit 분할"""
    coords = _SLIT_COORDS + [[0, -1], [-1, 0], [0, 1]]
    U, L, O = 7, 8, 9
    cells = [
        [0, U, L], [U, 1, 2], [6, 4, O], [5, L, O],
        [U, 3, L], [L, 3, O], [U, 2, 3], [O, 3, 6],
    ]
    return build_complex(2, coords, cells, check_overlap=False)


def annulus8() -> SimplicialComplex:
    """정사각 고리: 바깥 0..3, 안쪽 4..7, 띠 순서 셀 8 개 (Euler 0)"""
    coords = [[0, 0], [3, 0], [3, 3], [0, 3], [1, 1], [2, 1], [2, 2], [1, 2]]
    cells = [
        [0, 1, 5], [1, 5, 6], [1, 2, 6], [2, 6, 7],
        [2, 3, 7], [3, 4, 7], [0, 3, 4], [0, 4, 5],
    ]
    return build_complex(2, coords, cells)


def hexagon_fan() -> SimplicialComplex:
    """정육각형, 중심 정점의 star 6 분할"""
    angles = np.arange(6) * np.pi / 3.0
    coords = [[0.0, 0.0]] + [[float(np.cos(a)), float(np.sin(a))] for a in angles]
    cells = [[0, 1 + i, 1 + (i + 1) % 6] for i in range(6)]
    return build_complex(2, coords, cells)


def reference_triangle() -> SimplicialComplex:
    return build_complex(2, [[0, 0], [1, 0], [0, 1]], [[0, 1, 2]])


def reference_tetrahedron() -> SimplicialComplex:
    coords = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    return build_complex(3, coords, [[0, 1, 2, 3]])


def _cube_vertex(v: int) -> List[float]:
    """v = x + 2y + 4z"""
    return [float(v & 1), float((v >> 1) & 1), float((v >> 2) & 1)]


CUBE5_CELLS = [[0, 3, 5, 6], [0, 1, 3, 5], [0, 2, 3, 6], [0, 4, 5, 6], [3, 5, 6, 7]]


def _kuhn_cells() -> List[List[int]]:
    cells = []
    for a, b, _ in permutations((1, 2, 4)):
        cells.append([0, a, a + b, 7])
    return cells


def cube5() -> SimplicialComplex:
    """단위 정육면체, 가운데 정사면체 + 모서리 4 개"""
    return build_complex(3, [_cube_vertex(v) for v in range(8)], CUBE5_CELLS)


def cube_kuhn() -> SimplicialComplex:
    """Kuhn 분할: 0 -> 7 대각선을 공유하는 6 개 정사면체"""
    return build_complex(3, [_cube_vertex(v) for v in range(8)], _kuhn_cells())


def _crossed_bricks(cells: List[List[int]]) -> SimplicialComplex:
    """
    가운데 (-1,0)^3 와 세 축 방향 이웃 정육면체

    이웃은 공유 평면에 대한 거울상이므로 face 대각선이 맞물립니다.
    """
    builder = _MeshBuilder(3)
    signs = [(-1, -1, -1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1)]
    for sign in signs:
        for cell in cells:
            builder.add(*[[s * x for s, x in zip(sign, _cube_vertex(v))] for v in cell])
    return builder.build()


def crossed_bricks5() -> SimplicialComplex:
    return _crossed_bricks(CUBE5_CELLS)


def crossed_bricks_kuhn() -> SimplicialComplex:
    return _crossed_bricks(_kuhn_cells())


def _embed(axis: int, value: float, u: float, v: float) -> List[float]:
    point = [u, v]
    point.insert(axis, value)
    return point


def fichera24() -> SimplicialComplex:
    """
    (-1,1)^3 \\ [0,1)^3

    경계를 삼각형 24 개로 나누고 (-1/2,-1/2,-1/2) 에서 cone 을 만듭니다.
    """
    full = [[(-1, -1), (1, -1), (1, 1)], [(-1, -1), (1, 1), (-1, 1)]]
    lface = [
        [(-1, -1), (1, -1), (0, 0)],
        [(1, -1), (1, 0), (0, 0)],
        [(-1, -1), (0, 0), (-1, 1)],
        [(0, 0), (0, 1), (-1, 1)],
    ]
    notch = [[(0, 0), (1, 0), (1, 1)], [(0, 0), (1, 1), (0, 1)]]
    apex = [-0.5, -0.5, -0.5]

    builder = _MeshBuilder(3)
    for axis in range(3):
        for value, triangles in ((-1.0, full), (1.0, lface), (0.0, notch)):
            for tri in triangles:
                builder.add(apex, *[_embed(axis, value, u, v) for u, v in tri])
    return builder.build()


EXAMPLES: Dict[str, Callable[[], SimplicialComplex]] = {
    "square2": square2,
    "Lshape4": lshape4,
    "slit5": slit5,
    "slit8a": slit8a,
    "slit8b": slit8b,
    "cube5": cube5,
    "cubeKuhn": cube_kuhn,
    "crossedBricks5": crossed_bricks5,
    "crossedBricksKuhn": crossed_bricks_kuhn,
    "fichera24": fichera24,
    "annulus8": annulus8,
    "hexagonFan": hexagon_fan,
    "refTriangle": reference_triangle,
    "refTetrahedron": reference_tetrahedron,
}

# 표에 쓰는 2-ball / 3-ball 예제
TABLE_2D = ["square2", "Lshape4", "slit5", "slit8a", "slit8b"]
TABLE_3D = ["cube5", "cubeKuhn", "crossedBricks5", "crossedBricksKuhn", "fichera24"]


def example_names() -> List[str]:
    return list(EXAMPLES)


def example_mesh(name: str) -> SimplicialComplex:
    """
    이름으로 예제 메쉬 생성

    Raises:
        UnknownExample: 등록되지 않은 이름
    """
    if name not in EXAMPLES:
        raise UnknownExample(f"unknown example mesh: {name}", {"available": example_names()})
    return EXAMPLES[name]()
