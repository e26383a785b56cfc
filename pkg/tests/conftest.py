import math

import numpy as np
import pytest

from app.interface.examples import example_mesh
from app.mesh_core.complex import build_complex


@pytest.fixture
def square2():
    """단위 정사각형 (대각선 0-2)"""
    return example_mesh("square2")


@pytest.fixture
def lshape4():
    """L 자 영역 4 분할"""
    return example_mesh("Lshape4")


@pytest.fixture
def slit5():
    """slit 영역 5 분할 (slit 정점 두 벌)"""
    return example_mesh("slit5")


@pytest.fixture
def annulus8():
    """고리 영역 (ball 아님)"""
    return example_mesh("annulus8")


@pytest.fixture
def hexagon_fan():
    """내부 정점 하나를 가진 정육각형"""
    return example_mesh("hexagonFan")


@pytest.fixture
def ref_triangle():
    return example_mesh("refTriangle")


@pytest.fixture
def ref_tet():
    return example_mesh("refTetrahedron")


@pytest.fixture
def cube5():
    """정육면체 5 분할"""
    return example_mesh("cube5")


@pytest.fixture
def cube_kuhn():
    return example_mesh("cubeKuhn")


@pytest.fixture
def edge_star_3d():
    """
    내부 모서리 (0,1) 주위 정사면체 6 개

    z 축 위 두 정점과 xy 평면 정육각형
    """
    coords = [[0.0, 0.0, -1.0], [0.0, 0.0, 1.0]]
    coords += [[math.cos(a), math.sin(a), 0.0] for a in np.arange(6) * math.pi / 3.0]
    cells = [[0, 1, 2 + i, 2 + (i + 1) % 6] for i in range(6)]
    return build_complex(3, coords, cells)


@pytest.fixture
def two_triangles_same_side():
    """공유 모서리 같은 쪽에 놓인 두 삼각형 (실현 불가)"""
    return {
        "n": 2,
        "coords": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.2, 0.3]],
        "cells": [[0, 1, 2], [0, 1, 3]],
    }
