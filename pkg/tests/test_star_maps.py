import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from app.exceptions import EmptyComplement, NotInteriorSimplex, SimplexNotFound
from app.models.maps import PieceKind
from app.star_maps import (
    build_star_contraction,
    build_star_reflection,
    contraction_singular_values,
    star_inradius,
    theta_singular_values,
    transfer_constants,
    verify_piecewise_map,
)

rho_values = st.floats(min_value=0.01, max_value=1.0)
tan_values = st.floats(min_value=0.0, max_value=20.0)


class TestStarInradius:
    """star-shaped 반지름 테스트"""

    def test_hexagon_center(self, hexagon_fan):
        """정육각형 중심: 정삼각형 높이 sqrt3/2"""
        info = star_inradius(hexagon_fan, (0,))
        assert info.ell == 0
        assert info.radius == pytest.approx(math.sqrt(3) / 2)
        assert info.center == pytest.approx([0.0, 0.0])
        assert info.verified

    def test_interior_edge_3d(self, edge_star_3d):
        info = star_inradius(edge_star_3d, (0, 1))
        assert info.ell == 1
        assert info.radius == pytest.approx(info.min_height / 2)
        assert info.center == pytest.approx([0.0, 0.0, 0.0])

    def test_boundary_vertex(self, hexagon_fan):
        with pytest.raises(NotInteriorSimplex):
            star_inradius(hexagon_fan, (1,))


class TestStarReflection:
    """star reflection 테스트"""

    def test_hexagon_pieces(self, hexagon_fan):
        """중심 정점, 셀 0: 조각 2 개, rho = 1"""
        pw = build_star_reflection(hexagon_fan, (0,), 0)
        assert len(pw) == 2
        for piece in pw.pieces:
            assert piece.meta.kind == PieceKind.THETA
            assert piece.meta.rho == pytest.approx(1.0)
            assert abs(piece.map.det) == pytest.approx(1.0)

    def test_hexagon_verifies(self, hexagon_fan):
        report = verify_piecewise_map(build_star_reflection(hexagon_fan, (0,), 0))
        assert report.passed, report.failures
        assert all(report.checks.values())

    def test_pivot_is_opposite_midpoint(self, hexagon_fan):
        """rho = 1 이면 z_{S'} 는 맞은편 셀 모서리 중점으로"""
        pw = build_star_reflection(hexagon_fan, (0,), 0)
        midpoint = hexagon_fan.coords[[1, 2]].mean(axis=0)
        assert pw.apply(midpoint) == pytest.approx(hexagon_fan.coords[[4, 5]].mean(axis=0))

    def test_face_reflection_case(self, square2):
        """ell = n-1 이면 face reflection 조각 하나"""
        pw = build_star_reflection(square2, (0, 2), 0)
        assert len(pw) == 1
        assert pw.pieces[0].meta.kind == PieceKind.FACE_REFLECTION
        assert verify_piecewise_map(pw).passed
        assert pw.apply(square2.coords[1]) == pytest.approx(square2.coords[3])

    def test_edge_star_3d_verifies(self, edge_star_3d):
        pw = build_star_reflection(edge_star_3d, (0, 1), 0)
        assert len(pw) == 4
        report = verify_piecewise_map(pw)
        assert report.passed, report.failures

    def test_perturbed_map_fails(self, hexagon_fan):
        """조각 하나를 밀면 연속성 검사 실패"""
        pw = build_star_reflection(hexagon_fan, (0,), 0).perturbed(0, np.array([0.1, 0.0]))
        report = verify_piecewise_map(pw)
        assert not report.passed
        assert not report.checks["continuity"]

    def test_empty_complement(self, square2):
        with pytest.raises(EmptyComplement):
            build_star_reflection(square2, (0, 1), 0)

    def test_boundary_simplex(self, hexagon_fan):
        with pytest.raises(NotInteriorSimplex):
            build_star_reflection(hexagon_fan, (1,), 0)

    def test_cell_outside_star(self, hexagon_fan):
        with pytest.raises(SimplexNotFound):
            build_star_reflection(hexagon_fan, (0, 1), 3)

    @hyp_settings(max_examples=50, deadline=None)
    @given(rho=rho_values, t=tan_values)
    def test_theta_singular_values(self, rho, t):
        """closed form = SVD of [[-rho, 0], [-(1+rho) t, 1]]"""
        sv = np.linalg.svd(np.array([[-rho, 0.0], [-(1 + rho) * t, 1.0]]), compute_uv=False)
        sigma_max, sigma_min = theta_singular_values(rho, t)
        assert sigma_max == pytest.approx(sv[0], rel=1e-9)
        assert sigma_min == pytest.approx(sv[1], rel=1e-7, abs=1e-12)
        assert sigma_max * sigma_min == pytest.approx(rho, rel=1e-7)


class TestStarContraction:
    """star contraction 테스트"""

    def test_hexagon_contraction(self, hexagon_fan):
        """det = rho/(1+rho) = 1/2, 중심의 맞은편 pivot 고정"""
        pw, transfer = build_star_contraction(hexagon_fan, (0,), 0)
        assert pw.identity_outside
        for piece in pw.pieces:
            assert piece.meta.kind == PieceKind.CONTRACTION
            assert abs(piece.map.det) == pytest.approx(0.5)
        assert pw.apply(hexagon_fan.coords[[1, 2]].mean(axis=0)) == pytest.approx([0.0, 0.0])
        assert transfer.forward == pytest.approx(math.sqrt(2))
        assert transfer.inverse == pytest.approx(1.0)

    def test_hexagon_contraction_verifies(self, hexagon_fan):
        pw, _ = build_star_contraction(hexagon_fan, (0,), 0)
        report = verify_piecewise_map(pw)
        assert report.passed, report.failures

    def test_identity_outside(self, hexagon_fan):
        pw, _ = build_star_contraction(hexagon_fan, (0,), 0)
        far = hexagon_fan.coords[4] * 0.9
        assert pw.apply(far) == pytest.approx(far)

    def test_edge_star_3d_contraction(self, edge_star_3d):
        pw, transfer = build_star_contraction(edge_star_3d, (0, 1), 0, k=1, p=2.0)
        assert verify_piecewise_map(pw).passed
        assert transfer.k == 1
        assert transfer.forward >= 1.0
        assert transfer.forward <= transfer.bound_forward * (1 + 1e-9)

    @hyp_settings(max_examples=50, deadline=None)
    @given(rho=rho_values, t=tan_values)
    def test_contraction_singular_values(self, rho, t):
        m = np.array([[rho / (1 + rho), 0.0], [-t / (1 + rho), 1.0]])
        sv = np.linalg.svd(m, compute_uv=False)
        sigma_max, sigma_min = contraction_singular_values(rho, t)
        assert sigma_max == pytest.approx(sv[0], rel=1e-9)
        assert sigma_min == pytest.approx(sv[1], rel=1e-7, abs=1e-12)


class TestTransferConstants:
    """pullback 전달 상수 테스트"""

    def test_reflection_transfer(self, hexagon_fan):
        """|det| = 1: k=0 과 k=n 상수 1, k=1 은 sigma_max"""
        pw = build_star_reflection(hexagon_fan, (0,), 0)
        assert transfer_constants(pw, 0, 2.0).forward == pytest.approx(1.0)
        assert transfer_constants(pw, 2, 2.0).forward == pytest.approx(1.0)
        sigma = max(piece.meta.sigma_max for piece in pw.pieces)
        one = transfer_constants(pw, 1, 2.0)
        assert one.forward == pytest.approx(sigma)
        assert one.forward <= one.bound_forward * (1 + 1e-9)
        assert one.inverse <= one.bound_inverse * (1 + 1e-9)

    def test_degree_range(self, hexagon_fan):
        pw = build_star_reflection(hexagon_fan, (0,), 0)
        with pytest.raises(ValueError):
            transfer_constants(pw, 3, 2.0)
