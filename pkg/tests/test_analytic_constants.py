import math

import numpy as np
import pytest
from pydantic import ValidationError

from app.analytic_constants import ConvexConstants, LocalConstants
from app.exceptions import (
    DegreeOutOfRange,
    ExponentOutOfRange,
    ModeExponentMismatch,
    NotFaceNeighbors,
)
from app.models.constants import ConstantValue, LebesgueExponent
from app.simplex_geometry.geometry import SimplexGeometryCalculator


@pytest.fixture
def ref_triangle_geometry():
    return SimplexGeometryCalculator.geometry_of_points(
        SimplexGeometryCalculator.reference_simplex(2)
    )


class TestConvexConstants:
    """convex 영역 상수 테스트"""

    def test_efnt_hilbert(self):
        """p=2 이면 1/pi"""
        assert ConvexConstants.efnt_constant(2.0) == pytest.approx(1 / math.pi)

    def test_efnt_limits(self):
        """p -> 1 에서 1/2 로 연속"""
        assert ConvexConstants.efnt_constant(1.0 + 1e-9) == pytest.approx(0.5, abs=1e-6)

    @pytest.mark.parametrize("p", [1.0, math.inf, 0.5])
    def test_efnt_range(self, p):
        with pytest.raises(ExponentOutOfRange):
            ConvexConstants.efnt_constant(p)

    def test_gradient_endpoints(self):
        """p=1: delta/2, p=inf: delta"""
        assert ConvexConstants.convex_pf_gradient(1.0, 3.0).value == pytest.approx(1.5)
        assert ConvexConstants.convex_pf_gradient(math.inf, 3.0).value == pytest.approx(3.0)
        value = ConvexConstants.convex_pf_gradient(2.0, 3.0)
        assert value.value == pytest.approx(3.0 / math.pi)
        assert value.formula_id == "convex.gradient.efnt"
        with pytest.raises(ExponentOutOfRange):
            ConvexConstants.convex_pf_gradient(0.9, 1.0)

    @pytest.mark.parametrize(
        "n,k,expected",
        [(2, 1, 1.0), (2, 2, 0.5), (3, 3, 1 / 3), (3, 2, 7 / 12)],
    )
    def test_poincare_op_constant(self, n, k, expected):
        assert ConvexConstants.poincare_op_constant(n, k) == pytest.approx(expected)

    @pytest.mark.parametrize(
        "n,k,expected",
        [(2, 1, 0.5), (3, 1, 1 / 3), (3, 3, 7 / 6), (2, 2, 1.0)],
    )
    def test_bogovskii_op_constant(self, n, k, expected):
        assert ConvexConstants.bogovskii_op_constant(n, k) == pytest.approx(expected)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_operator_constant_bounds(self, n):
        """C_P(n,k) <= 2^{n-k}, C_B(n,k) <= 2^{k-1}"""
        for k in range(1, n + 1):
            assert ConvexConstants.poincare_op_constant(n, k) <= 2 ** (n - k)
            assert ConvexConstants.bogovskii_op_constant(n, k) <= 2 ** (k - 1)

    def test_degree_range(self):
        with pytest.raises(DegreeOutOfRange):
            ConvexConstants.poincare_op_constant(2, 0)
        with pytest.raises(DegreeOutOfRange):
            ConvexConstants.bogovskii_op_constant(2, 3)

    @pytest.mark.parametrize(
        "n,expected", [(1, 2.0), (2, 2 * math.pi), (3, 4 * math.pi), (4, 2 * math.pi ** 2)]
    )
    def test_sphere_area(self, n, expected):
        assert ConvexConstants.sphere_area(n) == pytest.approx(expected)

    def test_kform_constant(self):
        """기준 삼각형 k=1: C_P * 2 pi * delta^3 / vol"""
        value = ConvexConstants.convex_pf_kform(2, 1, 2.0, math.sqrt(2), 0.5)
        assert value.value == pytest.approx(8 * math.sqrt(2) * math.pi)
        assert "p-independent" in value.assumptions
        bog = ConvexConstants.convex_pf_kform(2, 1, 3.0, math.sqrt(2), 0.5, variant="bogovskii")
        assert bog.value == pytest.approx(value.value / 2)
        with pytest.raises(ValueError):
            ConvexConstants.convex_pf_kform(2, 1, 2.0, 1.0, 1.0, variant="other")

    def test_auxiliary_factors(self):
        assert ConvexConstants.chua_wheeden_bound(2.0) == pytest.approx(2.0)
        assert ConvexConstants.pf_vs_poincare_factor(2.0) == pytest.approx(1.0)
        assert ConvexConstants.pf_vs_poincare_factor(1.0) == pytest.approx(2.0)
        assert ConvexConstants.pf_vs_poincare_factor(math.inf) == pytest.approx(2.0)

    def test_hilbert_div(self):
        value = ConvexConstants.hilbert_div_constant(1.25)
        assert value.value == 1.25
        assert "p=2 only" in value.assumptions


class TestLocalConstants:
    """국소 상수 테스트"""

    def test_mixed_gradient_hilbert(self, ref_triangle_geometry):
        """p=2: delta/pi, generic 값 p^{-1/p} delta 를 함께 기록"""
        value = LocalConstants.mixed_bc_gradient_constant(ref_triangle_geometry, 2.0)
        assert value.value == pytest.approx(math.sqrt(2) / math.pi)
        assert value.alternatives["generic"] == pytest.approx(1.0)

    def test_mixed_gradient_generic(self, ref_triangle_geometry):
        value = LocalConstants.mixed_bc_gradient_constant(ref_triangle_geometry, 3.0)
        assert value.value == pytest.approx(3 ** (-1 / 3) * math.sqrt(2))
        unimproved = LocalConstants.mixed_bc_gradient_constant(
            ref_triangle_geometry, 2.0, improved=False
        )
        assert unimproved.value == pytest.approx(1.0)
        inf = LocalConstants.mixed_bc_gradient_constant(ref_triangle_geometry, math.inf)
        assert inf.value == pytest.approx(math.sqrt(2))

    def test_mixed_kform_hilbert_simple(self, ref_triangle_geometry):
        value = LocalConstants.mixed_bc_kform_constant(
            ref_triangle_geometry, 0, 1, 2.0, mode="hilbert_simple"
        )
        assert value.value == pytest.approx(2 * math.sqrt(2) / math.pi)
        assert value.conjecture

    def test_mixed_kform_hilbert_simple_needs_p2(self, ref_triangle_geometry):
        with pytest.raises(ModeExponentMismatch):
            LocalConstants.mixed_bc_kform_constant(
                ref_triangle_geometry, 0, 1, 3.0, mode="hilbert_simple"
            )

    def test_mixed_kform_proved(self, ref_triangle_geometry):
        """k=0, ell=0: 2! * 2 * C_B(2,1) * 2 pi * 1 * sqrt2 * sqrt2 = 8 pi"""
        value = LocalConstants.mixed_bc_kform_constant(ref_triangle_geometry, 0, 0, 2.0)
        assert value.value == pytest.approx(8 * math.pi)
        assert "kappa_M power clamped to 1" in value.assumptions
        assert not value.conjecture

    def test_mixed_kform_proved_grows_with_ell(self, ref_triangle_geometry):
        one = LocalConstants.mixed_bc_kform_constant(ref_triangle_geometry, 0, 1, 2.0)
        two = LocalConstants.mixed_bc_kform_constant(ref_triangle_geometry, 1, 1, 2.0)
        assert two.value == pytest.approx(2 * one.value)

    @pytest.mark.parametrize("ell,k", [(2, 0), (-1, 0), (0, 2), (0, -1)])
    def test_mixed_kform_ranges(self, ref_triangle_geometry, ell, k):
        """범위 밖 ell / k 는 도메인 예외"""
        with pytest.raises(DegreeOutOfRange) as exc_info:
            LocalConstants.mixed_bc_kform_constant(ref_triangle_geometry, ell, k, 2.0)
        assert exc_info.value.details["n"] == 2

    def test_face_patch_convex(self, square2):
        """정사각형: convex 합집합이므로 delta/pi"""
        value = LocalConstants.face_patch_constant(
            square2.cells[0], square2.cells[1], square2.coords, 2.0
        )
        assert value.formula_id == "face_patch.convex"
        assert value.value == pytest.approx(math.sqrt(2) / math.pi)
        assert set(value.alternatives) == {"sharp", "lemma"}

    def test_face_patch_nonconvex(self):
        """오목한 사각형은 기준 patch 경유 상수"""
        coords = np.array([[0.0, 0.0], [0.0, 2.0], [1.0, 1.0], [-1.0, -2.0]])
        value = LocalConstants.face_patch_constant((0, 1, 2), (0, 1, 3), coords, 2.0)
        assert value.formula_id == "face_patch.sharp"
        assert value.value == pytest.approx(value.alternatives["sharp"])
        assert value.value > 0

    def test_face_patch_not_neighbors(self, annulus8):
        with pytest.raises(NotFaceNeighbors):
            LocalConstants.face_patch_constant(
                annulus8.cells[0], annulus8.cells[4], annulus8.coords, 2.0
            )


class TestConstantModels:
    """상수 모델 검증"""

    def test_negative_constant_rejected(self):
        with pytest.raises(ValidationError):
            ConstantValue(value=-1.0, formula_id="x")

    def test_scaled(self):
        value = ConstantValue(value=2.0, formula_id="a").scaled(1.5, "b")
        assert value.value == 3.0
        assert value.formula_id == "b"

    def test_conjugate_exponent(self):
        assert LebesgueExponent(p=2.0).q == 2.0
        assert LebesgueExponent(p=1.0).q == math.inf
        assert LebesgueExponent(p=math.inf).label == "inf"
        with pytest.raises(ValidationError):
            LebesgueExponent(p=0.5)
