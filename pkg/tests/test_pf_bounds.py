import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from app.exceptions import (
    DegreeOutOfRange,
    ForwardReferenceViolation,
    NotShellableWithinBudget,
)
from app.models.estimate import (
    CombineRule,
    EstimateMode,
    RecursionGroup,
    RecursionRow,
    Strategy,
)
from app.pf_bounds import (
    MeshContext,
    combine_rows,
    estimate_on_shelling,
    estimate_pf,
    exterior_recursion_coeffs,
    gradient_pair,
    holder_aggregate,
    patch_factor,
    product_bound,
    unwrap,
)
from app.shelling_engine import verify_shelling

SQ_LOCAL = math.sqrt(2) / math.pi
SQ_GLUE = 2 * math.sqrt(3) / math.pi


class TestLedger:
    """unwrap 과 Hoelder 집계 테스트"""

    def test_holder_aggregate_p2_is_frobenius(self):
        assert holder_aggregate(np.eye(2), 2.0) == pytest.approx(math.sqrt(2))
        assert holder_aggregate(np.array([[1.0, 0.0], [1.0, 1.0]]), 2.0) == pytest.approx(
            math.sqrt(3)
        )

    def test_holder_aggregate_endpoints(self):
        """p=1: 행 최댓값의 합, p=inf: 행 합의 최댓값"""
        assert holder_aggregate(np.eye(2), 1.0) == pytest.approx(2.0)
        assert holder_aggregate(np.eye(2), math.inf) == pytest.approx(1.0)

    @pytest.mark.parametrize(
        "p,rule,expected",
        [
            (2.0, CombineRule.MINKOWSKI, [5.0, 0.0]),
            (2.0, CombineRule.L1, [7.0, 0.0]),
            (1.0, CombineRule.MINKOWSKI, [7.0, 0.0]),
            (math.inf, CombineRule.MINKOWSKI, [4.0, 0.0]),
        ],
    )
    def test_combine_rows(self, p, rule, expected):
        rows = np.array([[3.0, 0.0], [4.0, 0.0]])
        assert combine_rows(rows, p, rule) == pytest.approx(expected)

    def test_chain_doubles(self):
        """coef 2 인 chain: C[m][0] = 2^m, 지수 열거 없이 계산"""
        rows = [RecursionRow(index=0, a={0: 1.0})]
        for m in range(1, 12):
            rows.append(RecursionRow(
                index=m, groups=[RecursionGroup(coef=2.0, members=[m - 1])]
            ))
        ledger = unwrap(rows, 2.0)
        assert ledger.size == 12
        assert ledger.as_array()[:, 0] == pytest.approx([2.0 ** m for m in range(12)])

    def test_minkowski_below_l1(self):
        rows = [
            RecursionRow(index=0, a={0: 1.0}),
            RecursionRow(index=1, a={1: 1.0}),
            RecursionRow(index=2, groups=[RecursionGroup(coef=1.0, members=[0, 1])]),
        ]
        mink = unwrap(rows, 2.0, CombineRule.MINKOWSKI).as_array()
        l1 = unwrap(rows, 2.0, CombineRule.L1).as_array()
        assert mink[2] == pytest.approx([1.0, 1.0, 0.0])
        assert l1[2] == pytest.approx([1.0, 1.0, 0.0])
        assert np.all(mink <= l1 + 1e-15)

    def test_forward_reference_in_group(self):
        rows = [
            RecursionRow(index=0, a={0: 1.0}),
            RecursionRow(index=1, groups=[RecursionGroup(coef=1.0, members=[1])]),
        ]
        with pytest.raises(ForwardReferenceViolation):
            unwrap(rows, 2.0)

    def test_forward_reference_in_coefficients(self):
        rows = [RecursionRow(index=0, a={0: 1.0}), RecursionRow(index=1, a={2: 1.0})]
        with pytest.raises(ForwardReferenceViolation):
            unwrap(rows, 2.0)

    def test_index_mismatch(self):
        with pytest.raises(ForwardReferenceViolation):
            unwrap([RecursionRow(index=1, a={0: 1.0})], 2.0)

    @hyp_settings(max_examples=50, deadline=None)
    @given(
        coefs=st.lists(st.floats(min_value=0.0, max_value=3.0), min_size=1, max_size=8),
        p=st.sampled_from([1.0, 1.5, 2.0, 4.0, math.inf]),
    )
    def test_random_ledger_properties(self, coefs, p):
        """하삼각 비음수, Minkowski <= l1, 집계는 최대 원소 이상"""
        rows = [RecursionRow(index=0, a={0: 1.0})]
        for m, coef in enumerate(coefs, start=1):
            rows.append(RecursionRow(
                index=m,
                a={m: 1.0},
                groups=[RecursionGroup(coef=coef, members=list(range(m)))],
            ))
        mink = unwrap(rows, p, CombineRule.MINKOWSKI).as_array()
        l1 = unwrap(rows, p, CombineRule.L1).as_array()
        assert np.all(mink >= 0)
        assert np.allclose(np.triu(mink, 1), 0.0)
        assert np.all(mink <= l1 * (1 + 1e-12) + 1e-12)
        assert holder_aggregate(mink, p) >= mink.max() * (1 - 1e-12)
        assert holder_aggregate(mink, p) <= holder_aggregate(l1, p) * (1 + 1e-12)


class TestGradientCoefficients:
    """gradient 재귀 계수 테스트"""

    def test_patch_factor(self):
        assert patch_factor(1.0, 2.0) == pytest.approx(math.sqrt(2))
        assert patch_factor(4.0, 1.0) == pytest.approx(4.0)
        assert patch_factor(4.0, math.inf) == pytest.approx(2.0)

    @hyp_settings(max_examples=50, deadline=None)
    @given(
        ratio=st.floats(min_value=0.01, max_value=100.0),
        p=st.floats(min_value=1.01, max_value=50.0),
    )
    def test_patch_factor_range(self, ratio, p):
        """max(1, ratio^{1/p}) <= factor <= 1 + ratio^{1/p}"""
        x = ratio ** (1.0 / p)
        value = patch_factor(ratio, p)
        assert max(1.0, x) <= value * (1 + 1e-12)
        assert value <= (1.0 + x) * (1 + 1e-12)

    def test_square_glue_pair(self, square2):
        pair = gradient_pair(MeshContext(square2), 1, 0, 2.0, "glue")
        assert pair.A == pytest.approx(1.0)
        assert pair.child == pytest.approx(SQ_LOCAL)
        assert pair.parent == pytest.approx(SQ_LOCAL)

    def test_square_patch_pair(self, square2):
        pair = gradient_pair(MeshContext(square2), 1, 0, 2.0, "patch")
        assert pair.child == pytest.approx(2 / math.pi)

    def test_unknown_variant(self, square2):
        with pytest.raises(ValueError):
            gradient_pair(MeshContext(square2), 1, 0, 2.0, "other")


class TestEstimatePF:
    """end-to-end 상수 추정 테스트"""

    def test_square_glue(self, square2):
        """C = [[d/pi, 0], [2d/pi, d/pi]], d = sqrt2 -> 2 sqrt3 / pi"""
        result = estimate_pf(square2, strategy=Strategy.GRADIENT_GLUE, mode=EstimateMode.HILBERT)
        assert result.constant == pytest.approx(SQ_GLUE)
        assert result.ledger.as_array() == pytest.approx(
            np.array([[SQ_LOCAL, 0.0], [2 * SQ_LOCAL, SQ_LOCAL]])
        )
        assert "hilbert_local" in result.flags
        assert set(result.diagnostics["root_constants"]) == {0, 1}

    def test_square_patch(self, square2):
        result = estimate_pf(square2, strategy=Strategy.GRADIENT_PATCH, mode=EstimateMode.HILBERT)
        assert result.constant == pytest.approx(math.sqrt(12 + 4 * math.sqrt(2)) / math.pi)

    def test_square_exterior_gradient(self, square2):
        """k=0 shelling: face reflection 은 등거리이므로 glue 와 같은 값"""
        result = estimate_pf(square2, k=0, mode=EstimateMode.HILBERT)
        assert result.strategy == Strategy.EXTERIOR_SHELLING
        assert result.constant == pytest.approx(SQ_GLUE)
        assert result.diagnostics["fallback"] is None
        assert result.l1_constant == pytest.approx(result.constant)

    def test_square_exterior_div(self, square2):
        """k=1: (2/pi) delta 를 시작, 국소 상수로 써서 4 sqrt3 / pi"""
        result = estimate_pf(square2, k=1, mode=EstimateMode.HILBERT)
        assert result.constant == pytest.approx(4 * math.sqrt(3) / math.pi)
        assert "conjecture:start" in result.flags
        assert "conjecture:local" in result.flags
        assert result.proved_constant >= result.constant

    def test_square_exterior_proved(self, square2):
        """proved 모드 국소 상수는 p^{-1/p} delta = 1"""
        result = estimate_pf(square2, k=0, mode=EstimateMode.PROVED)
        expected = math.sqrt(2 / math.pi ** 2 + (1 + SQ_LOCAL) ** 2 + 1)
        assert result.constant == pytest.approx(expected)
        assert result.flags == []

    @pytest.mark.parametrize(
        "strategy", [Strategy.GRADIENT_GLUE, Strategy.GRADIENT_PATCH, Strategy.EXTERIOR_SHELLING]
    )
    def test_scaling_is_linear(self, square2, strategy):
        base = estimate_pf(square2, strategy=strategy, mode=EstimateMode.HILBERT)
        doubled = estimate_pf(square2.scaled(2.0), strategy=strategy, mode=EstimateMode.HILBERT)
        assert doubled.constant == pytest.approx(2 * base.constant)

    def test_global_ratios_not_better(self, lshape4):
        own = estimate_pf(lshape4, strategy=Strategy.GRADIENT_GLUE)
        shared = estimate_pf(lshape4, strategy=Strategy.GRADIENT_GLUE, individualized=False)
        assert shared.constant >= own.constant * (1 - 1e-12)
        assert "global_ratios" in shared.flags

    def test_gradient_strategy_needs_k0(self, square2):
        with pytest.raises(DegreeOutOfRange):
            estimate_pf(square2, k=1, strategy=Strategy.GRADIENT_GLUE)

    @pytest.mark.parametrize("k", [-1, 2])
    def test_degree_range(self, square2, k):
        with pytest.raises(DegreeOutOfRange):
            estimate_pf(square2, k=k)

    def test_annulus_gradient_without_shelling(self, annulus8):
        """shelling 이 없어도 spanning tree 기반 gradient 상수는 계산됨"""
        result = estimate_pf(annulus8, strategy=Strategy.GRADIENT_GLUE)
        assert math.isfinite(result.constant)
        assert sorted(result.traversal) == list(range(8))
        with pytest.raises(NotShellableWithinBudget):
            estimate_pf(annulus8, k=0)

    def test_non_hilbert_exponent_flag(self, lshape4):
        result = estimate_pf(lshape4, k=0, p=3.0, mode=EstimateMode.HILBERT)
        assert "hilbert_unavailable_for_p" in result.flags
        assert math.isfinite(result.constant)

    def test_fan_uses_star_reflection(self, hexagon_fan):
        """중심 정점을 닫는 단계 (ell = 0) 에서 theta 조각 reflection 사용"""
        result = estimate_pf(hexagon_fan, k=0)
        assert math.isfinite(result.constant) and result.constant > 0
        assert any("ell=0" in entry for row in result.ledger.provenance for entry in row)


class TestReproducibility:
    """traversal 로 같은 상수를 재현"""

    def test_shelling_replay(self, lshape4):
        result = estimate_pf(lshape4, k=0, mode=EstimateMode.HILBERT)
        shelling = verify_shelling(lshape4, result.traversal)
        replay = estimate_on_shelling(lshape4, shelling, k=0, mode=EstimateMode.HILBERT)
        assert replay.constant == pytest.approx(result.constant)
        np.testing.assert_allclose(replay.ledger.as_array(), result.ledger.as_array())

    def test_rows_never_look_ahead(self, cube5):
        shelling = verify_shelling(cube5, [0, 1, 2, 3, 4])
        plan = exterior_recursion_coeffs(MeshContext(cube5), shelling, 1, 2.0)
        for m, row in enumerate(plan.rows):
            assert all(col <= m for col in row.a)
            assert all(j < m for group in row.groups for j in group.members)


class TestProductBound:
    """contraction 곱 상한 테스트"""

    def test_square_product(self, square2):
        shelling = verify_shelling(square2, [0, 1])
        result = product_bound(square2, shelling, k=0)
        assert result.strategy == Strategy.APPENDIX_PRODUCT
        assert len(result.diagnostics["factors"]) == 1
        assert result.constant == pytest.approx(SQ_LOCAL * result.diagnostics["factors"][0])
        assert result.constant > 0

    def test_strategy_entry(self, square2):
        result = estimate_pf(square2, k=0, strategy=Strategy.APPENDIX_PRODUCT)
        assert result.diagnostics["factors"]
        assert "verifier_calls" in result.diagnostics

    def test_degree_range(self, square2):
        shelling = verify_shelling(square2, [0, 1])
        with pytest.raises(DegreeOutOfRange):
            product_bound(square2, shelling, k=2)
