import pytest

from app.exceptions import (
    BudgetExhausted,
    Disconnected,
    IndexOutOfRange,
    Not2Ball,
    NotShellableWithinBudget,
    StarNotShellable,
    TooManyCells,
)
from app.interface.examples import ANNULUS_STRIP_ORDER, TABLE_2D, TABLE_3D, example_mesh
from app.mesh_core.complex import build_complex
from app.models.shelling import SearchConfig, Shelling, Violation, ViolationKind
from app.shelling_engine import (
    brute_force_shellings,
    enumerate_spanning_trees,
    search_shelling,
    shell_2_ball,
    shell_star,
    spanning_tree,
    verify_shelling,
)


@pytest.fixture
def vertex_touching():
    coords = [[0, 0], [1, 0], [0, 1], [-1, 0], [0, -1]]
    return build_complex(2, coords, [[0, 1, 2], [0, 3, 4]])


class TestVerifyShelling:
    """shelling 검증 테스트"""

    def test_lshape_order(self, lshape4):
        """L 자 영역: 인덱스 순서는 shelling"""
        result = verify_shelling(lshape4, [0, 1, 2, 3])
        assert isinstance(result, Shelling)
        assert result.verified
        assert [s.cell for s in result.steps] == [1, 2, 3]
        assert all(s.ell == 1 and s.shared_face_count == 1 for s in result.steps)
        assert result.steps[1].interface_faces == [(0, 3)]
        assert result.steps[1].U_prev == [0]

    def test_annulus_strip_fails_at_isolated_vertex(self, annulus8):
        """고리 영역 strip 순서: 단계 6 에서 고립 정점"""
        result = verify_shelling(annulus8, ANNULUS_STRIP_ORDER)
        assert isinstance(result, Violation)
        assert result.step == 6
        assert result.kind == ViolationKind.ISOLATED_VERTEX
        assert [tuple(s) for s in result.witness] == [(0,)]

    def test_empty_interface(self, annulus8):
        result = verify_shelling(annulus8, [0, 3, 1, 2, 4, 5, 6, 7])
        assert isinstance(result, Violation)
        assert result.step == 1
        assert result.kind == ViolationKind.EMPTY_INTERFACE

    def test_lower_dim_intersection(self, cube5):
        """모서리만 공유하는 두 모퉁이 사면체"""
        result = verify_shelling(cube5, [1, 2, 0, 3, 4])
        assert isinstance(result, Violation)
        assert result.kind == ViolationKind.LOWER_DIM_INTERSECTION
        assert [tuple(s) for s in result.witness] == [(0, 3)]

    def test_cube5_central_first(self, cube5):
        """중앙 사면체부터 놓으면 모든 단계가 face 하나 (ell = 2)"""
        result = verify_shelling(cube5, [0, 1, 2, 3, 4])
        assert isinstance(result, Shelling)
        assert [s.ell for s in result.steps] == [2, 2, 2, 2]

    def test_fan_closing_step(self, hexagon_fan):
        """육각형 fan 의 마지막 셀은 중심 정점 (ell = 0) 을 닫음"""
        result = verify_shelling(hexagon_fan, [0, 1, 2, 3, 4, 5])
        assert isinstance(result, Shelling)
        last = result.steps[-1]
        assert last.S == (0,)
        assert last.ell == 0
        assert last.shared_face_count == 2
        assert sorted(last.U_prev) == [0, 1, 2, 3, 4]
        assert last.star_complete

    def test_not_a_permutation(self, square2):
        with pytest.raises(IndexOutOfRange):
            verify_shelling(square2, [0, 0])
        with pytest.raises(IndexOutOfRange):
            verify_shelling(square2, [0, 1, 2])


class TestBruteForce:
    """전수 열거 oracle 테스트"""

    def test_square(self, square2):
        orders = sorted(s.order for s in brute_force_shellings(square2))
        assert orders == [[0, 1], [1, 0]]

    def test_lshape_contiguous_orders(self, lshape4):
        """face 그래프가 경로이므로 연속 부분경로 순서 8 개"""
        shellings = brute_force_shellings(lshape4)
        assert len(shellings) == 8
        for shelling in shellings:
            assert isinstance(verify_shelling(lshape4, shelling.order), Shelling)

    def test_annulus_has_no_shelling(self, annulus8):
        assert brute_force_shellings(annulus8) == []

    def test_limit(self, cube_kuhn):
        with pytest.raises(TooManyCells):
            brute_force_shellings(cube_kuhn, limit=3)


class TestConstructive:
    """구성적 shelling 테스트"""

    @pytest.mark.parametrize("name", ["lshape4", "slit5", "hexagon_fan", "square2"])
    def test_shell_2_ball(self, name, request):
        c = request.getfixturevalue(name)
        shelling = shell_2_ball(c)
        assert shelling.verified
        assert sorted(shelling.order) == list(range(c.num_cells))

    def test_annulus_is_not_ball(self, annulus8):
        with pytest.raises(Not2Ball) as exc_info:
            shell_2_ball(annulus8)
        assert exc_info.value.details["euler_characteristic"] == 0

    def test_not_ball_in_3d(self, cube5):
        with pytest.raises(Not2Ball):
            shell_2_ball(cube5)

    def test_disconnected_is_not_ball(self, vertex_touching):
        with pytest.raises(Not2Ball):
            shell_2_ball(vertex_touching)

    def test_vertex_star_2d(self, hexagon_fan):
        """2 차원 정점 star: 회전 순서"""
        shelling = shell_star(hexagon_fan, (0,))
        assert shelling.order[0] == 0
        assert sorted(shelling.order) == list(range(6))

    def test_edge_star_3d(self, edge_star_3d):
        shelling = shell_star(edge_star_3d, (0, 1))
        assert sorted(shelling.order) == list(range(6))
        assert shelling.steps[-1].S == (0, 1)

    def test_vertex_star_3d(self, cube5):
        """정육면체 꼭짓점 0 의 star: link 가 disc"""
        shelling = shell_star(cube5, (0,))
        assert sorted(shelling.order) == [0, 1, 2, 3]

    def test_facet_star(self, square2):
        assert shell_star(square2, (0, 2)).order == [0, 1]

    def test_unsupported_star(self):
        """4 차원 정점 star 는 지원하지 않음"""
        coords = [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        c = build_complex(4, coords, [[0, 1, 2, 3, 4]])
        with pytest.raises(StarNotShellable):
            shell_star(c, (0,))


class TestSpanningTree:
    """DFS spanning tree 테스트"""

    def test_lshape_tree(self, lshape4):
        tree = spanning_tree(lshape4, root=0)
        assert tree.order == [0, 1, 2, 3]
        assert tree.predecessor == {1: 0, 2: 0, 3: 2}

    def test_cost_changes_visit_order(self, lshape4):
        tree = spanning_tree(lshape4, root=0, cost_model=lambda parent, child: -child)
        assert tree.order == [0, 2, 3, 1]
        assert tree.predecessor == {1: 0, 2: 1, 3: 0}

    def test_predecessor_precedes(self, cube_kuhn):
        tree = spanning_tree(cube_kuhn, root=3)
        assert tree.order[0] == 3
        assert all(parent < child for child, parent in tree.predecessor.items())

    def test_root_range(self, square2):
        with pytest.raises(IndexOutOfRange):
            spanning_tree(square2, root=5)

    def test_disconnected(self, vertex_touching):
        with pytest.raises(Disconnected):
            spanning_tree(vertex_touching)

    def test_enumerate(self, square2, lshape4):
        assert len(enumerate_spanning_trees(square2)) == 2
        assert len(enumerate_spanning_trees(lshape4)) == 6


class TestSearchShelling:
    """shelling 탐색 테스트"""

    def test_square(self, square2):
        outcome = search_shelling(square2)
        assert outcome.shelling.verified
        assert outcome.score == 1.0
        assert outcome.fallback is None
        assert outcome.candidates >= 2

    def test_cube5_result_verifies(self, cube5):
        outcome = search_shelling(cube5, SearchConfig(seed=3, per_root=2))
        assert isinstance(verify_shelling(cube5, outcome.shelling.order), Shelling)

    def test_seed_is_deterministic(self, cube_kuhn):
        config = SearchConfig(seed=7, per_root=3)
        first = search_shelling(cube_kuhn, config)
        second = search_shelling(cube_kuhn, config)
        assert first.shelling.order == second.shelling.order
        assert first.verifier_calls == second.verifier_calls

    @pytest.mark.slow
    @pytest.mark.parametrize("name", TABLE_2D + TABLE_3D)
    def test_table_meshes_within_budget(self, name):
        """표의 예제 메쉬는 10^6 verifier 호출 안에서 shelling 을 찾음"""
        c = example_mesh(name)
        outcome = search_shelling(c, SearchConfig(budget=1_000_000))
        assert outcome.fallback is None
        assert isinstance(verify_shelling(c, outcome.shelling.order), Shelling)
        assert len(outcome.shelling.order) == c.num_cells

    def test_annulus_not_shellable(self, annulus8):
        with pytest.raises(NotShellableWithinBudget):
            search_shelling(annulus8)

    def test_budget_fallback_2d(self, lshape4):
        """2 차원은 예산 소진 시 shell_2_ball 로 대체"""
        outcome = search_shelling(lshape4, SearchConfig(budget=1))
        assert outcome.fallback == "shell_2_ball"
        assert outcome.shelling.verified

    def test_budget_exhausted_3d(self, cube_kuhn):
        with pytest.raises(BudgetExhausted) as exc_info:
            search_shelling(cube_kuhn, SearchConfig(budget=1))
        assert "verifier_calls" in exc_info.value.details

    def test_disconnected(self, vertex_touching):
        with pytest.raises(Disconnected):
            search_shelling(vertex_touching)
