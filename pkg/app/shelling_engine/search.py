"""
shelling 탐색

루트 셀마다 greedy 순서의 backtracking DFS 로 후보 shelling 을 만들고,
cost model 의 최종 점수(추정 상수)가 가장 작은 shelling 을 고릅니다.
"""
import math
from typing import Dict, Iterator, List, Optional, Protocol, Sequence, Set, Tuple

import numpy as np

from app.config import settings
from app.exceptions import (
    BudgetExhausted,
    Disconnected,
    Not2Ball,
    NotShellableWithinBudget,
    TooManyCells,
)
from app.mesh_core.complex import SimplicialComplex
from app.mesh_core.topology import Topology
from app.models.shelling import SearchConfig, SearchOutcome, Shelling, StepInfo, Violation
from app.shelling_engine.constructive import shell_2_ball
from app.shelling_engine.verifier import ShellingVerifier, verify_shelling
from app.utils.logger import log


class CostModel(Protocol):
    """탐색 비용 모델"""

    def step_cost(self, prefix: Sequence[int], cell: int, step: StepInfo) -> float:
        """prefix 다음에 cell 을 놓을 때의 예상 ledger 기여"""
        ...

    def score(self, shelling: Shelling) -> float:
        """완성된 shelling 의 최종 점수 (작을수록 좋음)"""
        ...


class StructuralCostModel:
    """기하 정보 없이 star 크기만 보는 기본 비용"""

    def step_cost(self, prefix: Sequence[int], cell: int, step: StepInfo) -> float:
        return float(len(step.U_prev))

    def score(self, shelling: Shelling) -> float:
        return float(sum(len(s.U_prev) for s in shelling.steps))


class _BudgetHit(Exception):
    pass


class _RootSearch:
    """루트 하나에 대한 backtracking DFS"""

    def __init__(
        self,
        c: SimplicialComplex,
        verifier: ShellingVerifier,
        cost_model: CostModel,
        rank: np.ndarray,
        call_limit: int,
    ):
        self.c = c
        self.verifier = verifier
        self.cost_model = cost_model
        self.rank = rank
        self.call_limit = call_limit
        self.deepest = 0

    def run(self, root: int) -> Iterator[Shelling]:
        order = [root]
        placed: Set[int] = {root}
        steps: List[StepInfo] = []
        yield from self._extend(order, placed, steps)

    def _candidates(self, order: List[int], placed: Set[int]) -> List[Tuple[tuple, StepInfo]]:
        frontier = sorted({j for i in order for j in self.c.face_neighbors(i)} - placed)
        is_last = len(order) + 1 == self.c.num_cells
        ranked = []
        for cell in frontier:
            if self.verifier.calls >= self.call_limit:
                raise _BudgetHit()
            result = self.verifier.check_step(placed, cell, len(order), is_last)
            if isinstance(result, Violation):
                continue
            cost = self.cost_model.step_cost(order, cell, result)
            # 비용이 무한한 단계는 맨 뒤, 그 다음 star 를 닫는 단계(공유 face 2개 이상) 우선
            blocked = math.isinf(cost)
            priority = 0 if result.shared_face_count >= 2 else 1
            ranked.append(((blocked, priority, cost, int(self.rank[cell])), result))
        ranked.sort(key=lambda item: item[0])
        return ranked

    def _extend(
        self, order: List[int], placed: Set[int], steps: List[StepInfo]
    ) -> Iterator[Shelling]:
        self.deepest = max(self.deepest, len(order))
        if len(order) == self.c.num_cells:
            yield Shelling(order=list(order), steps=list(steps), verified=True)
            return
        for _, step in self._candidates(order, placed):
            order.append(step.cell)
            placed.add(step.cell)
            steps.append(step)
            yield from self._extend(order, placed, steps)
            steps.pop()
            placed.discard(step.cell)
            order.pop()


def search_shelling(
    c: SimplicialComplex,
    config: Optional[SearchConfig] = None,
    cost_model: Optional[CostModel] = None,
) -> SearchOutcome:
    """
    greedy backtracking 으로 최선의 shelling 탐색

    Args:
        c: face 연결 complex
        config: 시드, verifier 호출 예산, 루트별 후보 수
        cost_model: 단계 비용과 최종 점수 (기본 StructuralCostModel)

    Returns:
        SearchOutcome: (점수, 순서) 최소 shelling 과 진단

    Raises:
        Disconnected: face 연결이 아님
        BudgetExhausted: 예산 소진, 후보 없음
        NotShellableWithinBudget: 전수 탐색 결과 shelling 없음
    """
    config = config or settings.get_search_config()
    cost_model = cost_model or StructuralCostModel()
    if not Topology.is_face_connected(c):
        raise Disconnected("shelling search needs a face-connected complex")

    rng = np.random.default_rng(config.seed)
    rank = rng.permutation(c.num_cells)
    verifier = ShellingVerifier(c)
    root_scores: Dict[int, List[float]] = {}
    found: List[Tuple[float, List[int], Shelling]] = []
    budget_hit = False
    deepest = 0

    roots = list(range(c.num_cells))
    for idx, root in enumerate(roots):
        remaining = config.budget - verifier.calls
        if remaining <= 0:
            budget_hit = True
            break
        root_limit = verifier.calls + remaining // (len(roots) - idx)
        search = _RootSearch(c, verifier, cost_model, rank, root_limit)
        scores: List[float] = []
        try:
            for shelling in search.run(root):
                score = float(cost_model.score(shelling))
                scores.append(score)
                found.append((score, shelling.order, shelling))
                if len(scores) >= config.per_root:
                    break
        except _BudgetHit:
            budget_hit = True
        deepest = max(deepest, search.deepest)
        root_scores[root] = scores
        log.debug(f"root {root}: 후보 {len(scores)}개, verifier 호출 누계 {verifier.calls}")

    if not found:
        if c.n == 2:
            try:
                shelling = shell_2_ball(c)
                log.warning("탐색 실패, shell_2_ball 구성으로 대체")
                return SearchOutcome(
                    shelling=shelling,
                    score=float(cost_model.score(shelling)),
                    verifier_calls=verifier.calls,
                    candidates=1,
                    root_scores=root_scores,
                    fallback="shell_2_ball",
                )
            except Not2Ball:
                pass
        details = {"verifier_calls": verifier.calls, "deepest_prefix": deepest}
        if budget_hit:
            raise BudgetExhausted("search budget exhausted without a shelling", details)
        raise NotShellableWithinBudget("exhaustive search found no shelling", details)

    score, _, best = min(found, key=lambda item: (item[0], item[1]))
    checked = verify_shelling(c, best.order)
    if isinstance(checked, Violation):
        raise RuntimeError(f"search produced an invalid shelling: {checked}")
    log.info(
        f"shelling 탐색 완료: 후보 {len(found)}개, 최선 점수 {score:.6g}, "
        f"verifier 호출 {verifier.calls}"
    )
    return SearchOutcome(
        shelling=checked,
        score=score,
        verifier_calls=verifier.calls,
        candidates=len(found),
        root_scores=root_scores,
    )


def brute_force_shellings(c: SimplicialComplex, limit: Optional[int] = None) -> List[Shelling]:
    """
    모든 shelling 열거 (작은 complex 전용 oracle)

    Raises:
        TooManyCells: 셀 수 > limit
    """
    limit = settings.brute_force_limit if limit is None else limit
    if c.num_cells > limit:
        raise TooManyCells(
            f"{c.num_cells} cells exceed the brute-force limit {limit}",
            {"cells": c.num_cells, "limit": limit},
        )

    verifier = ShellingVerifier(c)
    results: List[Shelling] = []
    total = c.num_cells

    def extend(order: List[int], placed: Set[int], steps: List[StepInfo]) -> None:
        if len(order) == total:
            results.append(Shelling(order=list(order), steps=list(steps), verified=True))
            return
        for cell in range(total):
            if cell in placed:
                continue
            result = verifier.check_step(placed, cell, len(order), len(order) + 1 == total)
            if isinstance(result, Violation):
                continue
            order.append(cell)
            placed.add(cell)
            steps.append(result)
            extend(order, placed, steps)
            steps.pop()
            placed.discard(cell)
            order.pop()

    for root in range(total):
        extend([root], {root}, [])
    log.debug(f"brute force: {len(results)}개 shelling, verifier 호출 {verifier.calls}")
    return results
