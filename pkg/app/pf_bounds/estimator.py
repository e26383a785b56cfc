"""
end-to-end Poincare-Friedrichs 상수 추정

순회(spanning tree 또는 shelling) 를 고르고, 재귀 계수를 만들고, unwrap 후 Hoelder 집계합니다.
"""
import math
from typing import Any, Dict, List, Optional, Tuple

from app.config import settings
from app.exceptions import DegreeOutOfRange
from app.mesh_core.complex import SimplicialComplex
from app.models.estimate import (
    BoundLedger,
    CombineRule,
    EstimateMode,
    EstimateResult,
    Strategy,
)
from app.models.shelling import SearchConfig, Shelling, SpanningTree
from app.pf_bounds.context import MeshContext
from app.pf_bounds.ledger import holder_aggregate, unwrap
from app.pf_bounds.recursion import (
    ExteriorCostModel,
    exterior_recursion_coeffs,
    exterior_start_constant,
    gradient_edge_cost,
    gradient_recursion_coeffs,
    plan_constant,
)
from app.shelling_engine.search import search_shelling
from app.shelling_engine.trees import spanning_tree
from app.utils.logger import log

_VARIANTS = {Strategy.GRADIENT_GLUE: "glue", Strategy.GRADIENT_PATCH: "patch"}


def _context(c) -> MeshContext:
    return c if isinstance(c, MeshContext) else MeshContext(c)


def estimate_on_tree(
    c,
    tree: SpanningTree,
    p: float = 2.0,
    strategy: Strategy = Strategy.GRADIENT_GLUE,
    mode: EstimateMode = EstimateMode.HILBERT,
    individualized: bool = True,
) -> EstimateResult:
    """
    주어진 spanning tree 로 gradient 상수 계산

    Args:
        c: SimplicialComplex 또는 MeshContext
        tree: spanning tree
        p: Lebesgue 지수
        strategy: GRADIENT_GLUE | GRADIENT_PATCH
        mode: proved | hilbert
        individualized: False 이면 전역 비율 사용
    """
    ctx = _context(c)
    variant = _VARIANTS[strategy]
    plan = gradient_recursion_coeffs(ctx, tree, p, variant, mode, individualized)
    ledger = unwrap(plan.rows, p)
    constant = holder_aggregate(ledger, p)
    proved = constant
    if mode == EstimateMode.HILBERT:
        proved_plan = gradient_recursion_coeffs(
            ctx, tree, p, variant, EstimateMode.PROVED, individualized
        )
        proved = plan_constant(proved_plan, p, CombineRule.MINKOWSKI)
    return EstimateResult(
        constant=constant,
        k=0,
        p=p,
        strategy=strategy,
        mode=mode,
        combine_rule=CombineRule.MINKOWSKI,
        traversal=list(tree.order),
        predecessors=dict(tree.predecessor),
        ledger=ledger,
        start_constant=plan.start_constant,
        proved_constant=proved,
        # 부모가 하나뿐이므로 두 규칙이 같음
        l1_constant=constant,
        flags=plan.flags,
    )


def estimate_on_shelling(
    c,
    shelling: Shelling,
    k: int = 0,
    p: float = 2.0,
    mode: EstimateMode = EstimateMode.HILBERT,
    combine_rule: CombineRule = CombineRule.MINKOWSKI,
    individualized: bool = True,
) -> EstimateResult:
    """
    주어진 shelling 으로 exterior derivative 상수 계산

    proved 모드 상수와 l1 분배 상수도 함께 계산합니다.
    """
    ctx = _context(c)
    plan = exterior_recursion_coeffs(ctx, shelling, k, p, mode, individualized)
    ledger = unwrap(plan.rows, p, combine_rule)
    constant = holder_aggregate(ledger, p)
    l1 = plan_constant(plan, p, CombineRule.L1)
    proved = constant
    if mode == EstimateMode.HILBERT:
        proved_plan = exterior_recursion_coeffs(
            ctx, shelling, k, p, EstimateMode.PROVED, individualized
        )
        proved = plan_constant(proved_plan, p, combine_rule)
    return EstimateResult(
        constant=constant,
        k=k,
        p=p,
        strategy=Strategy.EXTERIOR_SHELLING,
        mode=mode,
        combine_rule=combine_rule,
        traversal=list(shelling.order),
        ledger=ledger,
        start_constant=plan.start_constant,
        proved_constant=proved,
        l1_constant=l1,
        flags=plan.flags,
    )


def product_bound(
    c,
    shelling: Shelling,
    k: int = 0,
    p: float = 2.0,
    mode: EstimateMode = EstimateMode.HILBERT,
) -> EstimateResult:
    """
    star contraction 전달 상수의 곱으로 만든 상한

    constant = C(T_0) * prod_m inverse_{k+1}(Xi_2) * forward_k(Xi_2)

    Raises:
        DegreeOutOfRange
    """
    ctx = _context(c)
    n = ctx.n
    if not 0 <= k <= n - 1:
        raise DegreeOutOfRange(f"degree k={k} outside 0..{n - 1}", {"n": n, "k": k})
    start = exterior_start_constant(ctx, shelling.order[0], k, p, mode)
    factors: List[float] = []
    for step in shelling.steps:
        upper = ctx.transfer("contraction", step.S, step.cell, k + 1, p)
        lower = ctx.transfer("contraction", step.S, step.cell, k, p)
        factors.append(upper.inverse * lower.forward)
    constant = start.value * math.prod(factors)
    flags = ["conjecture:start"] if start.conjecture else []
    return EstimateResult(
        constant=constant,
        k=k,
        p=p,
        strategy=Strategy.APPENDIX_PRODUCT,
        mode=mode,
        traversal=list(shelling.order),
        ledger=BoundLedger(C=[[constant]], provenance=[[start.formula_id, "contraction_product"]]),
        start_constant=start,
        flags=flags,
        diagnostics={"factors": factors},
    )


def _best_tree(
    ctx: MeshContext,
    p: float,
    strategy: Strategy,
    mode: EstimateMode,
    individualized: bool,
) -> Tuple[EstimateResult, Dict[str, Any]]:
    cost = gradient_edge_cost(ctx, p, _VARIANTS[strategy], mode, individualized)
    root_constants: Dict[int, float] = {}
    best: Optional[EstimateResult] = None
    for root in range(ctx.c.num_cells):
        tree = spanning_tree(ctx.c, root, cost)
        result = estimate_on_tree(ctx, tree, p, strategy, mode, individualized)
        root_constants[root] = result.constant
        if best is None or result.constant < best.constant:
            best = result
    assert best is not None
    return best, {"root_constants": root_constants}


def estimate_pf(
    c: SimplicialComplex,
    k: int = 0,
    p: float = 2.0,
    strategy: Strategy = Strategy.EXTERIOR_SHELLING,
    search_config: Optional[SearchConfig] = None,
    mode: Optional[EstimateMode] = None,
    combine_rule: Optional[CombineRule] = None,
    individualized: bool = True,
) -> EstimateResult:
    """
    PF 상수 상한 추정

    gradient 전략은 모든 루트의 greedy spanning tree 중 최소, shelling 전략은
    search_shelling 이 비용 모델로 고른 shelling 을 씁니다.

    Args:
        c: 메쉬
        k: form degree (gradient 전략은 0 만)
        p: Lebesgue 지수
        strategy: 추정 전략
        search_config: shelling 탐색 설정 (기본: settings)
        mode, combine_rule: 기본값은 settings

    Returns:
        EstimateResult (traversal 로 재현 가능)

    Raises:
        DegreeOutOfRange: 전략과 맞지 않는 k
    """
    mode = mode or settings.get_estimate_mode()
    combine_rule = combine_rule or CombineRule(settings.combine_rule.lower())
    if not 0 <= k <= c.n - 1:
        raise DegreeOutOfRange(f"degree k={k} outside 0..{c.n - 1}", {"n": c.n, "k": k})
    ctx = MeshContext(c)
    log.info(
        f"PF 추정 시작: n={c.n}, cells={c.num_cells}, k={k}, p={p}, "
        f"strategy={strategy.value}, mode={mode.value}"
    )

    if strategy in _VARIANTS:
        if k != 0:
            raise DegreeOutOfRange(
                f"{strategy.value} only estimates the gradient (k=0), got k={k}", {"k": k}
            )
        result, diagnostics = _best_tree(ctx, p, strategy, mode, individualized)
    else:
        config = search_config or settings.get_search_config(k, p)
        config = config.model_copy(update={"k": k, "p": p})
        cost_model = ExteriorCostModel(ctx, k, p, mode, combine_rule, individualized)
        outcome = search_shelling(c, config, cost_model)
        diagnostics = {
            "verifier_calls": outcome.verifier_calls,
            "candidates": outcome.candidates,
            "root_scores": outcome.root_scores,
            "fallback": outcome.fallback,
        }
        if strategy == Strategy.APPENDIX_PRODUCT:
            result = product_bound(ctx, outcome.shelling, k, p, mode)
            diagnostics["factors"] = result.diagnostics["factors"]
        else:
            result = estimate_on_shelling(
                ctx, outcome.shelling, k, p, mode, combine_rule, individualized
            )

    result = result.model_copy(update={"diagnostics": diagnostics})
    log.info(f"PF 추정 완료: constant={result.constant:.6g} (traversal={result.traversal})")
    return result
