"""
단계별 재귀 계수

gradient (spanning tree, glue / patch) 와 exterior derivative (shelling) 두 계열의
RecursionPlan 을 만듭니다. 모든 상수는 길이에 대해 1차 동차입니다.
"""
import math
from typing import Dict, List, NamedTuple, Sequence, Tuple

from app.analytic_constants.convex import ConvexConstants
from app.analytic_constants.local import LocalConstants
from app.exceptions import DegreeOutOfRange, PFBoundError, SphereShelling
from app.models.constants import ConstantValue
from app.models.estimate import (
    CombineRule,
    EstimateMode,
    RecursionGroup,
    RecursionPlan,
    RecursionRow,
)
from app.models.shelling import Shelling, SpanningTree, StepInfo
from app.pf_bounds.context import MeshContext
from app.pf_bounds.ledger import holder_aggregate, unwrap
from app.utils.linalg import conjugate_exponent, lp_power
from app.utils.logger import log


class GradientPair(NamedTuple):
    """자식 T_m 과 부모 T_varpi 사이 계수"""
    A: float
    child: float
    parent: float
    provenance: List[str]


class ExteriorStep(NamedTuple):
    """shelling 단계 하나의 계수"""
    local: ConstantValue
    a_prime: float
    b: float
    provenance: List[str]


def patch_factor(ratio: float, p: float) -> float:
    """(1 + ratio^{q/p})^{1/q}; p=inf 이면 2, p=1 이면 max(1, ratio)"""
    q = conjugate_exponent(p)
    x = lp_power(ratio, p)
    if math.isinf(q):
        return max(1.0, x)
    return (1.0 + x ** q) ** (1.0 / q)


def _hilbert(mode: EstimateMode, p: float) -> bool:
    return mode == EstimateMode.HILBERT and p == 2.0


def gradient_pair(
    ctx: MeshContext,
    child: int,
    parent: int,
    p: float,
    variant: str = "glue",
    mode: EstimateMode = EstimateMode.HILBERT,
    individualized: bool = True,
) -> GradientPair:
    """
    자식 셀의 ||w|| 를 부모 셀로 넘기는 계수

    glue:  ||w||_m <= A ||w||_parent + B' ||du||_m + B'' ||du||_parent
    patch: ||w||_m <= A ||w||_parent + B* (||du||_m + ||du||_parent)
    """
    ratio = ctx.volume_ratio(child, parent)
    if individualized:
        A = lp_power(ratio, p)
    else:
        A = lp_power(ctx.ratios().C_rho, p)

    if variant == "glue":
        local = LocalConstants.mixed_bc_gradient_constant(
            ctx.geometry(child), p, improved=mode == EstimateMode.HILBERT
        )
        if individualized:
            sigma = ctx.face_reflection(child, parent).sigma_max
        else:
            sigma = ctx.ratios().C_xi
        B2 = local.value * A * sigma
        return GradientPair(A, local.value, B2, [local.formula_id, "face_reflection"])
    if variant == "patch":
        patch = LocalConstants.face_patch_constant(
            ctx.c.cells[child], ctx.c.cells[parent], ctx.c.coords, p
        )
        value = patch.value if individualized else patch.alternatives.get("lemma", patch.value)
        B = patch_factor(ratio if individualized else ctx.ratios().C_rho, p) * value
        return GradientPair(A, B, B, [patch.formula_id, "patch_factor"])
    raise ValueError(f"unknown gradient variant: {variant}")


def gradient_recursion_coeffs(
    ctx: MeshContext,
    tree: SpanningTree,
    p: float,
    variant: str = "glue",
    mode: EstimateMode = EstimateMode.HILBERT,
    individualized: bool = True,
) -> RecursionPlan:
    """
    spanning tree 를 따른 gradient potential 재귀

    Args:
        ctx: 메쉬 캐시
        tree: DFS spanning tree (위치 기준 부모 맵)
        p: Lebesgue 지수
        variant: "glue" | "patch"
        mode: proved | hilbert (hilbert 는 p=2 에서 delta/pi 국소 상수)
        individualized: False 이면 전역 C_rho, C_xi 사용

    Returns:
        RecursionPlan
    """
    order = tree.order
    root = order[0]
    start = ConvexConstants.convex_pf_gradient(p, ctx.geometry(root).diameter)
    rows = [RecursionRow(index=0, a={0: start.value}, provenance=[start.formula_id])]
    flags: List[str] = []
    if not individualized:
        flags.append("global_ratios")

    for m in range(1, len(order)):
        parent_pos = tree.predecessor[m]
        pair = gradient_pair(ctx, order[m], order[parent_pos], p, variant, mode, individualized)
        a: Dict[int, float] = {m: pair.child}
        a[parent_pos] = a.get(parent_pos, 0.0) + pair.parent
        rows.append(RecursionRow(
            index=m,
            a=a,
            groups=[RecursionGroup(coef=pair.A, members=[parent_pos])],
            provenance=pair.provenance,
        ))
        if "mixed_bc.gradient.hilbert" in pair.provenance and "hilbert_local" not in flags:
            flags.append("hilbert_local")
    log.debug(f"gradient recursion ({variant}): {len(rows)} rows, root={root}")
    return RecursionPlan(start_constant=start, rows=rows, flags=flags)


def exterior_start_constant(
    ctx: MeshContext, cell: int, k: int, p: float, mode: EstimateMode = EstimateMode.HILBERT
) -> ConstantValue:
    """
    시작 셀 T_0 의 상수

    k=0 이면 convex gradient 상수, k >= 1 이면 입력 degree k+1 의 Poincare 연산자 상수.
    top degree 직전 (k = n-1, p=2) 에는 지름 delta 도 후보이고, hilbert 모드는
    (2/pi) delta 를 추가 후보로 둡니다.
    """
    geometry = ctx.geometry(cell)
    delta = geometry.diameter
    if k == 0:
        return ConvexConstants.convex_pf_gradient(p, delta)

    options = [
        ConvexConstants.convex_pf_kform(ctx.n, k + 1, p, delta, geometry.volume, "poincare")
    ]
    if k == ctx.n - 1 and p == 2.0:
        options.append(ConvexConstants.hilbert_div_constant(delta))
    proved = min(options, key=lambda cv: cv.value)
    if not _hilbert(mode, p):
        return proved
    hilbert = ConstantValue(
        value=2.0 / math.pi * delta,
        formula_id="convex.kform.hilbert_simple",
        assumptions=["p=2", "conjecture-adjacent"],
        conjecture=True,
        alternatives={"proved": proved.value},
    )
    return hilbert if hilbert.value < proved.value else proved


def local_kform_constant(
    ctx: MeshContext,
    cell: int,
    bc_faces: int,
    k: int,
    p: float,
    mode: EstimateMode = EstimateMode.HILBERT,
) -> ConstantValue:
    """
    bc_faces 개 face 에 경계조건이 있는 셀의 국소 상수

    증명된 후보 중 최솟값을 쓰고, p=2 hilbert 모드에서는 delta/pi (k=0),
    (2/pi) delta (k >= 1) 를 씁니다. 증명된 값은 alternatives["proved"] 에 남깁니다.
    """
    geometry = ctx.geometry(cell)
    options = [LocalConstants.mixed_bc_kform_constant(geometry, bc_faces - 1, k, p, "proved")]
    if k == 0:
        options.append(LocalConstants.mixed_bc_gradient_constant(geometry, p, improved=False))
    proved = min(options, key=lambda cv: cv.value)
    if not _hilbert(mode, p):
        return proved

    if k == 0:
        hilbert = LocalConstants.mixed_bc_gradient_constant(geometry, p, improved=True)
    else:
        hilbert = LocalConstants.mixed_bc_kform_constant(
            geometry, bc_faces - 1, k, p, "hilbert_simple"
        )
    chosen = hilbert if hilbert.value < proved.value else proved
    return chosen.model_copy(update={
        "alternatives": {**chosen.alternatives, "proved": proved.value}
    })


def exterior_step(
    ctx: MeshContext,
    step: StepInfo,
    k: int,
    p: float,
    mode: EstimateMode = EstimateMode.HILBERT,
    individualized: bool = True,
) -> ExteriorStep:
    """
    ||w||_m <= a ||du||_m + a F_{k+1} ||du||_U + F_k ||w||_U

    F_j 는 star reflection Xi_1: T_m -> U 의 degree j 전달 상수입니다.

    Raises:
        SphereShelling: 구면 마감 단계 (ell = -1)
    """
    if step.ell < 0:
        raise SphereShelling(
            f"step {step.step} closes a sphere", {"step": step.step, "cell": step.cell}
        )
    local = local_kform_constant(ctx, step.cell, step.shared_face_count, k, p, mode)
    upper = ctx.transfer("reflection", step.S, step.cell, k + 1, p)
    lower = ctx.transfer("reflection", step.S, step.cell, k, p)
    if individualized:
        F_up, F_low = upper.forward, lower.forward
    else:
        F_up, F_low = upper.bound_forward, lower.bound_forward
    return ExteriorStep(
        local=local,
        a_prime=local.value * F_up,
        b=F_low,
        provenance=[local.formula_id, f"star_reflection(ell={step.ell})"],
    )


def exterior_recursion_coeffs(
    ctx: MeshContext,
    shelling: Shelling,
    k: int,
    p: float,
    mode: EstimateMode = EstimateMode.HILBERT,
    individualized: bool = True,
) -> RecursionPlan:
    """
    shelling 을 따른 exterior derivative potential 재귀

    a' 은 U 의 각 셀에 그대로 놓고 (l1), F_k 항은 U 셀 행들의 묶음으로 둡니다.
    묶음의 분배 규칙은 unwrap 에서 정합니다.

    Args:
        ctx: 메쉬 캐시
        shelling: 검증된 shelling
        k: form degree (0..n-1)
        p: Lebesgue 지수
        mode: proved | hilbert
        individualized: False 이면 closed-form mu 상한 기반 전달 상수

    Raises:
        DegreeOutOfRange, SphereShelling
    """
    n = ctx.n
    if not 0 <= k <= n - 1:
        raise DegreeOutOfRange(f"degree k={k} outside 0..{n - 1}", {"n": n, "k": k})
    order = shelling.order
    position = {cell: m for m, cell in enumerate(order)}
    start = exterior_start_constant(ctx, order[0], k, p, mode)
    rows = [RecursionRow(index=0, a={0: start.value}, provenance=[start.formula_id])]
    flags: List[str] = []
    if start.conjecture:
        flags.append("conjecture:start")
    if mode == EstimateMode.HILBERT and p != 2.0:
        flags.append("hilbert_unavailable_for_p")
    if not individualized:
        flags.append("closed_form_transfer")

    for m, step in enumerate(shelling.steps, start=1):
        coeffs = exterior_step(ctx, step, k, p, mode, individualized)
        members = sorted(position[j] for j in step.U_prev)
        a: Dict[int, float] = {m: coeffs.local.value}
        for j in members:
            a[j] = a.get(j, 0.0) + coeffs.a_prime
        rows.append(RecursionRow(
            index=m,
            a=a,
            groups=[RecursionGroup(coef=coeffs.b, members=members)],
            provenance=coeffs.provenance,
        ))
        if coeffs.local.conjecture and "conjecture:local" not in flags:
            flags.append("conjecture:local")
        if not step.star_complete:
            flags.append(f"star_incomplete:step{m}")
    log.debug(f"exterior recursion k={k}: {len(rows)} rows")
    return RecursionPlan(start_constant=start, rows=rows, flags=flags)


def plan_constant(plan: RecursionPlan, p: float, rule: CombineRule) -> float:
    return holder_aggregate(unwrap(plan.rows, p, rule), p)


class ExteriorCostModel:
    """
    shelling 탐색용 비용: 단계 계수 합과 최종 상수

    기하 계산이 불가능한 단계 (경계 위 S 등) 는 무한 비용입니다.
    """

    def __init__(
        self,
        ctx: MeshContext,
        k: int,
        p: float,
        mode: EstimateMode = EstimateMode.HILBERT,
        rule: CombineRule = CombineRule.MINKOWSKI,
        individualized: bool = True,
    ):
        self.ctx = ctx
        self.k = k
        self.p = p
        self.mode = mode
        self.rule = rule
        self.individualized = individualized

    def step_cost(self, prefix: Sequence[int], cell: int, step: StepInfo) -> float:
        try:
            coeffs = exterior_step(self.ctx, step, self.k, self.p, self.mode, self.individualized)
        except PFBoundError:
            return math.inf
        return coeffs.local.value + coeffs.a_prime * len(step.U_prev) + coeffs.b

    def score(self, shelling: Shelling) -> float:
        try:
            plan = exterior_recursion_coeffs(
                self.ctx, shelling, self.k, self.p, self.mode, self.individualized
            )
        except PFBoundError:
            return math.inf
        return plan_constant(plan, self.p, self.rule)


def gradient_edge_cost(
    ctx: MeshContext,
    p: float,
    variant: str,
    mode: EstimateMode = EstimateMode.HILBERT,
    individualized: bool = True,
):
    """spanning_tree 용 간선 비용 (부모, 자식) -> A + 계수 합"""
    cache: Dict[Tuple[int, int], float] = {}

    def cost(parent: int, child: int) -> float:
        key = (parent, child)
        if key not in cache:
            pair = gradient_pair(ctx, child, parent, p, variant, mode, individualized)
            cache[key] = pair.A + pair.child + pair.parent
        return cache[key]

    return cost
