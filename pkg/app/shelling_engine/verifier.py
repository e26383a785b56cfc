"""
shelling 검증

단계 m 에서 T_m 과 이전 셀 합집합의 simplicial 교집합이 T_m 의 (n-1)-face 들의
합집합과 정확히 같아야 합니다. 고립된 정점/모서리만 공유하는 단계는 무효입니다.
"""
from typing import Iterable, List, Optional, Sequence, Set, Union

from app.exceptions import IndexOutOfRange
from app.mesh_core.complex import SimplicialComplex
from app.mesh_core.topology import Topology
from app.models.shelling import Shelling, StepInfo, Violation, ViolationKind
from app.utils.logger import log


class ShellingVerifier:
    """
    단계별 shelling 검사기

    Attributes:
        c: complex
        universe: star 계산에 쓰는 셀 집합 (부분 complex 의 shelling 검증용)
        calls: check_step 호출 횟수 (탐색 예산 계산에 사용)
    """

    def __init__(self, c: SimplicialComplex, universe: Optional[Iterable[int]] = None):
        self.c = c
        self.universe: List[int] = (
            sorted(universe) if universe is not None else list(range(c.num_cells))
        )
        self._universe_set = set(self.universe)
        self.calls = 0

    def check_step(
        self, prior: Set[int], cell: int, step: int, is_last: bool
    ) -> Union[StepInfo, Violation]:
        """
        prior 다음에 cell 을 놓는 단계 검사

        Args:
            prior: 이미 놓인 셀 인덱스
            cell: 새 셀 인덱스
            step: 단계 번호 m (>= 1)
            is_last: 마지막 단계 여부

        Returns:
            StepInfo 또는 Violation
        """
        self.calls += 1
        c = self.c
        cell_vertices = c.cells[cell]

        touching: Set[int] = set()
        for v in cell_vertices:
            touching.update(c.cells_at_vertex(v))
        touching &= prior
        interface = Topology.simplicial_intersection(c, cell_vertices, sorted(touching))

        if interface.is_empty:
            return Violation(step=step, kind=ViolationKind.EMPTY_INTERFACE, witness=[])
        if interface.as_faces is None:
            bad = [s for s in interface.shared_maximal if len(s) != c.n]
            kind = (
                ViolationKind.ISOLATED_VERTEX
                if any(len(s) == 1 for s in bad)
                else ViolationKind.LOWER_DIM_INTERSECTION
            )
            return Violation(step=step, kind=kind, witness=bad)

        faces = interface.as_faces
        opposite = {next(iter(set(cell_vertices) - set(f))) for f in faces}
        S = tuple(v for v in cell_vertices if v not in opposite)
        ell = c.n - len(faces)

        star = [j for j in c.cells_containing(S) if j in self._universe_set] if S else self.universe
        U_prev = [j for j in star if j != cell]
        missing = [j for j in U_prev if j not in prior]
        star_complete = not missing
        if missing and not is_last:
            return Violation(
                step=step,
                kind=ViolationKind.STAR_NOT_COMPLETED,
                witness=[S] + [c.cells[j] for j in missing],
            )

        return StepInfo(
            step=step,
            cell=cell,
            interface_faces=faces,
            S=S,
            ell=ell,
            U_prev=U_prev,
            shared_face_count=len(faces),
            star_complete=star_complete,
        )


def verify_shelling(
    c: SimplicialComplex, order: Sequence[int], universe: Optional[Iterable[int]] = None
) -> Union[Shelling, Violation]:
    """
    셀 순서가 shelling 인지 검증

    Args:
        c: complex
        order: 셀 인덱스 순열
        universe: 순서가 덮어야 할 셀 집합 (기본: 전체)

    Returns:
        검증된 Shelling 또는 첫 위반 Violation

    Raises:
        IndexOutOfRange: order 가 universe 의 순열이 아님
    """
    verifier = ShellingVerifier(c, universe)
    order = [int(i) for i in order]
    if sorted(order) != verifier.universe:
        raise IndexOutOfRange(
            "order is not a permutation of the cells",
            {"order": order, "expected_cells": len(verifier.universe)},
        )

    steps: List[StepInfo] = []
    prior: Set[int] = {order[0]}
    last = len(order) - 1
    for m in range(1, len(order)):
        result = verifier.check_step(prior, order[m], m, m == last)
        if isinstance(result, Violation):
            log.debug(f"shelling 위반: step={m}, kind={result.kind.value}")
            return result
        steps.append(result)
        prior.add(order[m])

    if steps and steps[-1].ell == -1:
        log.info("마지막 단계가 구면 마감 (ell=-1) 입니다")
    return Shelling(order=order, steps=steps, verified=True)
