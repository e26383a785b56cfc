from pydantic import BaseModel, Field
from typing import Dict, List, Optional
from enum import Enum

from app.models.mesh import Simplex


class ViolationKind(str, Enum):
    """shelling 위반 종류"""
    ISOLATED_VERTEX = "isolated_vertex"
    LOWER_DIM_INTERSECTION = "lower_dim_intersection"
    EMPTY_INTERFACE = "empty_interface"
    STAR_NOT_COMPLETED = "star_not_completed"


class StepInfo(BaseModel):
    """shelling 단계 m (>= 1) 의 interface 정보"""
    step: int = Field(..., description="단계 인덱스 m")
    cell: int = Field(..., description="셀 T_m (전역 셀 인덱스)")
    interface_faces: List[Simplex] = Field(..., description="Gamma_m 을 이루는 T_m 의 face")
    S: Simplex = Field(..., description="interface face 들의 교집합 S_m (구면 마감이면 빈 tuple)")
    ell: int = Field(..., description="dim(S_m), 구면 마감이면 -1")
    U_prev: List[int] = Field(default_factory=list, description="st(S_m) \\ T_m 의 이전 셀")
    shared_face_count: int = Field(..., description="n - ell")
    star_complete: bool = Field(default=True, description="st(S_m) 가 T_0..T_m 에 포함되는지")


class Violation(BaseModel):
    """shelling 검증 실패"""
    step: int = Field(..., description="실패 단계")
    kind: ViolationKind = Field(..., description="위반 종류")
    witness: List[Simplex] = Field(default_factory=list, description="위반 증거 simplex")

    class Config:
        json_schema_extra = {
            "example": {"step": 6, "kind": "isolated_vertex", "witness": [[0]]}
        }


class Shelling(BaseModel):
    """n-셀 순서와 단계별 정보"""
    order: List[int] = Field(..., description="셀 순서 T_0..T_M")
    steps: List[StepInfo] = Field(default_factory=list, description="m >= 1 단계 정보")
    verified: bool = Field(default=False, description="verify_shelling 통과 여부")


class SpanningTree(BaseModel):
    """face-connection 그래프의 DFS spanning tree"""
    root: int = Field(..., description="루트 셀")
    order: List[int] = Field(..., description="DFS preorder 셀 순서")
    predecessor: Dict[int, int] = Field(
        default_factory=dict, description="위치 m -> 부모 위치 varpi(m) < m"
    )


class SearchConfig(BaseModel):
    """shelling 탐색 설정"""
    seed: int = Field(default=0, description="tie-break 시드")
    budget: int = Field(default=1_000_000, description="verifier 호출 예산")
    per_root: int = Field(default=10, description="루트별 후보 shelling 수")
    k: int = Field(default=0, description="form degree")
    p: float = Field(default=2.0, description="Lebesgue 지수")


class SearchOutcome(BaseModel):
    """탐색 결과와 진단"""
    shelling: Shelling = Field(..., description="최선 shelling")
    score: float = Field(..., description="최선 shelling 의 비용 (추정 상수)")
    verifier_calls: int = Field(..., description="사용한 verifier 호출 수")
    candidates: int = Field(..., description="평가한 shelling 수")
    root_scores: Dict[int, List[float]] = Field(default_factory=dict, description="루트별 후보 비용")
    fallback: Optional[str] = Field(None, description="대체 경로 (예: shell_2_ball)")
