from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional
from enum import Enum

import numpy as np

from app.models.constants import ConstantValue


class Strategy(str, Enum):
    """추정 전략"""
    GRADIENT_GLUE = "gradient_glue"
    GRADIENT_PATCH = "gradient_patch"
    EXTERIOR_SHELLING = "exterior_shelling"
    APPENDIX_PRODUCT = "appendix_product"


class EstimateMode(str, Enum):
    """국소 상수 모드"""
    PROVED = "proved"
    HILBERT = "hilbert"


class CombineRule(str, Enum):
    """다중 셀 U 에 대한 노름 분배 규칙"""
    MINKOWSKI = "minkowski"
    L1 = "l1"


class BoundLedger(BaseModel):
    """하삼각 계수 행렬 C_{m,l} 와 행별 출처"""
    C: List[List[float]] = Field(..., description="(M+1)x(M+1) 하삼각 비음수 행렬")
    provenance: List[List[str]] = Field(default_factory=list, description="행별 출처 목록")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.C, dtype=float)

    @property
    def size(self) -> int:
        return len(self.C)

    class Config:
        json_schema_extra = {
            "example": {
                "C": [[0.450, 0.0], [0.900, 0.450]],
                "provenance": [["start:convex.gradient"], ["step1:a", "step1:b"]],
            }
        }


class EstimateResult(BaseModel):
    """Poincare-Friedrichs 상수 상한 추정 결과"""
    constant: float = Field(..., description="최종 상수 (holder_aggregate(C, p))")
    k: int = Field(..., description="form degree")
    p: float = Field(..., description="Lebesgue 지수")
    strategy: Strategy = Field(..., description="추정 전략")
    mode: EstimateMode = Field(default=EstimateMode.HILBERT, description="국소 상수 모드")
    combine_rule: CombineRule = Field(default=CombineRule.MINKOWSKI, description="분배 규칙")
    traversal: List[int] = Field(..., description="셀 순서 (shelling 또는 tree preorder)")
    predecessors: Optional[Dict[int, int]] = Field(None, description="tree 의 부모 위치")
    ledger: BoundLedger = Field(..., description="unwrap 된 계수 행렬")
    start_constant: ConstantValue = Field(..., description="시작 셀 상수")
    proved_constant: Optional[float] = Field(None, description="증명된 상수만 쓴 값")
    l1_constant: Optional[float] = Field(None, description="l1 분배로 계산한 값")
    flags: List[str] = Field(default_factory=list, description="provenance 플래그")
    diagnostics: Dict[str, Any] = Field(default_factory=dict, description="탐색 진단")

    class Config:
        json_schema_extra = {
            "example": {
                "constant": 1.1025,
                "k": 0,
                "p": 2.0,
                "strategy": "exterior_shelling",
                "mode": "hilbert",
                "combine_rule": "minkowski",
                "traversal": [0, 1],
                "ledger": {"C": [[0.450, 0.0], [0.900, 0.450]], "provenance": []},
                "start_constant": {"value": 0.450, "formula_id": "convex.gradient"},
            }
        }


class RecursionGroup(BaseModel):
    """이전 셀 묶음 U 의 ||w|| 행에 곱하는 계수"""
    coef: float = Field(..., description="전달 계수 (>= 0)")
    members: List[int] = Field(..., description="U 를 이루는 이전 위치")


class RecursionRow(BaseModel):
    """단계 m 의 재귀 부등식 ||w||_m <= sum a_l ||du||_l + sum coef ||w||_U"""
    index: int = Field(..., description="위치 m")
    a: Dict[int, float] = Field(default_factory=dict, description="위치 -> ||du|| 계수")
    groups: List[RecursionGroup] = Field(default_factory=list, description="||w|| 전달 항")
    provenance: List[str] = Field(default_factory=list, description="계수 출처")

    class Config:
        json_schema_extra = {
            "example": {
                "index": 1,
                "a": {"1": 0.450, "0": 0.450},
                "groups": [{"coef": 1.0, "members": [0]}],
                "provenance": ["mixed_bc.gradient.hilbert", "face_reflection"],
            }
        }


class RecursionPlan(BaseModel):
    """순회 하나에 대한 시작 상수와 단계별 row"""
    start_constant: ConstantValue = Field(..., description="T_0 상수")
    rows: List[RecursionRow] = Field(..., description="위치 0..M 의 row")
    flags: List[str] = Field(default_factory=list, description="provenance 플래그")
