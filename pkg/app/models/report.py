from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional

from app.models.estimate import EstimateResult
from app.models.mesh import MeshSummary
from app.models.reference import EigenResult


class ReferenceEntry(BaseModel):
    """연산자별 기준 상수"""
    operator: str = Field(..., description="grad | curl | div")
    k: int = Field(..., description="form degree")
    bc: str = Field(default="none", description="경계조건 설명")
    result: EigenResult = Field(..., description="FEEC 결과")


class RatioEntry(BaseModel):
    """est/ref 비율"""
    operator: str = Field(..., description="grad | curl | div")
    strategy: str = Field(..., description="추정 전략")
    ref: float = Field(..., description="기준 상수")
    est: float = Field(..., description="추정 상수")
    ratio: float = Field(..., description="est/ref")


class ReportSchema(BaseModel):
    """메쉬 하나에 대한 전체 리포트"""
    tool_version: str = Field(..., description="도구 버전")
    schema_version: str = Field(..., description="리포트 스키마 버전")
    generated_at: Optional[str] = Field(None, description="생성 시각 (비교에서 제외)")
    mesh: MeshSummary = Field(..., description="메쉬 메타데이터")
    estimates: List[EstimateResult] = Field(default_factory=list, description="추정 결과")
    references: List[ReferenceEntry] = Field(default_factory=list, description="기준 상수")
    ratios: List[RatioEntry] = Field(default_factory=list, description="est/ref 비율")
    config: Dict[str, Any] = Field(default_factory=dict, description="설정 echo")
