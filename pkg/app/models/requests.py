from pydantic import BaseModel, Field, model_validator
from typing import List, Optional

from app.models.estimate import EstimateMode, Strategy


class MeshPayload(BaseModel):
    """인라인 메쉬"""
    n: int = Field(..., description="차원")
    coords: List[List[float]] = Field(..., description="정점 좌표")
    cells: List[List[int]] = Field(..., description="n-셀 (정점 id)")


class MeshSelector(BaseModel):
    """예제 이름 또는 인라인 메쉬 중 하나"""
    example: Optional[str] = Field(None, description="예제 메쉬 이름 (예: square2)")
    mesh: Optional[MeshPayload] = Field(None, description="인라인 메쉬")

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.example is None) == (self.mesh is None):
            raise ValueError("exactly one of 'example' or 'mesh' is required")
        return self


class EstimateRequest(MeshSelector):
    """상수 추정 요청"""
    k: int = Field(default=0, description="form degree")
    p: float = Field(default=2.0, description="Lebesgue 지수")
    strategy: Strategy = Field(default=Strategy.EXTERIOR_SHELLING, description="전략")
    mode: Optional[EstimateMode] = Field(None, description="국소 상수 모드 (기본: 설정값)")
    seed: Optional[int] = Field(None, description="탐색 시드 (기본: 설정값)")
    budget: Optional[int] = Field(None, description="verifier 호출 예산 (기본: 설정값)")

    class Config:
        json_schema_extra = {
            "example": {"example": "square2", "k": 0, "p": 2.0, "strategy": "exterior_shelling"}
        }


class ReferenceRequest(MeshSelector):
    """FEEC 기준 상수 요청"""
    k: int = Field(default=0, description="form degree")
    bc: str = Field(default="none", description="none | all")
    refinements: Optional[int] = Field(None, description="균일 세분 횟수 (기본: 설정값)")


class VerifyShellingRequest(MeshSelector):
    """shelling 검증 요청"""
    order: List[int] = Field(..., description="셀 순서")
