from pydantic import BaseModel, Field
from typing import List, Optional, Tuple
from enum import Enum


Simplex = Tuple[int, ...]


class FaceKind(str, Enum):
    """(n-1)-face 분류"""
    INTERIOR = "interior"  # 셀 2개
    BOUNDARY = "boundary"  # 셀 1개


class InterfaceSet(BaseModel):
    """셀과 이전 셀 합집합의 simplicial 교집합"""
    shared_maximal: List[Simplex] = Field(default_factory=list, description="극대 공유 simplex")
    as_faces: Optional[List[Simplex]] = Field(
        None, description="극대 공유 simplex 가 모두 (n-1)-face 일 때의 face 목록"
    )

    @property
    def is_empty(self) -> bool:
        return not self.shared_maximal


class SimplexGeometry(BaseModel):
    """simplex 의 계량 정보"""
    volume: float = Field(..., description="부피 (> 0)")
    diameter: float = Field(..., description="지름 delta")
    min_height: float = Field(..., description="최소 꼭짓점 높이 h")
    heights: List[float] = Field(..., description="꼭짓점별 높이")
    height_vectors: List[List[float]] = Field(..., description="대면 hyperplane 발 -> 꼭짓점 벡터")
    barycenter: List[float] = Field(..., description="무게중심")
    kappa_A: float = Field(..., description="aspect shape measure delta/h")
    kappa_M: Optional[float] = Field(None, description="algebraic shape measure")
    kappa_M_fallback: bool = Field(default=False, description="n*kappa_A 대체값 사용 여부")

    @property
    def n(self) -> int:
        return len(self.barycenter)


class MeshRatios(BaseModel):
    """메쉬 전역 비율"""
    C_rho: float = Field(..., description="face 이웃 셀 부피비 최대")
    C_theta: float = Field(..., description="교차 셀 지름비 최대")
    C_xi: float = Field(..., description="face reflection Jacobian 노름 최대")
    single_cell: bool = Field(default=False, description="셀 1개 메쉬 (관례상 모두 1)")

    class Config:
        json_schema_extra = {
            "example": {"C_rho": 1.0, "C_theta": 1.0, "C_xi": 1.2808, "single_cell": False}
        }


class MeshSummary(BaseModel):
    """리포트용 메쉬 메타데이터"""
    name: str = Field(..., description="메쉬 이름")
    n: int = Field(..., description="차원")
    num_vertices: int = Field(..., description="정점 수")
    num_cells: int = Field(..., description="n-셀 수")
    euler_characteristic: int = Field(..., description="Euler 지표")
    max_kappa_A: float = Field(..., description="최대 kappa_A")
    max_kappa_M: float = Field(..., description="최대 kappa_M")
    ratios: MeshRatios = Field(..., description="C_rho, C_theta, C_xi")
