from pydantic import BaseModel, Field
from typing import Optional
from enum import Enum


class Constraint(str, Enum):
    """kernel 처리 방식"""
    NONE = "none"
    MIXED_DIVFREE = "mixed_divfree"


class EigenResult(BaseModel):
    """FEEC 기준 상수"""
    lambda_min_positive: float = Field(..., description="최소 양의 고유값")
    kernel_dim: int = Field(..., description="검출된 kernel 차원")
    constant: float = Field(..., description="lambda^{-1/2}")
    refinement_level: int = Field(default=0, description="균일 세분 횟수")
    k: int = Field(default=0, description="form degree")
    n_dofs: int = Field(default=0, description="자유 자유도 수")
    solver: str = Field(default="dense", description="dense | shift_invert | saddle_point")
    residual: float = Field(default=0.0, description="상대 잔차")
    route: str = Field(default="direct", description="direct | dual_dirichlet")
    cross_check_rel_diff: Optional[float] = Field(
        None, description="교차 확인 상대 차이 (dense/sparse 또는 mixed/penalty)"
    )

    class Config:
        json_schema_extra = {
            "example": {
                "lambda_min_positive": 9.8696,
                "kernel_dim": 1,
                "constant": 0.3183,
                "refinement_level": 4,
                "k": 0,
                "n_dofs": 289,
                "solver": "dense",
            }
        }
