from pydantic import BaseModel, Field, model_validator
from typing import Dict, List
import math


class LebesgueExponent(BaseModel):
    """Lebesgue 지수 p 와 켤레 지수 q (1/p + 1/q = 1)"""
    p: float = Field(..., description="지수 p (1 <= p <= inf)")

    @model_validator(mode="after")
    def _check_range(self):
        if not (self.p >= 1.0):
            raise ValueError("p must lie in [1, inf]")
        return self

    @property
    def q(self) -> float:
        """켤레 지수"""
        if self.p == 1.0:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def label(self) -> str:
        return "inf" if math.isinf(self.p) else f"{self.p:g}"


class ConstantValue(BaseModel):
    """출처(formula_id)와 가정 목록을 가진 상수 값"""
    value: float = Field(..., description="상수 값 (>= 0, 유한)")
    formula_id: str = Field(..., description="공식 식별자 (예: convex.efnt)")
    assumptions: List[str] = Field(default_factory=list, description="가정 목록 (convex, p=2 only 등)")
    conjecture: bool = Field(default=False, description="증명되지 않은 추정 기반 여부")
    alternatives: Dict[str, float] = Field(default_factory=dict, description="함께 계산된 다른 상수")

    @model_validator(mode="after")
    def _check_value(self):
        if not math.isfinite(self.value) or self.value < 0:
            raise ValueError(f"constant must be finite and nonnegative, got {self.value}")
        return self

    def scaled(self, factor: float, formula_id: str = "") -> "ConstantValue":
        """값에 factor 를 곱한 사본"""
        return self.model_copy(update={
            "value": self.value * factor,
            "formula_id": formula_id or self.formula_id,
        })

    class Config:
        json_schema_extra = {
            "example": {
                "value": 0.4501581580785531,
                "formula_id": "mixed_bc.gradient.hilbert",
                "assumptions": ["p=2", "hilbert improvement"],
                "conjecture": False,
                "alternatives": {"generic": 1.0},
            }
        }
