from pydantic import BaseModel, Field
from typing import Dict, List
from enum import Enum


class PieceKind(str, Enum):
    """piecewise affine map 조각 종류"""
    THETA = "theta"                    # star reflection 조각
    FACE_REFLECTION = "face_reflection"
    CONTRACTION = "contraction"        # Phi on K


class PieceMeta(BaseModel):
    """조각별 특이값 데이터 (closed form)"""
    kind: PieceKind = Field(..., description="조각 종류")
    rho: float = Field(..., description="pivot 비율 rho")
    tan_beta: float = Field(..., description="tan(beta) = |b_z|/|h_z|")
    sigma_max: float = Field(..., description="closed-form 최대 특이값")
    sigma_min: float = Field(..., description="closed-form 최소 특이값")
    det: float = Field(..., description="|det J|")


class StarShapeInfo(BaseModel):
    """star 의 star-shaped 중심/반지름"""
    center: List[float] = Field(..., description="z_S")
    radius: float = Field(..., description="varrho = h/(ell+1)")
    ell: int = Field(..., description="dim(S)")
    min_height: float = Field(..., description="S 꼭짓점의 star 셀 내 최소 높이")
    verified: bool = Field(default=False, description="경계 hyperplane 검증 통과")


class TransferConstants(BaseModel):
    """pullback 전달 상수"""
    k: int = Field(..., description="form degree")
    p: float = Field(..., description="Lebesgue 지수")
    forward: float = Field(..., description="max_piece sigma_1..sigma_k |det|^{-1/p}")
    inverse: float = Field(..., description="역사상의 같은 양")
    bound_forward: float = Field(..., description="mu_{T,ell} 기반 closed-form 상한")
    bound_inverse: float = Field(..., description="역사상 closed-form 상한")


class MapVerificationReport(BaseModel):
    """piecewise map 검증 결과"""
    passed: bool = Field(..., description="전체 통과 여부")
    checks: Dict[str, bool] = Field(default_factory=dict, description="항목별 결과")
    failures: List[str] = Field(default_factory=list, description="실패 항목 설명")
