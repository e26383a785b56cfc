from app.models.constants import LebesgueExponent, ConstantValue
from app.models.mesh import Simplex, FaceKind, InterfaceSet, SimplexGeometry, MeshRatios, MeshSummary
from app.models.shelling import (
    ViolationKind,
    StepInfo,
    Violation,
    Shelling,
    SpanningTree,
    SearchConfig,
    SearchOutcome,
)
from app.models.maps import (
    PieceKind,
    PieceMeta,
    StarShapeInfo,
    TransferConstants,
    MapVerificationReport,
)
from app.models.estimate import (
    Strategy,
    EstimateMode,
    CombineRule,
    BoundLedger,
    EstimateResult,
    RecursionGroup,
    RecursionRow,
    RecursionPlan,
)
from app.models.reference import Constraint, EigenResult
from app.models.report import ReferenceEntry, RatioEntry, ReportSchema
from app.models.requests import (
    MeshPayload,
    MeshSelector,
    EstimateRequest,
    ReferenceRequest,
    VerifyShellingRequest,
)

__all__ = [
    "LebesgueExponent",
    "ConstantValue",
    "Simplex",
    "FaceKind",
    "InterfaceSet",
    "SimplexGeometry",
    "MeshRatios",
    "MeshSummary",
    "ViolationKind",
    "StepInfo",
    "Violation",
    "Shelling",
    "SpanningTree",
    "SearchConfig",
    "SearchOutcome",
    "PieceKind",
    "PieceMeta",
    "StarShapeInfo",
    "TransferConstants",
    "MapVerificationReport",
    "Strategy",
    "EstimateMode",
    "CombineRule",
    "BoundLedger",
    "EstimateResult",
    "RecursionGroup",
    "RecursionRow",
    "RecursionPlan",
    "Constraint",
    "EigenResult",
    "ReferenceEntry",
    "RatioEntry",
    "ReportSchema",
    "MeshPayload",
    "MeshSelector",
    "EstimateRequest",
    "ReferenceRequest",
    "VerifyShellingRequest",
]
