"""
도메인 예외 계층

모든 예외는 PFBoundError를 상속하며 code(에러 이름)와 details(진단 정보)를 가집니다.
HTTP 계층은 422, CLI는 exit code 1 + JSON 진단으로 변환합니다.
"""
from typing import Any, Dict, Optional


class PFBoundError(Exception):
    """모든 도메인 에러의 베이스"""

    code: str = "PFBoundError"

    def __init__(self, message: str = "", details: Optional[Dict[str, Any]] = None):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details: Dict[str, Any] = details or {}

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls.code = cls.__name__

    def to_dict(self) -> Dict[str, Any]:
        """JSON 진단용 딕셔너리"""
        return {"error": self.code, "message": self.message, "details": self.details}


# ---------------------------------------------------------------- mesh
class MeshError(PFBoundError):
    """메쉬 구성/검증 에러"""


class DegenerateCell(MeshError):
    """부피 0 (또는 비유한 좌표) 셀"""


class DuplicateCell(MeshError):
    """중복 셀"""


class NonRealizable(MeshError):
    """셀 내부가 겹쳐 기하적으로 실현 불가"""


class IndexOutOfRange(MeshError):
    """정점/셀 인덱스 범위 초과"""


class NotPseudomanifold(MeshError):
    """3개 이상의 셀을 가진 (n-1)-face 존재"""


class SimplexNotFound(MeshError):
    """complex에 없는 simplex"""


class Disconnected(MeshError):
    """face-connected 하지 않은 complex"""


class NotInteriorSimplex(MeshError):
    """경계 simplex에 대해 내부 simplex 연산 요청"""


class UnsupportedDimension(MeshError):
    """지원하지 않는 차원"""


class InvalidBoundarySelection(MeshError):
    """경계가 아닌 face를 경계조건으로 선택"""


class UnknownExample(MeshError):
    """등록되지 않은 예제 메쉬 이름"""


class ParseError(MeshError):
    """메쉬/순서 파일 파싱 에러 (1-based 라인 번호 포함)"""

    def __init__(self, message: str, line: int = 0, details: Optional[Dict[str, Any]] = None):
        details = dict(details or {})
        details["line"] = line
        super().__init__(f"line {line}: {message}", details)
        self.line = line


# ------------------------------------------------------------ geometry
class GeometryError(PFBoundError):
    """기하 계산 에러"""


class NotFaceNeighbors(GeometryError):
    """두 셀이 정확히 하나의 (n-1)-face를 공유하지 않음"""


class SingularMap(GeometryError):
    """det = 0 인 affine map"""


class DimensionTooLarge(GeometryError):
    """kappa_M 전수 열거 차원 한도 초과"""


class StarShapeViolation(GeometryError):
    """star 내접구 검증 실패"""


class EmptyComplement(GeometryError):
    """st(S) \\ T 가 비어 있음"""


class PivotDegenerate(GeometryError):
    """pivot 방향 벡터의 길이가 0"""


# ----------------------------------------------------------- constants
class ConstantError(PFBoundError):
    """상수 계산 파라미터 에러"""


class ExponentOutOfRange(ConstantError):
    """허용 범위 밖의 Lebesgue 지수 p"""


class DegreeOutOfRange(ConstantError):
    """허용 범위 밖의 form degree k"""


class ModeExponentMismatch(ConstantError):
    """p=2 전용 모드를 다른 p로 호출"""


# ------------------------------------------------------------ shelling
class ShellingError(PFBoundError):
    """shelling 구성/탐색 에러"""


class Not2Ball(ShellingError):
    """2-ball 이 아닌 complex"""


class StarNotShellable(ShellingError):
    """star shelling 구성 실패"""


class BudgetExhausted(ShellingError):
    """탐색 예산 소진 (발견된 shelling 없음)"""


class NotShellableWithinBudget(ShellingError):
    """예산 내 전수 탐색으로 shelling 없음"""


class TooManyCells(ShellingError):
    """brute force 한도 초과"""


class SphereShelling(ShellingError):
    """마지막 단계가 구면을 닫음 (ell = -1)"""


class ForwardReferenceViolation(ShellingError):
    """recursion row 가 이후 인덱스를 참조"""


# -------------------------------------------------------------- solver
class SolverError(PFBoundError):
    """고유값 솔버 에러"""


class SolverDivergence(SolverError):
    """잔차 과대 또는 dense/sparse 불일치"""


class KernelMisdetection(SolverError):
    """kernel 과 양의 고유값 분리 실패"""


class NoFreeDofs(SolverError):
    """경계조건 / 제약을 적용하면 남는 자유도가 없음 (세분 부족)"""
