"""
리포트 생성

메쉬 하나에 대해 (k, 전략) 별 추정값과 FEEC 기준 상수를 모아 ReportSchema 로 만들고,
표 (2d / 3d / ref-tet) 는 CSV 로 출력합니다. CSV 는 유효숫자 4 자리, JSON 은 전체 정밀도.
"""
import asyncio
import csv
import io
from datetime import datetime, timezone
from typing import Dict, List, Optional, Sequence

import numpy as np

from app import __version__
from app.config import settings
from app.exceptions import PFBoundError
from app.interface.examples import TABLE_2D, TABLE_3D, example_mesh, reference_tetrahedron
from app.mesh_core.complex import SimplicialComplex
from app.models.estimate import EstimateMode, EstimateResult, Strategy
from app.models.mesh import MeshSummary
from app.models.report import RatioEntry, ReferenceEntry, ReportSchema
from app.pf_bounds.estimator import estimate_pf
from app.reference_feec.reference import operator_name, reference_pf_constant
from app.simplex_geometry.geometry import SimplexGeometryCalculator
from app.simplex_geometry.ratios import mesh_ratios
from app.utils.logger import log

GRADIENT_STRATEGIES = [Strategy.GRADIENT_GLUE, Strategy.GRADIENT_PATCH]
# 기준 테트라 표의 경계조건 face 집합 (F_i 는 정점 i 의 대면)
REF_TET_BC = [
    ("F0-F3", [0, 1, 2, 3]),
    ("F1-F3", [1, 2, 3]),
    ("F2-F3", [2, 3]),
    ("F3", [3]),
    ("none", []),
]


def mesh_summary(c: SimplicialComplex, name: str) -> MeshSummary:
    """메쉬 메타데이터와 형상 측도"""
    geometries = [
        SimplexGeometryCalculator.geometry_of(cell, c.coords) for cell in c.cells
    ]
    return MeshSummary(
        name=name,
        n=c.n,
        num_vertices=c.num_vertices,
        num_cells=c.num_cells,
        euler_characteristic=c.euler_characteristic(),
        max_kappa_A=max(g.kappa_A for g in geometries),
        max_kappa_M=max(float(g.kappa_M or 0.0) for g in geometries),
        ratios=mesh_ratios(c),
    )


def _strategies_for(k: int) -> List[Strategy]:
    if k == 0:
        return GRADIENT_STRATEGIES + [Strategy.EXTERIOR_SHELLING, Strategy.APPENDIX_PRODUCT]
    return [Strategy.EXTERIOR_SHELLING, Strategy.APPENDIX_PRODUCT]


def ratio_entries(
    n: int, estimates: Sequence[EstimateResult], references: Sequence[ReferenceEntry]
) -> List[RatioEntry]:
    """경계조건 없는 기준 상수와 같은 k 의 추정값마다 est/ref"""
    refs: Dict[int, float] = {
        entry.k: entry.result.constant for entry in references if entry.bc == "none"
    }
    out: List[RatioEntry] = []
    for est in estimates:
        if est.k not in refs:
            continue
        ref = refs[est.k]
        out.append(
            RatioEntry(
                operator=operator_name(n, est.k),
                strategy=est.strategy.value,
                ref=ref,
                est=est.constant,
                ratio=est.constant / ref,
            )
        )
    return out


def build_report(
    name: str,
    c: SimplicialComplex,
    ks: Optional[Sequence[int]] = None,
    p: float = 2.0,
    mode: Optional[EstimateMode] = None,
    refinements: Optional[int] = None,
    with_reference: bool = True,
    seed: Optional[int] = None,
    budget: Optional[int] = None,
) -> ReportSchema:
    """
    메쉬 하나의 전체 리포트

    Args:
        name: 메쉬 이름
        c: 메쉬
        ks: 계산할 degree (기본: 0..n-1)
        p: Lebesgue 지수 (기준 상수는 p=2 에서만)
        refinements: FEEC 세분 횟수
        with_reference: 기준 상수 계산 여부

    Returns:
        ReportSchema (실패한 전략은 config.failures 에 기록)
    """
    ks = list(range(c.n)) if ks is None else list(ks)
    config = settings.get_search_config()
    if seed is not None:
        config = config.model_copy(update={"seed": seed})
    if budget is not None:
        config = config.model_copy(update={"budget": budget})

    estimates: List[EstimateResult] = []
    failures: List[Dict[str, str]] = []
    for k in ks:
        for strategy in _strategies_for(k):
            try:
                estimates.append(
                    estimate_pf(c, k=k, p=p, strategy=strategy, search_config=config, mode=mode)
                )
            except PFBoundError as e:
                log.warning(f"{name}: {strategy.value} (k={k}) 실패 - {e.code}: {e}")
                failures.append({"k": str(k), "strategy": strategy.value, "error": e.code})

    references: List[ReferenceEntry] = []
    if with_reference and p == 2.0:
        for k in ks:
            try:
                result = reference_pf_constant(c, k, bc="none", refinements=refinements)
            except PFBoundError as e:
                log.warning(f"{name}: 기준 상수 (k={k}) 실패 - {e.code}: {e}")
                failures.append({"k": str(k), "strategy": "reference", "error": e.code})
                continue
            references.append(ReferenceEntry(operator=operator_name(c.n, k), k=k, result=result))

    return ReportSchema(
        tool_version=__version__,
        schema_version=settings.report_schema_version,
        generated_at=datetime.now(timezone.utc).isoformat(),
        mesh=mesh_summary(c, name),
        estimates=estimates,
        references=references,
        ratios=ratio_entries(c.n, estimates, references),
        config={
            "p": p,
            "mode": (mode or settings.get_estimate_mode()).value,
            "combine_rule": settings.combine_rule,
            "refinements": settings.default_refinements if refinements is None else refinements,
            "search": config.model_dump(),
            "failures": failures,
        },
    )


def report_json(report: ReportSchema, with_timestamp: bool = True) -> str:
    """들여쓴 JSON (with_timestamp=False 면 비교용으로 generated_at 제외)"""
    exclude = None if with_timestamp else {"generated_at"}
    return report.model_dump_json(indent=2, exclude=exclude)


def report_schema() -> dict:
    """리포트 JSON schema (schema_version 포함)"""
    schema = ReportSchema.model_json_schema()
    schema["$comment"] = f"schema_version {settings.report_schema_version}"
    return schema


def fmt(value: Optional[float]) -> str:
    """유효숫자 4 자리"""
    if value is None or not np.isfinite(value):
        return ""
    return f"{value:.4g}"


def _best(report: ReportSchema, k: int, strategies: Sequence[Strategy]) -> Optional[float]:
    values = [e.constant for e in report.estimates if e.k == k and e.strategy in strategies]
    return min(values) if values else None


def _reference(report: ReportSchema, k: int) -> Optional[float]:
    for entry in report.references:
        if entry.k == k and entry.bc == "none":
            return entry.result.constant
    return None


def _ratio(est: Optional[float], ref: Optional[float]) -> Optional[float]:
    if est is None or ref is None:
        return None
    return est / ref


def table_rows(reports: Sequence[ReportSchema]) -> List[List[str]]:
    """
    연산자별 (ref, est, ratio) 열

    grad 는 gradient 전략과 exterior shelling 을 따로, 나머지는 exterior shelling.
    """
    n = reports[0].mesh.n
    header = ["mesh"]
    for k in range(n):
        op = operator_name(n, k)
        header += [f"{op}_ref", f"{op}_est", f"{op}_ratio"]
        if k == 0:
            header += ["grad_est_shelling", "grad_ratio_shelling"]
    rows = [header]
    for report in reports:
        row = [report.mesh.name]
        for k in range(n):
            ref = _reference(report, k)
            if k == 0:
                est = _best(report, 0, GRADIENT_STRATEGIES)
                shell = _best(report, 0, [Strategy.EXTERIOR_SHELLING])
                row += [fmt(ref), fmt(est), fmt(_ratio(est, ref))]
                row += [fmt(shell), fmt(_ratio(shell, ref))]
            else:
                est = _best(report, k, [Strategy.EXTERIOR_SHELLING])
                row += [fmt(ref), fmt(est), fmt(_ratio(est, ref))]
        rows.append(row)
    return rows


def ref_tet_rows(refinements: Optional[int] = None) -> List[List[str]]:
    """기준 정사면체의 부분 경계조건별 grad / curl / div 기준 상수"""
    c = reference_tetrahedron()
    faces = {i: tuple(v for v in range(4) if v != i) for i in range(4)}
    rows = [["bc", "grad", "curl", "div"]]
    for label, ids in REF_TET_BC:
        bc = [faces[i] for i in ids] if ids else "none"
        row = [label]
        for k in range(3):
            try:
                result = reference_pf_constant(c, k, bc=bc, refinements=refinements)
            except PFBoundError as e:
                log.warning(f"기준 정사면체 {label} (k={k}) 실패 - {e.code}: {e}")
                row.append("")
                continue
            row.append(fmt(result.constant))
        rows.append(row)
    return rows


def to_csv(rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    return buffer.getvalue()


async def build_reports(
    names: Sequence[str], refinements: Optional[int] = None, **kwargs
) -> List[ReportSchema]:
    """예제 메쉬별 리포트를 병렬로 계산 (결과는 names 순서)"""
    tasks = [
        asyncio.to_thread(build_report, name, example_mesh(name), refinements=refinements, **kwargs)
        for name in names
    ]
    return list(await asyncio.gather(*tasks))


def tables(which: str, refinements: Optional[int] = None, **kwargs) -> Dict[str, str]:
    """
    표 재현

    Args:
        which: 2d | 3d | ref-tet | all

    Returns:
        표 이름 -> CSV 문자열
    """
    if which not in ("2d", "3d", "ref-tet", "all"):
        raise ValueError(f"unknown table selection: {which}")
    out: Dict[str, str] = {}
    for key, names in (("2d", TABLE_2D), ("3d", TABLE_3D)):
        if which in (key, "all"):
            log.info(f"표 {key}: {', '.join(names)}")
            reports = asyncio.run(build_reports(names, refinements, **kwargs))
            out[key] = to_csv(table_rows(reports))
    if which in ("ref-tet", "all"):
        out["ref-tet"] = to_csv(ref_tet_rows(refinements))
    return out


def emit_report(reports: Sequence[ReportSchema], with_timestamp: bool = True) -> Dict[str, str]:
    """
    리포트 묶음 -> {"json": ..., "csv": ...}

    CSV 는 같은 차원의 메쉬만 받습니다.
    """
    if len({r.mesh.n for r in reports}) > 1:
        raise ValueError("reports must share the mesh dimension for a single table")
    exclude = None if with_timestamp else {"generated_at"}
    payload = "[\n" + ",\n".join(r.model_dump_json(indent=2, exclude=exclude) for r in reports)
    return {"json": payload + "\n]", "csv": to_csv(table_rows(reports))}
