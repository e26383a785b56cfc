import asyncio
from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import HTMLResponse, JSONResponse

from app import __version__
from app.config import settings
from app.exceptions import PFBoundError
from app.interface.examples import EXAMPLES, example_mesh
from app.mesh_core.complex import SimplicialComplex, build_complex
from app.models.estimate import EstimateResult
from app.models.reference import EigenResult
from app.models.requests import (
    EstimateRequest,
    MeshSelector,
    ReferenceRequest,
    VerifyShellingRequest,
)
from app.models.shelling import Violation
from app.pf_bounds.estimator import estimate_pf
from app.reference_feec.reference import reference_pf_constant
from app.shelling_engine.verifier import verify_shelling
from app.utils.logger import log, setup_logger


# 애플리케이션 시작/종료 시 실행될 코드
@asynccontextmanager
async def lifespan(app: FastAPI):
    """애플리케이션 라이프사이클 관리"""
    # 시작 시
    setup_logger(settings.log_level)
    log.info("=" * 60)
    log.info("PF Bound 서비스 시작")
    log.info(f"Version: {__version__}")
    log.info(f"Host: {settings.host}:{settings.port}")
    log.info(f"Debug: {settings.debug}")
    log.info(f"추정 모드: {settings.estimate_mode}, 분배 규칙: {settings.combine_rule}")
    log.info(f"예제 메쉬: {len(EXAMPLES)}개")
    log.info("=" * 60)

    yield

    # 종료 시
    log.info("PF Bound 서비스 종료")


# FastAPI 앱 생성
app = FastAPI(
    title="PF Bound",
    description="단체 메쉬의 Poincare-Friedrichs 상수 상한 (shelling 기반) 과 FEEC 기준값",
    version=__version__,
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.allowed_hosts,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(PFBoundError)
async def domain_error_handler(request: Request, exc: PFBoundError):
    """도메인 에러 -> 422 + 진단"""
    log.warning(f"{request.url.path}: {exc.code} - {exc.message}")
    return JSONResponse(status_code=422, content=exc.to_dict())


def resolve_mesh(selector: MeshSelector) -> SimplicialComplex:
    """예제 이름 또는 인라인 메쉬"""
    if selector.example is not None:
        return example_mesh(selector.example)
    payload = selector.mesh
    return build_complex(payload.n, payload.coords, payload.cells)


@app.get("/", response_class=HTMLResponse)
async def root():
    """루트 엔드포인트"""
    return """
    <!DOCTYPE html>
    <html>
    <head>
        <title>PF Bound</title>
        <style>
            body { font-family: Arial, sans-serif; max-width: 800px; margin: 50px auto; padding: 20px; }
            h1 { color: #2c3e50; }
            .info { background: #ecf0f1; padding: 15px; border-radius: 5px; margin: 20px 0; }
            code { background: #34495e; color: #ecf0f1; padding: 2px 6px; border-radius: 3px; }
        </style>
    </head>
    <body>
        <h1>PF Bound</h1>
        <p>shelling 으로 조립한 단체 메쉬의 Poincare-Friedrichs 상수 상한과 FEEC 기준값</p>

        <div class="info">
            <h3>API 엔드포인트</h3>
            <ul>
                <li><code>GET /api/v1/examples</code> - 예제 메쉬 목록</li>
                <li><code>POST /api/v1/estimate</code> - 상수 상한 추정</li>
                <li><code>POST /api/v1/reference</code> - FEEC 기준 상수</li>
                <li><code>POST /api/v1/verify-shelling</code> - shelling 검증</li>
                <li><code>GET /health</code> - 헬스 체크</li>
                <li><code>GET /docs</code> - API 문서 (Swagger UI)</li>
            </ul>
        </div>
    </body>
    </html>
    """


@app.get("/api/v1/examples")
async def list_examples():
    """예제 메쉬 이름과 크기"""
    out = []
    for name in EXAMPLES:
        c = example_mesh(name)
        out.append({"name": name, "n": c.n, "vertices": c.num_vertices, "cells": c.num_cells})
    return {"examples": out}


@app.post("/api/v1/estimate", response_model=EstimateResult)
async def estimate(request: EstimateRequest):
    """
    PF 상수 상한 추정

    shelling (또는 spanning tree) 을 찾고 재귀 계수를 풀어 상수와 ledger 를 반환합니다.
    """
    log.info(f"추정 요청: example={request.example}, k={request.k}, p={request.p}")
    try:
        c = resolve_mesh(request)
        overrides = {
            key: value
            for key, value in (("seed", request.seed), ("budget", request.budget))
            if value is not None
        }
        config = settings.get_search_config(request.k, request.p).model_copy(update=overrides)
        return await asyncio.to_thread(
            estimate_pf,
            c,
            k=request.k,
            p=request.p,
            strategy=request.strategy,
            search_config=config,
            mode=request.mode,
        )
    except PFBoundError:
        raise
    except Exception as e:
        log.error(f"추정 중 오류 발생: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail="Internal server error")


@app.post("/api/v1/reference", response_model=EigenResult)
async def reference(request: ReferenceRequest):
    """FEEC 기준 상수 (p=2)"""
    log.info(f"기준 상수 요청: example={request.example}, k={request.k}, bc={request.bc}")
    try:
        c = resolve_mesh(request)
        return await asyncio.to_thread(
            reference_pf_constant, c, request.k, bc=request.bc, refinements=request.refinements
        )
    except PFBoundError:
        raise
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        log.error(f"기준 상수 계산 중 오류 발생: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail="Internal server error")


@app.post("/api/v1/verify-shelling")
async def verify(request: VerifyShellingRequest):
    """셀 순서 검증: shelling 이면 단계 정보, 아니면 첫 위반"""
    c = resolve_mesh(request)
    verdict = verify_shelling(c, request.order)
    if isinstance(verdict, Violation):
        return {"is_shelling": False, "violation": verdict.model_dump()}
    return {"is_shelling": True, "shelling": verdict.model_dump()}


@app.get("/health")
async def health_check():
    """
    헬스 체크

    시스템 상태 및 수치 설정을 반환합니다.
    """
    return {
        "status": "healthy",
        "version": __version__,
        "examples": len(EXAMPLES),
        "settings": {
            "estimate_mode": settings.estimate_mode,
            "combine_rule": settings.combine_rule,
            "search_budget": settings.search_budget,
            "dense_dof_limit": settings.dense_dof_limit,
            "default_refinements": settings.default_refinements,
        },
    }


# 개발 서버 실행 (uvicorn 대신 직접 실행 시)
if __name__ == "__main__":
    import uvicorn

    uvicorn.run("app.main:app", host=settings.host, port=settings.port, reload=settings.debug)
