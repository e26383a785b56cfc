import math

import pytest
from httpx import AsyncClient

from app.config import settings
from app.main import app
from app.models.requests import EstimateRequest


@pytest.mark.asyncio
class TestIntegration:
    """통합 테스트 - HTTP API 전체 흐름"""

    async def test_health_check(self):
        """헬스 체크"""
        async with AsyncClient(app=app, base_url="http://test") as client:
            response = await client.get("/health")

            assert response.status_code == 200
            data = response.json()
            assert data['status'] == 'healthy'
            assert 'version' in data
            assert data['examples'] > 0
            assert data['settings']['combine_rule'] == 'minkowski'

    async def test_root_endpoint(self):
        """루트 엔드포인트"""
        async with AsyncClient(app=app, base_url="http://test") as client:
            response = await client.get("/")

            assert response.status_code == 200
            assert 'text/html' in response.headers['content-type']
            assert 'PF Bound' in response.text

    async def test_examples(self):
        async with AsyncClient(app=app, base_url="http://test") as client:
            response = await client.get("/api/v1/examples")

            assert response.status_code == 200
            examples = {e['name']: e for e in response.json()['examples']}
            assert examples['square2'] == {'name': 'square2', 'n': 2, 'vertices': 4, 'cells': 2}
            assert examples['fichera24']['n'] == 3

    async def test_estimate_example(self):
        """정사각형 gradient 상수: 2 sqrt3 / pi"""
        async with AsyncClient(app=app, base_url="http://test") as client:
            request_data = {"example": "square2", "k": 0, "strategy": "gradient_glue"}

            response = await client.post("/api/v1/estimate", json=request_data)

            assert response.status_code == 200
            data = response.json()
            assert data['constant'] == pytest.approx(2 * math.sqrt(3) / math.pi)
            assert sorted(data['traversal']) == [0, 1]
            assert len(data['ledger']['C']) == 2

    async def test_estimate_defaults_follow_settings(self, monkeypatch):
        """mode / seed / budget 를 생략하면 설정값을 따름"""
        monkeypatch.setattr(settings, "estimate_mode", "proved")
        async with AsyncClient(app=app, base_url="http://test") as client:
            request_data = {"example": "square2", "k": 0, "strategy": "gradient_glue"}

            response = await client.post("/api/v1/estimate", json=request_data)

            assert response.status_code == 200
            data = response.json()
            assert data['mode'] == 'proved'
            assert 'hilbert_local' not in data['flags']

        request = EstimateRequest(example="square2")
        assert request.mode is None and request.seed is None and request.budget is None

    async def test_estimate_inline_mesh(self):
        """인라인 메쉬도 같은 결과"""
        async with AsyncClient(app=app, base_url="http://test") as client:
            request_data = {
                "mesh": {
                    "n": 2,
                    "coords": [[0, 0], [1, 0], [1, 1], [0, 1]],
                    "cells": [[0, 1, 2], [0, 2, 3]],
                },
                "k": 1,
            }

            response = await client.post("/api/v1/estimate", json=request_data)

            assert response.status_code == 200
            data = response.json()
            assert data['strategy'] == 'exterior_shelling'
            assert 'conjecture:start' in data['flags']

    async def test_estimate_unknown_example(self):
        """도메인 오류는 422 와 구조화된 진단"""
        async with AsyncClient(app=app, base_url="http://test") as client:
            response = await client.post("/api/v1/estimate", json={"example": "nosuch"})

            assert response.status_code == 422
            data = response.json()
            assert data['error'] == 'UnknownExample'
            assert 'square2' in data['details']['available']

    async def test_estimate_degenerate_mesh(self):
        async with AsyncClient(app=app, base_url="http://test") as client:
            request_data = {
                "mesh": {"n": 2, "coords": [[0, 0], [1, 1], [2, 2]], "cells": [[0, 1, 2]]}
            }

            response = await client.post("/api/v1/estimate", json=request_data)

            assert response.status_code == 422
            assert response.json()['error'] == 'DegenerateCell'

    async def test_selector_needs_exactly_one(self):
        async with AsyncClient(app=app, base_url="http://test") as client:
            response = await client.post("/api/v1/estimate", json={})

            assert response.status_code == 422

    async def test_verify_annulus_strip(self):
        """고리 영역 strip 순서는 단계 6 에서 실패"""
        async with AsyncClient(app=app, base_url="http://test") as client:
            request_data = {"example": "annulus8", "order": [0, 1, 2, 3, 4, 5, 6, 7]}

            response = await client.post("/api/v1/verify-shelling", json=request_data)

            assert response.status_code == 200
            data = response.json()
            assert data['is_shelling'] is False
            assert data['violation']['step'] == 6
            assert data['violation']['kind'] == 'isolated_vertex'

    async def test_verify_shelling(self):
        async with AsyncClient(app=app, base_url="http://test") as client:
            request_data = {"example": "Lshape4", "order": [0, 1, 2, 3]}

            response = await client.post("/api/v1/verify-shelling", json=request_data)

            assert response.status_code == 200
            data = response.json()
            assert data['is_shelling'] is True
            assert len(data['shelling']['steps']) == 3

    async def test_verify_bad_order(self):
        async with AsyncClient(app=app, base_url="http://test") as client:
            request_data = {"example": "square2", "order": [0, 0]}

            response = await client.post("/api/v1/verify-shelling", json=request_data)

            assert response.status_code == 422
            assert response.json()['error'] == 'IndexOutOfRange'

    async def test_reference(self):
        async with AsyncClient(app=app, base_url="http://test") as client:
            request_data = {"example": "square2", "k": 0, "refinements": 3}

            response = await client.post("/api/v1/reference", json=request_data)

            assert response.status_code == 200
            data = response.json()
            assert data['constant'] == pytest.approx(1 / math.pi, rel=3e-2)
            assert data['kernel_dim'] == 1

    async def test_reference_bad_selection(self):
        async with AsyncClient(app=app, base_url="http://test") as client:
            request_data = {"example": "square2", "bc": "some"}

            response = await client.post("/api/v1/reference", json=request_data)

            assert response.status_code == 400
