import json
import math

import numpy as np
import pytest

from app.exceptions import ParseError, UnknownExample
from app.interface.cli import main
from app.interface.examples import (
    ANNULUS_STRIP_ORDER,
    TABLE_2D,
    TABLE_3D,
    example_mesh,
    example_names,
)
from app.interface.mesh_io import format_mesh, parse_mesh, parse_mesh_text, parse_order, write_mesh
from app.interface.report import build_report, emit_report, fmt, report_json, table_rows, tables
from app.models.estimate import Strategy
from app.utils.logger import shorten_arrays

SQUARE_TEXT = """\
# unit square
2 4 2
0 0
1 0
1 1
0 1
0 1 2
0 2 3
"""


class TestMeshIO:
    """메쉬 텍스트 포맷 테스트"""

    def test_parse(self):
        c = parse_mesh_text(SQUARE_TEXT)
        assert c.n == 2
        assert c.counts() == [4, 5, 2]

    def test_write_then_parse(self, lshape4, tmp_path):
        path = tmp_path / "lshape.mesh"
        write_mesh(lshape4, path, comment="L")
        c = parse_mesh(path)
        assert np.array_equal(c.coords, lshape4.coords)
        assert c.cells == lshape4.cells
        assert format_mesh(c).startswith("2 ")

    @pytest.mark.parametrize(
        "text,line",
        [
            ("", 0),
            ("2 4\n", 1),
            ("2 3 1\n0 0\n1 x\n0 1\n0 1 2\n", 3),
            ("2 3 1\n0 0\n1 0\n0 1\n0 1\n", 5),
            ("2 3 1\n0 0\n1 0\n", 3),
            ("# c\n\n2 3 1\n0 0\n1 0\n0 1\n0 1 2\n7 7 7\n", 8),
        ],
    )
    def test_parse_error_line(self, text, line):
        with pytest.raises(ParseError) as exc_info:
            parse_mesh_text(text)
        assert exc_info.value.details["line"] == line
        assert str(exc_info.value).startswith(f"line {line}:")

    def test_parse_order(self):
        assert parse_order("0,1, 2 3") == [0, 1, 2, 3]
        with pytest.raises(ParseError):
            parse_order("0,a")


class TestExamples:
    """예제 메쉬 레지스트리 테스트"""

    @pytest.mark.parametrize("name", TABLE_2D + TABLE_3D)
    def test_table_meshes_are_balls(self, name):
        c = example_mesh(name)
        assert c.euler_characteristic() == 1

    def test_fichera(self):
        c = example_mesh("fichera24")
        assert c.num_cells == 24
        assert c.num_vertices == 15

    def test_unknown(self):
        with pytest.raises(UnknownExample) as exc_info:
            example_mesh("nosuch")
        assert "square2" in exc_info.value.details["available"]

    def test_names(self):
        names = example_names()
        assert "annulus8" in names
        assert "hexagonFan" in names


class TestReport:
    """리포트와 표 테스트"""

    def test_fmt(self):
        assert fmt(1.0 / 3.0) == "0.3333"
        assert fmt(None) == ""
        assert fmt(float("inf")) == ""

    def test_square_report(self, square2):
        report = build_report("square2", square2, refinements=2)
        strategies = {(e.k, e.strategy) for e in report.estimates}
        assert (0, Strategy.GRADIENT_GLUE) in strategies
        assert (1, Strategy.EXTERIOR_SHELLING) in strategies
        assert [r.operator for r in report.references] == ["grad", "div"]
        assert all(entry.ratio > 0 for entry in report.ratios)
        assert report.config["failures"] == []
        assert "generated_at" not in json.loads(report_json(report, with_timestamp=False))

    def test_table_rows(self, square2):
        report = build_report("square2", square2, refinements=1)
        rows = table_rows([report])
        assert rows[0] == [
            "mesh",
            "grad_ref", "grad_est", "grad_ratio",
            "grad_est_shelling", "grad_ratio_shelling",
            "div_ref", "div_est", "div_ratio",
        ]
        assert rows[1][0] == "square2"
        assert all(cell != "" for cell in rows[1])

    def test_annulus_failures_recorded(self, annulus8):
        """shelling 없는 메쉬: gradient 값은 남고 shelling 전략은 실패로 기록"""
        report = build_report("annulus8", annulus8, ks=[0], with_reference=False)
        assert {e.strategy for e in report.estimates} == {
            Strategy.GRADIENT_GLUE, Strategy.GRADIENT_PATCH
        }
        errors = {f["error"] for f in report.config["failures"]}
        assert errors == {"NotShellableWithinBudget"}

    def test_emit_mixed_dimensions(self, square2, ref_tet):
        flat = build_report("square2", square2, ks=[0], with_reference=False)
        solid = build_report("refTetrahedron", ref_tet, ks=[0], with_reference=False)
        with pytest.raises(ValueError):
            emit_report([flat, solid])
        out = emit_report([flat], with_timestamp=False)
        assert json.loads(out["json"])[0]["mesh"]["name"] == "square2"
        assert out["csv"].startswith("mesh,")

    def test_reference_failure_recorded(self, square2):
        """기준 상수 실패는 리포트를 중단하지 않고 failures 에 기록"""
        report = build_report("square2", square2, ks=[1], refinements=0)
        assert report.references == []
        assert report.config["refinements"] == 0
        assert {"k": "1", "strategy": "reference", "error": "NoFreeDofs"} in report.config["failures"]

    def test_unknown_table(self):
        with pytest.raises(ValueError):
            tables("4d")


class TestCLI:
    """명령행 종료 코드 테스트"""

    def test_estimate(self, capsys):
        assert main(["estimate", "square2"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["strategy"] == "exterior_shelling"
        assert data["constant"] > 0

    def test_estimate_from_file(self, square2, tmp_path, capsys):
        path = tmp_path / "square.mesh"
        write_mesh(square2, path)
        assert main(["estimate", str(path), "--strategy", "gradient_glue"]) == 0
        assert json.loads(capsys.readouterr().out)["k"] == 0

    def test_verify_violation(self, capsys):
        order = ",".join(str(i) for i in ANNULUS_STRIP_ORDER)
        assert main(["verify-shelling", "annulus8", order]) == 1
        data = json.loads(capsys.readouterr().out)
        assert data["kind"] == "isolated_vertex"
        assert data["step"] == 6

    def test_verify_shelling_ok(self, capsys):
        assert main(["verify-shelling", "Lshape4", "0,1,2,3"]) == 0
        assert json.loads(capsys.readouterr().out)["verified"] is True

    def test_bad_order_is_usage_error(self):
        assert main(["verify-shelling", "square2", "0,a"]) == 2

    def test_bad_choice_is_usage_error(self):
        assert main(["estimate", "square2", "--strategy", "bogus"]) == 2

    def test_unknown_example(self, capsys):
        assert main(["estimate", "nosuch"]) == 1
        assert json.loads(capsys.readouterr().out)["error"] == "UnknownExample"

    def test_degree_mismatch(self, capsys):
        assert main(["estimate", "square2", "--k", "1", "--strategy", "gradient_glue"]) == 1
        assert json.loads(capsys.readouterr().out)["error"] == "DegreeOutOfRange"

    def test_reference(self, capsys):
        assert main(["reference", "square2", "--refine", "2"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["refinement_level"] == 2
        assert data["route"] == "direct"

    def test_reference_without_free_dofs(self, capsys):
        assert main(["reference", "square2", "--k", "1", "--refine", "0"]) == 1
        data = json.loads(capsys.readouterr().out)
        assert data["error"] == "NoFreeDofs"
        assert data["details"]["hint"] == "refine further"


class TestUpperBoundValidity:
    """모든 예제 메쉬, 모든 k, 모든 전략에서 추정 상수 >= FEEC 기준 상수"""

    @pytest.mark.slow
    @pytest.mark.parametrize("name", TABLE_2D + TABLE_3D)
    def test_estimate_dominates_reference(self, name):
        c = example_mesh(name)
        report = build_report(name, c, refinements=2)
        assert report.config["failures"] == []
        refs = {entry.k: entry.result.constant for entry in report.references}
        assert sorted(refs) == list(range(c.n))
        for k in range(c.n):
            strategies = {e.strategy for e in report.estimates if e.k == k}
            assert {Strategy.EXTERIOR_SHELLING, Strategy.APPENDIX_PRODUCT} <= strategies
        for estimate in report.estimates:
            assert math.isfinite(estimate.constant)
            assert estimate.constant >= refs[estimate.k]


class TestLogger:
    """로그 필터 테스트"""

    def test_long_arrays_shortened(self):
        record = {"message": "row=[" + ", ".join(str(i) for i in range(13)) + "]"}
        assert shorten_arrays(record)
        assert record["message"] == "row=[0, 1, 2, 3, ... (13 items)]"

    def test_short_arrays_kept(self):
        record = {"message": "order=[0, 1, 2]"}
        shorten_arrays(record)
        assert record["message"] == "order=[0, 1, 2]"
