"""
명령행 인터페이스

    pfbound estimate square2 --k 0 --p 2
    pfbound verify-shelling annulus8 0,1,2,3,4,5,6,7
    pfbound reference cube5 --k 1 --refine 2
    pfbound tables --which 2d

결과는 stdout 에 JSON (tables 는 CSV), 로그는 stderr 로 나갑니다.
종료 코드: 0 성공, 1 계산 실패 (JSON 진단 출력), 2 사용법 오류.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from app import __version__
from app.config import settings
from app.exceptions import PFBoundError
from app.interface.examples import example_mesh, example_names
from app.interface.mesh_io import parse_mesh, parse_order
from app.interface.report import tables
from app.mesh_core.complex import SimplicialComplex
from app.models.estimate import CombineRule, EstimateMode, Strategy
from app.models.shelling import Violation
from app.pf_bounds.estimator import estimate_pf
from app.reference_feec.reference import reference_pf_constant
from app.shelling_engine.verifier import verify_shelling
from app.utils.logger import log, setup_logger

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """인자 조합 오류 (exit 2)"""


def load_mesh(source: str) -> SimplicialComplex:
    """예제 이름 또는 메쉬 파일 경로"""
    path = Path(source)
    if source not in example_names() and path.is_file():
        return parse_mesh(path)
    return example_mesh(source)


def _cmd_estimate(args: argparse.Namespace) -> int:
    c = load_mesh(args.mesh)
    config = settings.get_search_config(args.k, args.p)
    updates = {
        key: getattr(args, key) for key in ("seed", "budget") if getattr(args, key) is not None
    }
    config = config.model_copy(update=updates)
    result = estimate_pf(
        c,
        k=args.k,
        p=args.p,
        strategy=Strategy(args.strategy),
        search_config=config,
        mode=EstimateMode(args.mode) if args.mode else None,
        combine_rule=CombineRule(args.combine) if args.combine else None,
    )
    print(result.model_dump_json(indent=2))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    c = load_mesh(args.mesh)
    try:
        order = parse_order(args.order)
    except PFBoundError as e:
        raise UsageError(str(e))
    verdict = verify_shelling(c, order)
    print(verdict.model_dump_json(indent=2))
    if isinstance(verdict, Violation):
        log.info(f"shelling 아님: step={verdict.step}, kind={verdict.kind.value}")
        return EXIT_FAILURE
    return EXIT_OK


def _cmd_reference(args: argparse.Namespace) -> int:
    c = load_mesh(args.mesh)
    result = reference_pf_constant(c, args.k, p=args.p, bc=args.bc, refinements=args.refine)
    print(result.model_dump_json(indent=2))
    return EXIT_OK


def _cmd_tables(args: argparse.Namespace) -> int:
    out = tables(
        args.which,
        refinements=args.refine,
        mode=EstimateMode(args.mode) if args.mode else None,
        seed=args.seed,
        budget=args.budget,
    )
    for name, text in out.items():
        if len(out) > 1:
            print(f"# {name}")
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfbound",
        description="Poincare-Friedrichs 상수 상한 계산 (shelling 기반) 및 FEEC 기준값",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="로그 레벨 (기본: settings.log_level)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_search_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=None, help="shelling 탐색 시드")
        p.add_argument("--budget", type=int, default=None, help="verifier 호출 예산")
        p.add_argument("--mode", choices=[m.value for m in EstimateMode], default=None)

    est = sub.add_parser("estimate", help="PF 상수 상한 추정")
    est.add_argument("mesh", help="예제 이름 또는 메쉬 파일")
    est.add_argument("--k", type=int, default=0, help="form degree")
    est.add_argument("--p", type=float, default=2.0, help="Lebesgue 지수 (inf 허용)")
    est.add_argument(
        "--strategy", choices=[s.value for s in Strategy], default=Strategy.EXTERIOR_SHELLING.value
    )
    est.add_argument("--combine", choices=[r.value for r in CombineRule], default=None)
    add_search_flags(est)
    est.set_defaults(handler=_cmd_estimate)

    ver = sub.add_parser("verify-shelling", help="셀 순서의 shelling 검증")
    ver.add_argument("mesh", help="예제 이름 또는 메쉬 파일")
    ver.add_argument("order", help="셀 순서 (예: 0,1,2)")
    ver.set_defaults(handler=_cmd_verify)

    ref = sub.add_parser("reference", help="FEEC 기준 상수 (p=2)")
    ref.add_argument("mesh", help="예제 이름 또는 메쉬 파일")
    ref.add_argument("--k", type=int, default=0, help="form degree")
    ref.add_argument("--p", type=float, default=2.0, help="2 만 지원")
    ref.add_argument("--bc", choices=["none", "all"], default="none", help="경계조건 face")
    ref.add_argument("--refine", type=int, default=None, help="균일 세분 횟수")
    ref.set_defaults(handler=_cmd_reference)

    tab = sub.add_parser("tables", help="추정/기준 표 재현 (CSV)")
    tab.add_argument("--which", choices=["2d", "3d", "ref-tet", "all"], default="all")
    tab.add_argument("--refine", type=int, default=None, help="균일 세분 횟수")
    add_search_flags(tab)
    tab.set_defaults(handler=_cmd_tables)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    CLI 진입점

    Returns:
        종료 코드 (0 / 1 / 2)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logger(args.log_level or settings.log_level)
    try:
        return args.handler(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"pfbound: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PFBoundError as e:
        log.error(f"계산 실패: {e.code} - {e}")
        print(json.dumps(e.to_dict(), default=str))
        return EXIT_FAILURE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
