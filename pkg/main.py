"""
main.py

검증 캠페인 메인 실행 파일

종료 코드: 0 모두 통과, 1 검사 실패, 2 파라미터 오류, 3 내부 오류
"""

import argparse
import traceback
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from config import settings
from generators.campaign import CampaignRunner, output_base, save_report
from generators.models import COMMAND_KINDS, Job, Report
from handlers.selftest import run_selftest
from utils.file_utils import JobFileError, read_job, write_json

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_INTERNAL = 0, 1, 2, 3

# 플래그 → Job 필드 (플래그가 작업 파일 값을 덮어씀)
PARAM_FLAGS = {
    "p": int, "s": int, "N": int, "D": int, "r": int, "d": int,
    "lambda_valuation": int, "rho_valuation": int, "weight_level": int,
    "weight_limit": int, "m_max": int,
}


def _add_common(parser: argparse.ArgumentParser, with_kind: bool = True):
    parser.add_argument('--job', type=Path, default=None, help='작업 파일 (JSON 또는 YAML)')
    if with_kind:
        parser.add_argument('--kind', default=None, help='작업 종류 (하위 명령마다 허용 목록이 다름)')
    parser.add_argument('--seed', type=int, default=None, help=f'시드 (기본: {settings.DEFAULT_SEED})')
    parser.add_argument('--trials', type=int, default=None, help='시행 수')
    parser.add_argument('--out', default=None, help='리포트 JSON 경로')
    parser.add_argument('--parallel', type=int, default=None, help='워커 수 (1 이면 순차)')
    parser.add_argument('--no-parallel', action='store_true', help='병렬 처리 비활성화')
    parser.add_argument('--csv', action='store_true', help='CSV 요약도 저장')
    parser.add_argument('--jsonl', action='store_true', help='시행별 JSONL 도 저장')
    parser.add_argument('--allow-override', action='store_true', help='파라미터 상한 해제')
    parser.add_argument('--debug', action='store_true', help='디버그 모드 활성화')
    for name, kind in PARAM_FLAGS.items():
        parser.add_argument(f"--{name.replace('_', '-')}", dest=name, type=kind, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="정수 p-진 국소 Simpson 대응 검증기"
    )
    sub = parser.add_subparsers(dest='command', required=True)

    for command, kinds in COMMAND_KINDS.items():
        p = sub.add_parser(command, help=f"작업 종류: {', '.join(kinds)}")
        _add_common(p)
    _add_common(sub.add_parser('run', help='작업 파일의 kind 대로 실행'))

    st = sub.add_parser('selftest', help='고정 파라미터 자체 점검')
    st.add_argument('--seed', type=int, default=None)
    st.add_argument('--out', default=None)
    st.add_argument('--corrupt', action='store_true', help='산술 결함 주입 (실패가 보고되어야 함)')
    st.add_argument('--debug', action='store_true')
    return parser


def build_job(args: argparse.Namespace) -> Job:
    """
    작업 파일 + 플래그 → Job

    Raises:
        JobFileError, ValidationError, ValueError: 파라미터 오류 (종료 코드 2)
    """
    data: Dict[str, Any] = read_job(args.job) if args.job else {}
    overrides = {name: getattr(args, name) for name in PARAM_FLAGS}
    overrides.update(kind=args.kind, seed=args.seed, trials=args.trials)
    data.update({k: v for k, v in overrides.items() if v is not None})
    if args.allow_override:
        data['allow_override'] = True

    if args.command == 'run':
        if 'kind' not in data:
            raise ValueError("'run' needs a kind (in the job file or --kind)")
    else:
        allowed = COMMAND_KINDS[args.command]
        data.setdefault('kind', allowed[0])
        if data['kind'] not in allowed:
            raise ValueError(f"kind '{data['kind']}' is not handled by '{args.command}' (use one of {allowed})")
    return Job(**data)


def exit_code_for(reports: List[Report]) -> int:
    if any(r.summary.errors for r in reports):
        return EXIT_INTERNAL
    if all(r.summary.all_passed for r in reports):
        return EXIT_OK
    return EXIT_FAIL


def run_campaign(args: argparse.Namespace) -> int:
    try:
        job = build_job(args)
    except (JobFileError, ValidationError, ValueError) as e:
        print(f"❌ 파라미터 오류: {e}")
        return EXIT_PARAMS

    workers: Optional[int] = args.parallel
    use_parallel = not args.no_parallel and (workers is None or workers > 1)

    print("\n🚀 검증 캠페인 초기화 중...")
    report = CampaignRunner(job, use_parallel=use_parallel, workers=workers).run()

    path = output_base(job, args.out)
    for written in save_report(report, path, jsonl=args.jsonl, csv=args.csv):
        print(f"📁 출력: {written}")

    code = exit_code_for([report])
    if code == EXIT_FAIL:
        print(f"❌ 실패 위치: {', '.join(report.summary.failed_checks)}")
    elif code == EXIT_INTERNAL:
        print(f"❌ 내부 오류가 난 시행: {report.summary.errors}개")
    return code


def selftest(args: argparse.Namespace) -> int:
    seed = settings.DEFAULT_SEED if args.seed is None else args.seed
    print(f"\n🧪 자체 점검 (seed={seed}{', 결함 주입' if args.corrupt else ''})")
    suite = run_selftest(seed, corrupt=args.corrupt)

    path = Path(args.out) if args.out else settings.OUTPUT_DIR / f"selftest-{seed}.json"
    if write_json(path, suite.to_json()):
        print(f"📁 출력: {path}")

    if suite.all_passed:
        print("✅ 모든 검사 통과")
        return EXIT_OK
    print("❌ 실패 위치:")
    for location in suite.failures():
        print(f"   - {location}")
    return EXIT_INTERNAL if suite.has_errors and not args.corrupt else EXIT_FAIL


def main(argv: Optional[List[str]] = None) -> int:
    """메인 함수"""
    args = build_parser().parse_args(argv)

    # 디버그 모드 설정
    if args.debug:
        settings.DEBUG = True

    try:
        if args.command == 'selftest':
            return selftest(args)
        return run_campaign(args)
    except Exception as e:
        print(f"❌ 내부 오류: {type(e).__name__}: {e}")
        if settings.DEBUG:
            traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    exit(main())
