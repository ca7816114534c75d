"""
campaign.py

검증 캠페인 파이프라인 (시행 분배 → 수집 → 리포트 저장)
"""

import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from config import settings
from config.settings import MAX_WORKERS, OUTPUT_DIR
from generators.models import Job, Report, TrialRecord
from handlers.check_handler import run_trial
from utils.file_utils import append_jsonl, write_csv_summary, write_json


def timed_trial(job: Job, index: int) -> Tuple[TrialRecord, float]:
    """시행 하나와 벽시계 시간 (작업 풀에서 피클되므로 최상위 함수)"""
    start = time.perf_counter()
    record = run_trial(job, index)
    return record, time.perf_counter() - start


class CampaignRunner:
    """같은 Job 을 trials 번 실행해 Report 로 묶음"""

    def __init__(self, job: Job, use_parallel: bool = True, workers: Optional[int] = None,
                 quiet: bool = False):
        """
        Args:
            job: 검증 작업
            use_parallel: 프로세스 풀 사용 여부
            workers: 워커 수 (기본 MAX_WORKERS)
            quiet: 시행별 진행 출력 생략
        """
        self.job = job
        self.use_parallel = use_parallel
        self.workers = workers or MAX_WORKERS
        self.quiet = quiet

    def _log(self, message: str):
        if not self.quiet:
            print(message)

    def _report_trial(self, record: TrialRecord, seconds: float):
        total = self.job.trials
        mark = {"pass": "✅", "fail": "❌", "error": "💥"}[record.verdict]
        self._log(f"[{record.index + 1}/{total}] {mark} {record.verdict} ({seconds:.2f}초)")
        if record.verdict == "fail":
            bad = [name for name, ok in record.checks.items() if not ok]
            self._log(f"  실패 항목: {', '.join(bad)}")
        elif record.verdict == "error":
            self._log(f"  에러: {record.error}")
        if settings.DEBUG and record.precision is not None:
            self._log(f"  비교 정밀도: π^{record.precision}")

    def run(self) -> Report:
        """
        캠페인 실행

        병렬이어도 결과는 시행 인덱스 순으로 정렬되므로 리포트 본문은 결정적이다.

        Returns:
            Report (timing 에 전체/시행별 시간)
        """
        job = self.job
        parallel = self.use_parallel and job.trials > 1

        self._log(f"\n{'='*60}")
        self._log(f"🧮 캠페인 시작: {job.kind}")
        self._log(f"{'='*60}")
        self._log(f"링: p={job.p}, s={job.s}, N={job.N}  |  D={job.D}, r={job.r}, d={job.d}")
        self._log(f"시행: {job.trials}  |  시드: {job.seed}")
        self._log(f"병렬 처리: {parallel} (워커: {self.workers if parallel else 1})")
        self._log(f"{'='*60}\n")

        start_time = time.perf_counter()
        records: List[TrialRecord] = []
        seconds: Dict[int, float] = {}

        if parallel:
            with ProcessPoolExecutor(max_workers=self.workers) as executor:
                futures = {executor.submit(timed_trial, job, i): i for i in range(job.trials)}

                # 완료 순서대로 수집
                for future in as_completed(futures):
                    index = futures[future]
                    try:
                        record, took = future.result()
                    except Exception as e:
                        # 워커 자체가 죽은 경우 (run_trial 은 예외를 삼킨다)
                        record = TrialRecord(index=index, seed=job.trial_seed(index), verdict="error",
                                             error=f"{type(e).__name__}: {e}")
                        took = 0.0
                    records.append(record)
                    seconds[index] = took
                    self._report_trial(record, took)
        else:
            for i in range(job.trials):
                record, took = timed_trial(job, i)
                records.append(record)
                seconds[i] = took
                self._report_trial(record, took)

        elapsed = time.perf_counter() - start_time
        timing = {"total_seconds": round(elapsed, 3),
                  "trial_seconds": {str(i): round(seconds[i], 3) for i in sorted(seconds)}}
        report = Report.assemble(job, records, timing)

        summary = report.summary
        self._log(f"\n{'='*60}")
        self._log(f"{'✅' if summary.all_passed else '❌'} 캠페인 완료: {job.kind}")
        self._log(f"{'='*60}")
        self._log(f"⏱️  처리 시간: {elapsed:.2f}초")
        self._log(f"⏱️  시행당 평균: {elapsed / job.trials:.2f}초")
        self._log(f"✅ 통과: {summary.passed}개")
        self._log(f"❌ 실패: {summary.failed}개")
        self._log(f"💥 에러: {summary.errors}개")
        if summary.worst_precision is not None:
            self._log(f"📏 최저 비교 정밀도: π^{summary.worst_precision}")
        self._log(f"{'='*60}\n")
        return report


def output_base(job: Job, out: Optional[str] = None) -> Path:
    """--out > job.output > data/output/<kind>-<seed>"""
    if out:
        return Path(out)
    if job.output:
        return Path(job.output)
    return OUTPUT_DIR / f"{job.kind}-{job.seed}.json"


def save_report(report: Report, path: Path, jsonl: bool = False, csv: bool = False) -> List[Path]:
    """
    리포트 저장 (JSON 필수, JSONL/CSV 선택)

    Returns:
        작성된 파일 목록
    """
    written = []
    if write_json(path, report.to_json()):
        written.append(path)

    seconds = report.timing.get("trial_seconds", {})
    rows = []
    for trial in report.trials:
        row = trial.model_dump(mode="json")
        row["seconds"] = seconds.get(str(trial.index))
        rows.append(row)

    if jsonl:
        jsonl_path = path.with_suffix(".jsonl")
        if jsonl_path.exists():
            jsonl_path.unlink()
        if all(append_jsonl(jsonl_path, row) for row in rows):
            written.append(jsonl_path)
    if csv:
        csv_path = path.with_suffix(".csv")
        if write_csv_summary(csv_path, rows):
            written.append(csv_path)
    return written
