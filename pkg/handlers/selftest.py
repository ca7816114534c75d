"""
selftest.py

고정된 작은 파라미터로 모든 검사 종류를 한 번씩 실행하는 자체 점검
"""

from contextlib import contextmanager
from typing import List

from generators.models import Job, Report, SuiteReport
from rings import cyclo
from rings.cyclo import CycloElem

# (kind, 파라미터), p = 3, N ≤ 3 에서 몇 초 안에 끝나는 크기
SELFTEST_JOBS = [
    dict(kind="gamma_coh", N=2, D=4, r=1, trials=2),
    dict(kind="kunneth", N=2, D=3, d=2, trials=1),
    dict(kind="roundtrip", N=2, D=4, r=2, d=1, trials=2),
    dict(kind="roundtrip", N=2, D=4, r=1, d=2, trials=1),
    dict(kind="leta", N=2, D=4, r=2, d=2, trials=1),
    dict(kind="leta", N=2, D=4, r=1, d=1, trials=1, lambda_valuation=1),
    dict(kind="truncation1", N=2, D=4, r=2, d=1, trials=1),
    dict(kind="truncation1", N=2, D=4, r=1, d=2, trials=1),
    dict(kind="isotypic", N=2, D=4, r=1, d=1, trials=1),
    dict(kind="recursion", N=2, r=2, trials=2),
    dict(kind="fv", N=2, D=4, r=2, trials=2),
    dict(kind="period_model", N=2, D=3, d=2, trials=1),
]


def selftest_jobs(seed: int) -> List[Job]:
    return [Job(p=3, s=1, seed=seed, **params) for params in SELFTEST_JOBS]


@contextmanager
def corrupted_arithmetic():
    """
    곱셈 결과의 상수항에 p^{N−1} 을 더하는 결함 주입

    cyclo 모듈 전역의 mul 만 바꾸므로 같은 프로세스에서만 유효하다.
    """
    original = cyclo.mul

    def broken(a: CycloElem, b: CycloElem) -> CycloElem:
        out = original(a, b)
        if out.is_zero():
            return out
        ring = out.ring
        coeffs = list(out.coeffs)
        coeffs[0] = (coeffs[0] + ring.modulus // ring.p) % ring.modulus
        return CycloElem(ring, tuple(coeffs), out.reliable)

    cyclo.clear_caches()
    cyclo.mul = broken
    try:
        yield
    finally:
        cyclo.mul = original
        cyclo.clear_caches()


def run_selftest(seed: int, corrupt: bool = False, quiet: bool = True) -> SuiteReport:
    """
    자체 점검 실행 (항상 순차)

    Args:
        seed: 기본 시드
        corrupt: 결함 주입 여부 (이때는 실패가 보고되어야 정상)
        quiet: 시행별 출력 생략

    Returns:
        SuiteReport
    """
    from generators.campaign import CampaignRunner

    reports: List[Report] = []
    for job in selftest_jobs(seed):
        runner = CampaignRunner(job, use_parallel=False, quiet=quiet)
        if corrupt:
            with corrupted_arithmetic():
                report = runner.run()
        else:
            report = runner.run()
        status = "✅" if report.summary.all_passed else "❌"
        print(f"  {status} {job.kind:<13} r={job.r} d={job.d} D={job.D}  "
              f"({report.summary.passed}/{report.summary.total})")
        reports.append(report)
    return SuiteReport(seed=seed, corrupted=corrupt, reports=reports)
