"""
models.py

작업(Job) / 리포트(Report) 모델
"""

from typing import Any, Dict, List, Literal, Optional

import sympy
from pydantic import BaseModel, Field, field_validator, model_validator

from config.settings import (
    DEFAULT_SEED, DEFAULT_TRIALS, MAX_D, MAX_DIM, MAX_LEVEL, MAX_N, MAX_P, MAX_RANK,
    REPORT_SCHEMA_VERSION,
)

JobKind = Literal[
    "roundtrip", "leta", "truncation1", "kunneth", "isotypic",
    "gamma_coh", "recursion", "period_model", "fv",
]

# CLI 하위 명령 → 허용 작업 종류 (첫 항목이 기본값)
COMMAND_KINDS: Dict[str, List[str]] = {
    "gamma-coh": ["gamma_coh", "kunneth"],
    "simpson": ["roundtrip", "truncation1", "isotypic"],
    "decalage": ["leta"],
    "recursion": ["recursion", "fv"],
    "period-model": ["period_model"],
}


class Job(BaseModel):
    """하나의 검증 캠페인 (같은 파라미터로 trials 번 반복)"""

    kind: JobKind
    p: int = Field(3, ge=3)
    s: int = Field(1, ge=1)
    N: int = Field(2, ge=1)
    D: int = Field(4, ge=1)
    r: int = Field(2, ge=1)
    d: int = Field(1, ge=1)
    seed: int = DEFAULT_SEED
    trials: int = Field(DEFAULT_TRIALS, ge=1)
    lambda_valuation: int = Field(0, ge=0)
    rho_valuation: Optional[int] = Field(None, ge=1)
    weight_level: int = Field(1, ge=1)
    weight_limit: Optional[int] = Field(None, ge=1)
    m_max: int = Field(4, ge=1)
    output: Optional[str] = None
    allow_override: bool = Field(False, exclude=True)

    @field_validator("p")
    @classmethod
    def _odd_prime(cls, value: int) -> int:
        if value % 2 == 0 or not sympy.isprime(value):
            raise ValueError(f"p must be an odd prime (got {value})")
        return value

    @model_validator(mode="after")
    def _caps(self) -> "Job":
        if self.allow_override:
            return self
        caps = [
            ("p", self.p, MAX_P), ("N", self.N, MAX_N), ("D", self.D, MAX_D),
            ("r", self.r, MAX_RANK), ("d", self.d, MAX_DIM), ("s", self.s, MAX_LEVEL),
            ("weight_level", self.weight_level, MAX_LEVEL),
        ]
        for name, value, cap in caps:
            if value > cap:
                raise ValueError(f"{name}={value} exceeds the cap {cap} (use --allow-override)")
        return self

    @model_validator(mode="after")
    def _weights(self) -> "Job":
        if self.weight_level > self.s:
            raise ValueError(f"weight_level {self.weight_level} needs s >= {self.weight_level}")
        return self

    def trial_seed(self, index: int) -> int:
        return self.seed * 1_000_003 + index


class TrialRecord(BaseModel):
    """시행 하나의 판정 (벽시계 시간은 Report.timing 에 따로 둠)"""

    index: int
    seed: int
    verdict: Literal["pass", "fail", "error"]
    checks: Dict[str, bool] = Field(default_factory=dict)
    data: Dict[str, Any] = Field(default_factory=dict)
    precision: Optional[int] = None
    error: Optional[str] = None


class Summary(BaseModel):
    total: int
    passed: int
    failed: int
    errors: int
    worst_precision: Optional[int] = None
    failed_checks: List[str] = Field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total


class Report(BaseModel):
    schema_version: str = REPORT_SCHEMA_VERSION
    job: Job
    trials: List[TrialRecord]
    summary: Summary
    timing: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def assemble(cls, job: Job, trials: List[TrialRecord], timing: Optional[Dict[str, Any]] = None) -> "Report":
        """시행을 인덱스 순으로 정렬해 요약과 함께 묶음"""
        ordered = sorted(trials, key=lambda t: t.index)
        precisions = [t.precision for t in ordered if t.precision is not None]
        failed_checks = sorted({
            f"{t.index}:{name}" for t in ordered for name, ok in t.checks.items() if not ok
        }, key=lambda x: (int(x.split(":")[0]), x))
        summary = Summary(
            total=len(ordered),
            passed=sum(1 for t in ordered if t.verdict == "pass"),
            failed=sum(1 for t in ordered if t.verdict == "fail"),
            errors=sum(1 for t in ordered if t.verdict == "error"),
            worst_precision=min(precisions) if precisions else None,
            failed_checks=failed_checks,
        )
        return cls(job=job, trials=ordered, summary=summary, timing=timing or {})

    def deterministic_body(self) -> Dict[str, Any]:
        """timing 을 뺀 본문 (같은 작업/시드면 바이트 단위로 같음)"""
        return self.model_dump(mode="json", exclude={"timing"})

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


class SuiteReport(BaseModel):
    """자체 점검: 작업 종류마다 Report 하나"""

    schema_version: str = REPORT_SCHEMA_VERSION
    seed: int
    corrupted: bool = False
    reports: List[Report]

    @property
    def all_passed(self) -> bool:
        return all(r.summary.all_passed for r in self.reports)

    @property
    def has_errors(self) -> bool:
        return any(r.summary.errors for r in self.reports)

    def failures(self) -> List[str]:
        """실패/오류 위치 목록 ("kind#index:check")"""
        out = []
        for report in self.reports:
            for trial in report.trials:
                if trial.verdict == "error":
                    out.append(f"{report.job.kind}#{trial.index}:error ({trial.error})")
                out.extend(f"{report.job.kind}#{trial.index}:{name}" for name, ok in trial.checks.items() if not ok)
        return out

    def deterministic_body(self) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "seed": self.seed,
            "corrupted": self.corrupted,
            "reports": [r.deterministic_body() for r in self.reports],
        }

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")
