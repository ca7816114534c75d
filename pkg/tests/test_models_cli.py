"""
작업 모델, 캠페인 러너, CLI 테스트
"""

import json

import pytest
from pydantic import ValidationError

import main
from generators.campaign import CampaignRunner, save_report
from generators.models import Job, Report, SuiteReport, TrialRecord
from handlers.check_handler import run_trial
from handlers.selftest import SELFTEST_JOBS, corrupted_arithmetic, selftest_jobs
from rings.cyclo import divided_power_epsilon, make_ring
from utils.file_utils import JobFileError, read_job


# ----- Job -----

@pytest.mark.parametrize("p", [2, 9, 15])
def test_job_rejects_bad_prime(p):
    with pytest.raises(ValidationError):
        Job(kind="leta", p=p)


def test_job_caps_and_override():
    with pytest.raises(ValidationError, match="cap"):
        Job(kind="leta", N=99)
    job = Job(kind="leta", N=99, allow_override=True)
    assert job.N == 99
    assert "allow_override" not in job.model_dump()


def test_job_weight_level_needs_cyclotomic_level():
    with pytest.raises(ValidationError):
        Job(kind="isotypic", weight_level=2, s=1)
    assert Job(kind="isotypic", weight_level=2, s=2).weight_level == 2


def test_trial_seed_is_stable():
    job = Job(kind="kunneth", seed=7)
    assert job.trial_seed(0) == 7 * 1_000_003
    assert job.trial_seed(3) - job.trial_seed(2) == 1


# ----- Report -----

def _record(index, ok, precision=None):
    return TrialRecord(index=index, seed=index, verdict="pass" if ok else "fail",
                       checks={"a": True, "b": ok}, precision=precision)


def test_report_sorts_and_summarises():
    job = Job(kind="kunneth")
    report = Report.assemble(job, [_record(2, False, 5), _record(0, True, 3), _record(1, True)],
                             {"total_seconds": 1.0})
    assert [t.index for t in report.trials] == [0, 1, 2]
    assert report.summary.passed == 2
    assert report.summary.failed == 1
    assert report.summary.worst_precision == 3
    assert report.summary.failed_checks == ["2:b"]
    assert "timing" not in report.deterministic_body()


def test_suite_failures():
    job = Job(kind="kunneth")
    broken = TrialRecord(index=0, seed=0, verdict="error", error="boom")
    suite = SuiteReport(seed=1, reports=[
        Report.assemble(job, [_record(0, False)]),
        Report.assemble(job, [broken]),
    ])
    assert not suite.all_passed
    assert suite.has_errors
    assert suite.failures() == ["kunneth#0:b", "kunneth#0:error (boom)"]


# ----- 작업 파일 -----

def test_read_job_yaml(tmp_path):
    path = tmp_path / "job.yaml"
    path.write_text("kind: roundtrip\np: 3\nN: 2\n", encoding="utf-8")
    assert read_job(path) == {"kind": "roundtrip", "p": 3, "N": 2}


def test_read_job_errors(tmp_path):
    with pytest.raises(JobFileError, match="not found"):
        read_job(tmp_path / "missing.json")
    listing = tmp_path / "list.yaml"
    listing.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(JobFileError, match="mapping"):
        read_job(listing)
    broken = tmp_path / "broken.json"
    broken.write_text('{"kind": [', encoding="utf-8")
    with pytest.raises(JobFileError):
        read_job(broken)


# ----- 시행 -----

@pytest.mark.parametrize("params", SELFTEST_JOBS, ids=lambda p: f"{p['kind']}-r{p.get('r', 2)}-d{p.get('d', 1)}")
def test_every_check_passes_on_small_parameters(params):
    job = Job(p=3, s=1, seed=11, **params)
    record = run_trial(job, 0)
    assert record.verdict == "pass", (record.error, record.checks)


def test_trials_are_reproducible():
    job = Job(kind="roundtrip", N=2, D=4, r=2, d=1, seed=5)
    assert run_trial(job, 1) == run_trial(job, 1)
    assert run_trial(job, 0).seed != run_trial(job, 1).seed


def test_corrupted_arithmetic_is_detected():
    job = selftest_jobs(3)[2]
    with corrupted_arithmetic():
        record = run_trial(job, 0)
    assert record.verdict != "pass"
    assert run_trial(job, 0).verdict == "pass"


def test_fault_injection_does_not_leave_stale_caches():
    ring = make_ring(3, 1, 2)
    clean = divided_power_epsilon(ring, 3).coeffs
    with corrupted_arithmetic():
        assert divided_power_epsilon(ring, 3).coeffs != clean
    assert divided_power_epsilon(ring, 3).coeffs == clean


def test_clean_trials_pass_after_corrupted_ones():
    jobs = [job for job in selftest_jobs(3) if job.kind in ("kunneth", "leta", "recursion", "fv")]
    with corrupted_arithmetic():
        for job in jobs:
            run_trial(job, 0)
    for job in jobs:
        record = run_trial(job, 0)
        assert record.verdict == "pass", (job.kind, record.error, record.checks)


def test_fv_trial_checks_exp_theta_X_invariance():
    record = run_trial(Job(kind="fv", p=3, N=2, D=4, r=2, seed=5), 0)
    assert record.checks["theta_power"]
    assert record.checks["v_theta_rho"]
    assert record.checks["exp_theta_X"]


def test_unknown_failure_becomes_error_record(monkeypatch):
    from handlers import check_handler

    def explode(job, rng):
        raise RuntimeError("boom")

    monkeypatch.setitem(check_handler.CHECKS, "kunneth", explode)
    record = run_trial(Job(kind="kunneth"), 0)
    assert record.verdict == "error"
    assert record.error == "RuntimeError: boom"


# ----- 캠페인 -----

def test_campaign_report_is_deterministic(tmp_path):
    job = Job(kind="kunneth", D=3, d=1, trials=2, seed=9)
    first = CampaignRunner(job, use_parallel=False, quiet=True).run()
    second = CampaignRunner(job, use_parallel=False, quiet=True).run()
    assert first.deterministic_body() == second.deterministic_body()

    written = save_report(first, tmp_path / "out.json", jsonl=True, csv=True)
    assert [p.suffix for p in written] == [".json", ".jsonl", ".csv"]
    lines = (tmp_path / "out.jsonl").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 2
    assert (tmp_path / "out.csv").read_text(encoding="utf-8").startswith("index,seed,verdict")


# ----- CLI -----

def test_cli_rejects_kind_of_other_command(capsys):
    assert main.main(["decalage", "--kind", "roundtrip"]) == main.EXIT_PARAMS
    assert "not handled" in capsys.readouterr().out


def test_cli_parameter_errors(tmp_path):
    assert main.main(["simpson", "--job", str(tmp_path / "missing.yaml")]) == main.EXIT_PARAMS
    assert main.main(["run"]) == main.EXIT_PARAMS
    assert main.main(["decalage", "--p", "4"]) == main.EXIT_PARAMS
    assert main.main(["decalage", "--N", "99"]) == main.EXIT_PARAMS


def test_cli_job_file_and_flag_override(tmp_path):
    job_file = tmp_path / "job.yaml"
    job_file.write_text("kind: kunneth\nD: 8\nd: 1\ntrials: 1\nseed: 4\n", encoding="utf-8")
    out = tmp_path / "report.json"
    code = main.main(["run", "--job", str(job_file), "--D", "3", "--no-parallel", "--out", str(out)])
    assert code == main.EXIT_OK
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["job"]["D"] == 3
    assert report["job"]["kind"] == "kunneth"
    assert report["summary"]["passed"] == 1


def test_cli_exit_code_for_failures():
    job = Job(kind="kunneth")
    passing = Report.assemble(job, [_record(0, True)])
    failing = Report.assemble(job, [_record(0, False)])
    erroring = Report.assemble(job, [TrialRecord(index=0, seed=0, verdict="error", error="x")])
    assert main.exit_code_for([passing]) == main.EXIT_OK
    assert main.exit_code_for([passing, failing]) == main.EXIT_FAIL
    assert main.exit_code_for([failing, erroring]) == main.EXIT_INTERNAL


# ----- 자체 점검 -----

@pytest.fixture
def short_selftest(monkeypatch):
    from handlers import selftest
    monkeypatch.setattr(selftest, "SELFTEST_JOBS", [
        dict(kind="kunneth", N=2, D=3, d=1, trials=1),
        SELFTEST_JOBS[2],
    ])
    return selftest


def test_selftest_is_deterministic(short_selftest):
    first = short_selftest.run_selftest(42)
    second = short_selftest.run_selftest(42)
    assert first.all_passed
    assert first.deterministic_body() == second.deterministic_body()


def test_cli_selftest_reports_injected_faults(short_selftest, tmp_path, capsys):
    out = tmp_path / "selftest.json"
    assert main.main(["selftest", "--seed", "42", "--out", str(out)]) == main.EXIT_OK
    assert main.main(["selftest", "--seed", "42", "--corrupt", "--out", str(out)]) == main.EXIT_FAIL
    assert "roundtrip#0:" in capsys.readouterr().out
    assert json.loads(out.read_text(encoding="utf-8"))["corrupted"] is True
