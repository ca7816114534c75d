"""
check_handler.py

작업 종류 → 시행 하나의 검사 실행
"""

import random
import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Optional

from algebras.lognil import (
    MAlphaModule, coho_principle_h1, coho_principle_triangle, exp_neg_e_theta, exp_theta_X, f_V, f_inverse,
    f_series, g_V, g_V_inverse, gamma_cohomology_M_alpha, gamma_minus_one, pd_gamma_cohomology, v_theta_rho_member,
)
from algebras.pdalg import (
    FaltingsModelElem, PDAlgebraSpec, build_period_model, faltings_gamma, faltings_matrix,
    iota_higgs_compatible, random_pd_elem,
)
from algebras.qr_machine import (
    QRMachine, q_matrices, q_matrix_by_compositions, r_fixed_point, recursion_equivalence_check,
    small_case_preimage,
)
from config import settings
from correspondence.simpson import (
    higgs_resolution_check, isotypic_cohomology, kunneth_pd_cohomology, local_leta_check,
    round_trip, tensor_dual_check, wang_normalization,
)
from correspondence.truncation import (
    coboundary_check, higgs_h1_to_koszul_h1, m_omega_solver, random_cocycle, truncation_one_check,
)
from generators import instance_generator as gen
from generators.models import Job, TrialRecord
from rings.cyclo import RingSpec, make_ring, uniformizer
from rings.matrix import ChainMatrix


@dataclass
class Outcome:
    checks: Dict[str, bool] = field(default_factory=dict)
    data: Dict[str, Any] = field(default_factory=dict)
    precision: Optional[int] = None


def _ring(job: Job) -> RingSpec:
    return make_ring(job.p, job.s, job.N)


def _nonzero_weight(job: Job, rng: random.Random) -> Fraction:
    return Fraction(rng.randrange(1, job.p), job.p)


# ----- 작업 종류별 검사 -----

def check_gamma_coh(job: Job, rng: random.Random) -> Outcome:
    """한 변수 PD 대수와 M_α(V) 의 Γ-코호몰로지 형태"""
    ring = _ring(job)
    rho = gen.make_rho(ring, job.rho_valuation)
    out = Outcome()
    spec = PDAlgebraSpec(ring, 1, rho, job.D)
    alpha = _nonzero_weight(job, rng)
    pd0 = pd_gamma_cohomology(spec)
    pd_alpha = pd_gamma_cohomology(spec, alpha)
    out.checks["pd_alpha_zero"] = pd0.matches()
    out.checks["pd_alpha_nonzero"] = pd_alpha.matches()

    slack = gen.slack_for(ring, job.D, 1)
    module = gen.random_module(ring, rng, job.r, job.D, slack=slack, rho_valuation=job.rho_valuation)
    coh = gamma_cohomology_M_alpha(module)
    twisted = gamma_cohomology_M_alpha(MAlphaModule(ring, module.theta, module.P, module.rho, alpha, job.D))
    principle = coho_principle_h1(module)
    y = gen.random_m_elem(module, rng, job.D - 1)
    v = tuple(gen.random_elem(ring, rng) for _ in range(module.r))
    out.checks["module_alpha_zero"] = coh.matches()
    out.checks["module_alpha_nonzero"] = twisted.matches()
    out.checks["cohomology_principle"] = principle.agrees()
    out.checks["principle_triangle"] = coho_principle_triangle(y, v)
    out.data = {"pd": pd0.to_json(), "pd_alpha": pd_alpha.to_json(), "alpha": str(alpha),
                "module": coh.to_json(), "principle": principle.to_json()}
    out.precision = min(pd0.precision, coh.precision)
    return out


def check_kunneth(job: Job, rng: random.Random) -> Outcome:
    ring = _ring(job)
    report = kunneth_pd_cohomology(ring, job.d, gen.make_rho(ring, job.rho_valuation), job.D)
    checks = {"kunneth": report.matches, "exterior_free_ranks": report.exterior_matches}
    return Outcome(checks, report.to_json(), report.precision)


def check_roundtrip(job: Job, rng: random.Random) -> Outcome:
    """표현 → Higgs → 표현, 인증서, 텐서/쌍대"""
    ring = _ring(job)
    V = gen.random_small_rep(ring, rng, job.r, job.d, job.D, job.rho_valuation)
    W = gen.random_small_rep(ring, rng, 1, job.d, job.D, job.rho_valuation)
    trip = round_trip(V, job.D)
    td = tensor_dual_check(V, W)
    checks = {"round_trip": trip["same_P"], "certificates": trip["passed"]}
    checks.update({f"tensor_dual.{k}": v for k, v in td.to_json().items() if k != "passed"})
    cert = trip["rep_certificate"] or {}
    return Outcome(checks, {"round_trip": trip, "tensor_dual": td.to_json()}, cert.get("precision"))


def check_leta(job: Job, rng: random.Random) -> Outcome:
    ring = _ring(job)
    V = gen.random_small_rep(ring, rng, job.r, job.d, job.D, job.rho_valuation)
    lam = uniformizer(V.ring) ** job.lambda_valuation
    verdict = local_leta_check(V, lam)
    return Outcome({"leta_agrees": verdict.agrees, "h0_torsion_free": verdict.h0_torsion_free},
                   verdict.to_json(), verdict.precision)


def check_truncation1(job: Job, rng: random.Random) -> Outcome:
    """τ≤1 비교와 m(ω), H^1 사상"""
    ring = _ring(job)
    H = gen.random_small_higgs(ring, rng, job.r, job.d, job.D, job.rho_valuation)
    report = truncation_one_check(H)
    omega = random_cocycle(H, rng)
    solved = m_omega_solver(H, omega, D=job.D)
    image = higgs_h1_to_koszul_h1(H, omega)
    h = tuple(gen.random_elem(H.ring, rng) for _ in range(H.rank))
    checks = {
        "degree_zero": report.degree_zero,
        "bijective": report.bijective,
        "image_fills": report.image_fills,
        "m_omega_bridge": solved.bridge,
        "m_omega_gamma": solved.gamma_relation,
        "h1_cocycle": image.cocycle,
        "coboundary": coboundary_check(H, h),
    }
    return Outcome(checks, {"truncation": report.to_json(), "m_omega": solved.to_json()}, report.precision)


def check_isotypic(job: Job, rng: random.Random) -> Outcome:
    ring = _ring(job)
    V = gen.random_small_rep(ring, rng, job.r, job.d, job.D, job.rho_valuation)
    weights = gen.weight_set(V.reported, job.d, job.weight_level, job.weight_limit or 4)
    report = isotypic_cohomology(V, weights)
    precision = min((R for _, _, R in report.pieces), default=None)
    return Outcome({"killed": report.killed, "assembly": report.assembly}, report.to_json(), precision)


def check_recursion(job: Job, rng: random.Random) -> Outcome:
    """Q/R/S 구성, 고정점, 특수한 경우 R = −F^{-1}, 두 재귀식의 동치"""
    ring = _ring(job)
    machine = gen.random_machine(ring, rng, job.r, job.m_max, job.rho_valuation)
    construction = machine.construct(job.m_max)
    start = gen.random_matrix(ring, rng, job.r, 1)
    checks = {
        "identity": machine.check_identity(construction.R),
        "fixed_point_zero": r_fixed_point(machine) == construction.R,
        "fixed_point_random": machine.fixed_point(start) == construction.R,
    }
    P = gen.commuting_family(ring, rng, job.r, 1, uniformizer(ring))[0] + ChainMatrix.identity(ring, job.r)
    Q = q_matrices(P, 4)
    checks["q_compositions"] = all(Q[m] == q_matrix_by_compositions(P, m) for m in range(5))

    theta = gen.commuting_family(ring, rng, job.r, 1, gen.make_rho(ring, job.rho_valuation) * uniformizer(ring))[0]
    special = QRMachine.for_higgs(theta, machine.rho, job.m_max)
    checks["special_case"] = special.R == -f_inverse(f_series(theta))

    b = gen.random_sequence(ring, rng, job.r, job.m_max + 2)
    a_direct = machine.solve_a_direct(b)
    a_technique = machine.solve_a_technique(b)
    v1 = recursion_equivalence_check(machine, a_direct, b)
    v2 = recursion_equivalence_check(machine, a_technique, b)
    checks["direct_implies_technique"] = v1.technique and v1.direct
    checks["technique_implies_direct"] = v2.technique and v2.direct
    return Outcome(checks, {"K": machine.K, "direct": v1.to_json(), "technique": v2.to_json()})


def check_fv(job: Job, rng: random.Random) -> Outcome:
    """(γ−1)g_V = f_V, g_V 역, 작은 경우 소거, V_{Θ/ρ} 예"""
    ring = _ring(job)
    module = gen.random_module(ring, rng, job.r, job.D, rho_valuation=job.rho_valuation)
    y = gen.random_m_elem(module, rng)
    g = g_V(y)
    checks = {
        "gamma_g_equals_f": gamma_minus_one(g) == f_V(y),
        "g_inverse": g_V_inverse(g) == y,
    }
    exponent = 1 if job.r < 2 else 1 + rng.randrange(2)
    small_module, theta_prime = gen.small_case_instance(ring, rng, job.r, exponent, job.D, job.rho_valuation)
    pre = small_case_preimage(gen.random_m_elem(small_module, rng), exponent, theta_prime)
    checks["small_case"] = pre.holds

    n = 1 + rng.randrange(3)
    rho = gen.make_rho(ring, job.rho_valuation)
    theta, theta_prime = gen.rho_scaled_theta(ring, rng, job.r, n, rho)
    w = tuple(gen.random_elem(ring, rng) for _ in range(job.r))
    v = tuple(x * (rho ** (n - 1)) for x in w)
    witness = v_theta_rho_member(theta, rho, v)
    checks["theta_power"] = theta ** n == theta_prime * (rho ** n)
    checks["v_theta_rho"] = witness.accepted
    if witness.accepted:
        module = MAlphaModule(ring, theta, exp_neg_e_theta(theta), rho, Fraction(0),
                              max(job.D, len(witness.chain)))
        x = exp_theta_X(witness, module)
        checks["exp_theta_X"] = x.coefficient(0) == v and gamma_minus_one(x).is_zero()
    return Outcome(checks, {"small_case": pre.to_json(), "exponent": exponent, "power": n,
                            "witness": witness.to_json()})


def check_period_model(job: Job, rng: random.Random) -> Outcome:
    """ι 호환성, Faltings 가환성, 포락 대 직접 구성, PD Higgs 분해"""
    ring = _ring(job)
    rho = gen.make_rho(ring, job.rho_valuation)
    model = build_period_model(ring, job.d, rho, job.D)
    u = random_pd_elem(model.pd, rng)
    coords = tuple(gen.random_elem(ring, rng) for _ in range(job.d + 1))
    w = FaltingsModelElem(ring, coords)
    commute = all(
        faltings_gamma(i, faltings_gamma(j, w, rho), rho) == faltings_gamma(j, faltings_gamma(i, w, rho), rho)
        and faltings_matrix(ring, job.d, i, rho).apply(coords) == faltings_gamma(i, w, rho).coords
        for i in range(job.d) for j in range(job.d)
    )
    H = gen.random_small_higgs(ring, rng, 1, job.d, job.D, job.rho_valuation)
    normalized = wang_normalization(H)
    resolution = higgs_resolution_check(ring, job.d, job.D)
    checks = {
        "iota_higgs": iota_higgs_compatible(u),
        "faltings": commute,
        "envelope_gamma": model.gamma_compatible(),
        "envelope_theta": model.theta_compatible(),
        "pd_ideal": model.pd_ideal_vanishes(),
        "wang_normalization": all(
            P - ChainMatrix.identity(H.ring, H.rank) == n.matmul(F) for P, F, n in zip(H.P, H.F, normalized)
        ),
        "higgs_resolution": resolution.exact,
    }
    return Outcome(checks, {"resolution": resolution.to_json()})


CHECKS: Dict[str, Callable[[Job, random.Random], Outcome]] = {
    "gamma_coh": check_gamma_coh,
    "kunneth": check_kunneth,
    "roundtrip": check_roundtrip,
    "leta": check_leta,
    "truncation1": check_truncation1,
    "isotypic": check_isotypic,
    "recursion": check_recursion,
    "fv": check_fv,
    "period_model": check_period_model,
}


def run_trial(job: Job, index: int) -> TrialRecord:
    """
    시행 하나 실행 (작업 풀에서 호출되므로 모듈 최상위 함수)

    예외는 기록하고 verdict = "error" 로 돌려준다.
    """
    seed = job.trial_seed(index)
    rng = random.Random(seed)
    try:
        outcome = CHECKS[job.kind](job, rng)
    except Exception as e:
        if settings.DEBUG:
            traceback.print_exc()
        return TrialRecord(index=index, seed=seed, verdict="error", error=f"{type(e).__name__}: {e}")
    verdict = "pass" if all(outcome.checks.values()) else "fail"
    return TrialRecord(index=index, seed=seed, verdict=verdict, checks=outcome.checks,
                       data=outcome.data, precision=outcome.precision)
