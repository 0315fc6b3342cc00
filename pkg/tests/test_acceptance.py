"""Acceptance suite: one test per release criterion, each printing a
single pass/fail line (run with ``pytest tests/test_acceptance.py -v -s``).

Tolerances are fixed here and match the package contract; they are not
calibration knobs.
"""

import math
import random
import time

import pytest

from satclock.bellsim import make_input_state, parity_check_block
from satclock.code import logical_pair_failure, min_code_distance
from satclock.estimator import estimate, sweep_power
from satclock.link import delivery_confidence, min_attempts
from satclock.mc import simulate_purification
from satclock.model import (
    CodeParams,
    LinkSpec,
    PurificationSpec,
    SatelliteSpec,
    Scenario,
    builtin_scenario,
    builtin_scenarios,
)
from satclock.power import power_to_logical_rate
from satclock.purify import (
    block_success,
    ladder_success,
    purification_factor,
    purified_fidelity,
)

PARAMS = CodeParams(alpha=0.3, beta=70.0, p_phys=1e-3)
ORACLE_GRID = [0.55 + 0.05 * i for i in range(9)] + [0.99]


class _Criterion:
    """Context manager that prints one pass/fail line per criterion."""

    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        print(f"[{status}] criterion {self.number}: {self.title} ({elapsed:.3f}s)")
        return False


def test_criterion_1_purification_pipeline():
    with _Criterion(1, "purification pipeline N=2, P=0.573, K=9, chi=36"):
        plan = purification_factor(
            PurificationSpec(f_initial=0.87, f_target=0.999, confidence_S=0.999)
        )
        assert plan.rounds_N == 2
        assert abs(plan.ladder_success_P - 0.573) <= 0.0005
        assert plan.multiplex_K == 9
        assert plan.factor_chi == 36


def test_criterion_2_code_distance_solver():
    with _Criterion(2, "distance solver: rounding 37, strict 38 with neighbours"):
        target = 4.28e-21

        def oracle(D: int) -> float:
            # direct failure-model evaluation, independent of the solver
            return 4.0 * D * 0.3 * (70.0 * 1e-3) ** ((D + 1) / 2)

        rounded = min_code_distance(target, PARAMS, mode="paper_rounding")
        assert rounded.distance_D == 37

        strict = min_code_distance(target, PARAMS, mode="strict")
        assert strict.distance_D == 38
        assert strict.failure_at_D == pytest.approx(oracle(38), rel=1e-12)
        assert logical_pair_failure(37, PARAMS) == pytest.approx(oracle(37), rel=1e-12)
        assert oracle(37) == pytest.approx(5.1e-21, rel=2e-2)
        assert oracle(38) == pytest.approx(1.4e-21, rel=2e-2)
        assert oracle(37) > target >= oracle(38)


def test_criterion_3_power_relation_endpoints():
    with _Criterion(3, "headline clock rates within 1.5x of 2e6 / 1e4 / 6e2"):
        sat = SatelliteSpec(power_Ps=10e3, source_power_Pr=15e-6, source_brightness_Np=4e6)
        headlines = {"state": 2e6, "continental": 1e4, "transcontinental": 6e2}
        for scenario in builtin_scenarios():
            rate = power_to_logical_rate(10e3, 37, 36, scenario.link.eta, sat)
            target = headlines[scenario.label]
            assert max(rate / target, target / rate) < 1.5
            # and the estimator reports the same satellite-limited clock
            assert estimate(scenario).achievable_RLP_at_power == pytest.approx(
                rate, rel=1e-12
            )


def test_criterion_4_density_matrix_oracle_equivalence():
    with _Criterion(4, "parity-check block matches recurrence formulas to 1e-12"):
        for f in ORACLE_GRID:
            state = make_input_state(f)
            success, out = parity_check_block(state, state)
            assert abs(success - block_success(f)) <= 1e-12
            assert abs(out.fidelity_phi_plus - purified_fidelity(f)) <= 1e-12


def test_criterion_5_ladder_success_brute_force():
    with _Criterion(5, "ladder success equals binary-tree enumeration to 1e-12"):
        def tree(ladder) -> float:
            n = len(ladder) - 1

            def walk(depth: int) -> float:
                if depth == n:
                    return 1.0
                return block_success(ladder[n - 1 - depth]) * walk(depth + 1) ** 2

            return walk(0)

        for f0 in (0.55, 0.61, 0.70, 0.87, 0.93):
            ladder = [f0]
            for _ in range(6):
                ladder.append(purified_fidelity(ladder[-1]))
            for n_rounds in range(7):
                prefix = ladder[: n_rounds + 1]
                assert abs(ladder_success(prefix) - tree(prefix)) <= 1e-12


def test_criterion_6_monte_carlo_confidence():
    with _Criterion(6, "1e6-trial multiplexed success within 3 sigma and >= 0.999"):
        plan = purification_factor(
            PurificationSpec(f_initial=0.87, f_target=0.999, confidence_S=0.999)
        )
        analytic = 1.0 - (1.0 - plan.ladder_success_P) ** plan.multiplex_K
        assert analytic == pytest.approx(1.0 - 0.427**9, abs=2e-4)
        stats = simulate_purification(plan, trials=10**6, seed=42)
        sigma = math.sqrt(analytic * (1.0 - analytic) / stats.trials)
        assert abs(stats.empirical_p - analytic) <= 3 * sigma
        assert stats.empirical_p >= 0.999


def test_criterion_7_link_solver_agreement():
    with _Criterion(7, "exact vs normal solvers within 2%; tail sum to 1e-12"):
        cases = [
            (150, 0.1, 0.999),
            (500, 0.3, 0.999),
            (1000, 0.5, 0.99),
            (2000, 0.7, 0.9),
            (5000, 0.5, 0.999),
            (10000, 0.9, 0.99),
        ]
        for r, eta, s in cases:
            k_exact = min_attempts(r, eta, s, "exact_binomial")
            k_normal = min_attempts(r, eta, s, "normal")
            assert k_exact * eta * (1 - eta) >= 100
            assert abs(k_exact - k_normal) / k_exact <= 0.02

        rng = random.Random(2718)
        for _ in range(50):
            k = rng.randint(1, 1000)
            eta = rng.uniform(0.02, 0.98)
            r = rng.randint(0, k)
            log_eta, log_q = math.log(eta), math.log1p(-eta)
            tail = sum(
                math.exp(
                    math.lgamma(k + 1) - math.lgamma(i + 1) - math.lgamma(k - i + 1)
                    + i * log_eta + (k - i) * log_q
                )
                for i in range(r, k + 1)
            )
            tail = min(1.0, tail)
            exact = delivery_confidence(k, eta, r, "exact_binomial")
            assert exact == pytest.approx(tail, rel=1e-12, abs=1e-12)


def _random_scenario(rng: random.Random, label: str) -> Scenario:
    beta = rng.uniform(10.0, 100.0)
    return Scenario(
        label=label,
        code=CodeParams(
            alpha=rng.uniform(0.1, 1.0),
            beta=beta,
            p_phys=rng.uniform(1e-5, 0.5 / beta),
            gate_time_T=rng.uniform(1e-9, 1e-5),
        ),
        target_failure_PLB=10.0 ** rng.uniform(-24, -6),
        purification=PurificationSpec(
            f_initial=rng.uniform(0.55, 0.999),
            f_target=rng.uniform(0.9, 0.99999),
            confidence_S=rng.uniform(0.9, 0.9999),
        ),
        link=LinkSpec(loss_db=rng.uniform(5.0, 90.0), confidence_S=0.999),
        satellite=SatelliteSpec(
            power_Ps=rng.uniform(1.0, 2e4),
            source_power_Pr=rng.uniform(1e-6, 1e-3),
            source_brightness_Np=rng.uniform(1e4, 1e8),
        ),
    )


def test_criterion_8_chain_identities():
    with _Criterion(8, "chain identities on 1000 random scenarios to 1e-10"):
        rng = random.Random(31415)
        for i in range(1000):
            scenario = _random_scenario(rng, f"case-{i}")
            r = estimate(scenario)
            sat = scenario.satellite
            assert r.rate_ideal_RIP == pytest.approx(
                r.distance_D**2 * r.rate_logical_RLP, rel=1e-10
            )
            assert r.rate_with_purification_RIPP == pytest.approx(
                r.rate_ideal_RIP * r.factor_chi, rel=1e-10
            )
            assert r.rate_generation_RPG == pytest.approx(
                r.rate_with_purification_RIPP / r.eta, rel=1e-10
            )
            assert r.required_power == pytest.approx(
                r.rate_generation_RPG * sat.source_power_Pr / sat.source_brightness_Np,
                rel=1e-10,
            )
            # the power relation inverts back to the scenario's budget
            implied = (
                r.distance_D**2 * r.achievable_RLP_at_power * r.factor_chi
                * sat.source_power_Pr / (sat.source_brightness_Np * r.eta)
            )
            assert implied == pytest.approx(sat.power_Ps, rel=1e-10)


def test_criterion_9_sweep_regression():
    with _Criterion(9, "sweep monotone, non-crossing, exactly linear in power"):
        curves = [sweep_power(s) for s in builtin_scenarios()]
        for curve in curves:
            rates = [r for _, r in curve.points]
            assert all(b > a for a, b in zip(rates, rates[1:]))
        for points in zip(*(c.points for c in curves)):
            rates = [r for _, r in points]
            assert rates[0] > rates[1] > rates[2]
        # doubling the power doubles the rate bit-exactly
        doubling = [2.0**i for i in range(0, 18)]
        for scenario in builtin_scenarios():
            curve = sweep_power(scenario, doubling)
            rates = [r for _, r in curve.points]
            for a, b in zip(rates, rates[1:]):
                assert b == 2.0 * a
