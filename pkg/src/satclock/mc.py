"""Seeded Monte Carlo validation of the analytic confidence arithmetic.

Trials are grouped into chunks whose size is a fixed function of the
inputs, and each chunk draws from its own counter-based Philox stream
keyed by ``(master seed, chunk index)``.  Results therefore depend only
on the inputs and the seed, never on how chunks are scheduled or how many
workers evaluate them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterator

import numpy as np

from . import bellsim, code, link, purify
from .errors import DomainError, SimulationBudgetError
from .model import PurificationPlan, Scenario

CHUNK_TRIALS = 1 << 14

#: Elementary coin flips allowed before the per-trial binomial sampler is
#: required (``k`` flips per trial in coin-flip mode).
DEFAULT_DRAW_BUDGET = 10**10

_SAMPLERS = ("auto", "coinflip", "binomial")


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=(int(seed), int(chunk_index)))
    return np.random.Generator(np.random.Philox(seed=ss))


def _chunks(trials: int, rows_per_chunk: int) -> Iterator[tuple[int, int]]:
    start = 0
    index = 0
    while start < trials:
        yield index, min(rows_per_chunk, trials - start)
        start += rows_per_chunk
        index += 1


@dataclass(frozen=True)
class PurificationStats:
    """Empirical at-least-one-ladder success over seeded trials."""

    trials: int
    successes: int
    empirical_p: float
    std_error: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "empirical_p": self.empirical_p,
            "std_error": self.std_error,
        }


@dataclass(frozen=True)
class TransmissionStats:
    """Empirical delivery statistics over seeded trials."""

    trials: int
    successes: int
    empirical_p: float
    std_error: float
    sample_mean: float
    sample_variance: float
    sampler: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "empirical_p": self.empirical_p,
            "std_error": self.std_error,
            "sample_mean": self.sample_mean,
            "sample_variance": self.sample_variance,
            "sampler": self.sampler,
        }


def _std_error(successes: int, trials: int) -> float:
    p_hat = successes / trials
    return math.sqrt(p_hat * (1.0 - p_hat) / trials)


def simulate_purification(
    plan: PurificationPlan, trials: int, seed: int
) -> PurificationStats:
    """Simulate ``multiplex_K`` independent ladders per trial.

    Each ladder runs its binary tree of 2->1 blocks; a block in round ``k``
    succeeds with probability ``block_success[k]``.  A trial counts as a
    success when at least one ladder survives every block.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")

    n_rounds = plan.rounds_N
    if n_rounds == 0:  # no blocks to fail
        return PurificationStats(
            trials=trials, successes=trials, empirical_p=1.0, std_error=0.0
        )

    # One probability per block of a single ladder, earliest round first.
    ladder_probs = np.concatenate(
        [
            np.full(2 ** (n_rounds - 1 - k), plan.block_success[k])
            for k in range(n_rounds)
        ]
    )
    blocks_per_ladder = ladder_probs.size
    probs = np.tile(ladder_probs, plan.multiplex_K)

    successes = 0
    for chunk_index, rows in _chunks(trials, CHUNK_TRIALS):
        rng = _chunk_rng(seed, chunk_index)
        draws = rng.random((rows, probs.size))
        block_ok = draws < probs
        ladder_ok = block_ok.reshape(rows, plan.multiplex_K, blocks_per_ladder).all(axis=2)
        successes += int(ladder_ok.any(axis=1).sum())

    return PurificationStats(
        trials=trials,
        successes=successes,
        empirical_p=successes / trials,
        std_error=_std_error(successes, trials),
    )


def simulate_transmission(
    k: int,
    eta: float,
    r_needed: int,
    trials: int,
    seed: int,
    sampler: str = "auto",
    draw_budget: int = DEFAULT_DRAW_BUDGET,
) -> TransmissionStats:
    """Empirical probability that ``k`` attempts deliver >= ``r_needed`` pairs.

    ``coinflip`` draws ``k`` individual transmissions per trial and is
    capped at ``draw_budget`` elementary draws; ``binomial`` draws each
    trial's count from an exact binomial sampler and has no such limit.
    ``auto`` picks coin flips within budget, the binomial sampler beyond.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if r_needed < 0:
        raise DomainError(f"r_needed must be >= 0, got {r_needed}")
    if not (math.isfinite(eta) and 0.0 <= eta <= 1.0):
        raise DomainError(f"eta must be in [0, 1], got {eta}")
    if sampler not in _SAMPLERS:
        raise DomainError(f"sampler must be one of {_SAMPLERS}, got {sampler!r}")

    over_budget = k * trials > draw_budget
    if sampler == "coinflip" and over_budget:
        raise SimulationBudgetError(
            f"{k} draws x {trials} trials exceeds the budget of {draw_budget}; "
            "use sampler='binomial' or 'auto'"
        )
    mode = sampler if sampler != "auto" else ("binomial" if over_budget else "coinflip")

    if mode == "coinflip":
        # Bound per-chunk memory at ~2^24 draws; the row count is a pure
        # function of k, so chunk boundaries are machine-independent.
        rows_per_chunk = max(1, min(CHUNK_TRIALS, (1 << 24) // max(k, 1)))
    else:
        rows_per_chunk = CHUNK_TRIALS

    successes = 0
    shift = float(r_needed)  # keeps squared deviations at O(spread), not O(k^2)
    sum_shifted = 0.0
    sumsq_shifted = 0.0
    for chunk_index, rows in _chunks(trials, rows_per_chunk):
        rng = _chunk_rng(seed, chunk_index)
        if mode == "coinflip":
            counts = (rng.random((rows, k)) < eta).sum(axis=1) if k else np.zeros(rows)
        else:
            counts = rng.binomial(k, eta, size=rows)
        successes += int((counts >= r_needed).sum())
        shifted = counts.astype(np.float64) - shift
        sum_shifted += float(shifted.sum())
        sumsq_shifted += float((shifted * shifted).sum())

    mean_shifted = sum_shifted / trials
    variance = (
        (sumsq_shifted - trials * mean_shifted * mean_shifted) / (trials - 1)
        if trials > 1
        else 0.0
    )
    return TransmissionStats(
        trials=trials,
        successes=successes,
        empirical_p=successes / trials,
        std_error=_std_error(successes, trials),
        sample_mean=shift + mean_shifted,
        sample_variance=max(0.0, variance),
        sampler=mode,
    )


# --------------------------------------------------------------------------
# Scenario-level validation report
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    analytic: float
    empirical: float
    delta: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "analytic": self.analytic,
            "empirical": self.empirical,
            "delta": self.delta,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ValidationReport:
    label: str
    trials: int
    seed: int
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "trials": self.trials,
            "seed": self.seed,
            "all_passed": self.all_passed,
            "checks": [c.to_dict() for c in self.checks],
        }


_ORACLE_FIDELITIES = (0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 0.99)


def _check(name: str, analytic: float, empirical: float, tolerance: float) -> CheckResult:
    delta = abs(empirical - analytic)
    return CheckResult(
        name=name,
        analytic=analytic,
        empirical=empirical,
        delta=delta,
        tolerance=tolerance,
        passed=delta <= tolerance,
    )


def validate(
    scenario: Scenario,
    trials: int,
    seed: int,
    distance_mode: str = "paper_rounding",
) -> ValidationReport:
    """Cross-check the analytic chain against simulation for one scenario.

    Three families of checks: the exact density-matrix oracle against the
    recurrence formulas, the multiplexed-purification confidence against
    seeded simulation, and the delivery confidence and count moments
    against seeded binomial sampling at the solved attempt count.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")

    checks: list[CheckResult] = []

    # Density-matrix oracle vs the recurrence map and block success formulas.
    worst_success = 0.0
    worst_fidelity = 0.0
    for f in _ORACLE_FIDELITIES:
        state = bellsim.make_input_state(f)
        success, out = bellsim.parity_check_block(state, state)
        worst_success = max(worst_success, abs(success - purify.block_success(f)))
        worst_fidelity = max(
            worst_fidelity, abs(out.fidelity_phi_plus - purify.purified_fidelity(f))
        )
    checks.append(_check("oracle_block_success", 0.0, worst_success, 1e-12))
    checks.append(_check("oracle_output_fidelity", 0.0, worst_fidelity, 1e-12))

    # Multiplexed purification confidence.
    plan = purify.purification_factor(scenario.purification)
    analytic_p = -math.expm1(
        plan.multiplex_K * math.log1p(-plan.ladder_success_P)
    )
    stats = simulate_purification(plan, trials, seed)
    sigma = math.sqrt(max(analytic_p * (1.0 - analytic_p), 1e-300) / trials)
    checks.append(
        _check("purification_confidence", analytic_p, stats.empirical_p, 3.0 * sigma)
    )

    # Delivery confidence at the solved attempt count, binomial-sampler path.
    solution = code.min_code_distance(
        scenario.target_failure_PLB, scenario.code, mode=distance_mode
    )
    r_ipp = code.ideal_pair_rate(
        solution.distance_D,
        code.logical_pair_rate_hw(solution.distance_D, scenario.code.gate_time_T),
    ) * plan.factor_chi
    r_needed = math.ceil(r_ipp)
    eta = scenario.link.eta
    k_star = link.min_attempts(
        r_needed, eta, scenario.link.confidence_S, method="normal"
    )
    analytic_d = link.delivery_confidence(k_star, eta, r_needed, method="normal")
    tstats = simulate_transmission(
        k_star, eta, r_needed, trials, seed + 1, sampler="binomial"
    )
    sigma_d = math.sqrt(max(analytic_d * (1.0 - analytic_d), 1e-300) / trials)
    checks.append(
        _check("delivery_confidence", analytic_d, tstats.empirical_p, 3.0 * sigma_d)
    )

    mean_expected = k_star * eta
    var_expected = k_star * eta * (1.0 - eta)
    checks.append(
        _check(
            "delivered_count_mean",
            mean_expected,
            tstats.sample_mean,
            3.0 * math.sqrt(var_expected / trials),
        )
    )
    var_sigma_rel = 3.0 * math.sqrt(2.0 / max(trials - 1, 1))
    checks.append(
        _check(
            "delivered_count_variance",
            var_expected,
            tstats.sample_variance,
            var_sigma_rel * var_expected,
        )
    )

    return ValidationReport(
        label=scenario.label, trials=trials, seed=seed, checks=tuple(checks)
    )
