"""End-to-end rate pipeline: code distance -> purification -> link -> power.

``estimate`` composes the full chain for one scenario and reports both the
hardware-limited clock (set by gate time) and the satellite-limited clock
(set by available power); the lower of the two is the effective clock
speed.  ``sweep_power`` evaluates the satellite-limited clock across a
power grid, and ``compare_gate_times`` places a clock speed on the ladder
of common qubit architectures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

from . import code, link, power, purify
from .errors import DomainError
from .model import GATE_TIMES, MAX_COMMERCIAL_POWER_W, Scenario

__all__ = [
    "RateReport",
    "SweepCurve",
    "GateTimeComparison",
    "estimate",
    "sweep_power",
    "default_power_grid",
    "classify_rate",
    "compare_gate_times",
    "marker_power",
]

#: Default sweep grid: 1 W to 100 kW, 200 points per decade.
SWEEP_MIN_W = 1.0
SWEEP_MAX_W = 100e3
SWEEP_POINTS_PER_DECADE = 200


@dataclass(frozen=True)
class RateReport:
    """All intermediate rates of one scenario estimate.

    ``rate_logical_RLP`` is the hardware-limited clock,
    ``achievable_RLP_at_power`` the satellite-limited clock at the
    scenario's power budget, and ``effective_clock`` their minimum.
    ``hardware_limited`` flags the (unusual) case where gate time, not
    satellite power, is the binding constraint.
    """

    label: str
    distance_D: int
    failure_at_D: float
    distance_mode: str
    rounds_N: int
    multiplex_K: int
    factor_chi: int
    eta: float
    rate_logical_RLP: float
    rate_ideal_RIP: float
    rate_with_purification_RIPP: float
    rate_generation_RPG: float
    required_power: float
    achievable_RLP_at_power: float
    effective_clock: float
    hardware_limited: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "distance_D": self.distance_D,
            "failure_at_D": self.failure_at_D,
            "distance_mode": self.distance_mode,
            "rounds_N": self.rounds_N,
            "multiplex_K": self.multiplex_K,
            "factor_chi": self.factor_chi,
            "eta": self.eta,
            "rate_logical_RLP": self.rate_logical_RLP,
            "rate_ideal_RIP": self.rate_ideal_RIP,
            "rate_with_purification_RIPP": self.rate_with_purification_RIPP,
            "rate_generation_RPG": self.rate_generation_RPG,
            "required_power": self.required_power,
            "achievable_RLP_at_power": self.achievable_RLP_at_power,
            "effective_clock": self.effective_clock,
            "hardware_limited": self.hardware_limited,
        }


def estimate(scenario: Scenario, distance_mode: str = "paper_rounding") -> RateReport:
    """Run the full chain for one scenario.

    The generation rate uses the mean-based shortcut ``R_IP+P / eta``; the
    exact and normal solvers in :mod:`satclock.link` exist to validate it.
    """
    solution = code.min_code_distance(
        scenario.target_failure_PLB, scenario.code, mode=distance_mode
    )
    plan = purify.purification_factor(scenario.purification)
    D = solution.distance_D
    chi = plan.factor_chi
    eta = scenario.link.eta

    r_lp = code.logical_pair_rate_hw(D, scenario.code.gate_time_T)
    r_ip = code.ideal_pair_rate(D, r_lp)
    r_ipp = r_ip * chi
    r_pg = link.markov_rate(r_ipp, eta)
    p_req = power.required_power(r_pg, scenario.satellite)
    r_sat = power.power_to_logical_rate(
        scenario.satellite.power_Ps, D, chi, eta, scenario.satellite
    )

    return RateReport(
        label=scenario.label,
        distance_D=D,
        failure_at_D=solution.failure_at_D,
        distance_mode=solution.mode,
        rounds_N=plan.rounds_N,
        multiplex_K=plan.multiplex_K,
        factor_chi=chi,
        eta=eta,
        rate_logical_RLP=r_lp,
        rate_ideal_RIP=r_ip,
        rate_with_purification_RIPP=r_ipp,
        rate_generation_RPG=r_pg,
        required_power=p_req,
        achievable_RLP_at_power=r_sat,
        effective_clock=min(r_lp, r_sat),
        hardware_limited=r_lp < r_sat,
    )


def default_power_grid() -> list[float]:
    """Logarithmic watt grid from 1 W to 100 kW, 200 points per decade."""
    decades = math.log10(SWEEP_MAX_W / SWEEP_MIN_W)
    n = int(round(decades * SWEEP_POINTS_PER_DECADE))
    return [
        SWEEP_MIN_W * 10.0 ** (i / SWEEP_POINTS_PER_DECADE) for i in range(n + 1)
    ]


@dataclass(frozen=True)
class SweepCurve:
    """Satellite-limited clock speed versus power for one scenario."""

    label: str
    points: tuple[tuple[float, float], ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "points": [{"P_s_watts": p, "R_LP_per_s": r} for p, r in self.points],
        }


def sweep_power(
    scenario: Scenario,
    powers: Sequence[float] | None = None,
    distance_mode: str = "paper_rounding",
) -> SweepCurve:
    """Evaluate the satellite-limited clock over a grid of power budgets."""
    grid = list(powers) if powers is not None else default_power_grid()
    if not grid:
        raise DomainError("power grid must be non-empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("power grid must be strictly increasing")

    solution = code.min_code_distance(
        scenario.target_failure_PLB, scenario.code, mode=distance_mode
    )
    plan = purify.purification_factor(scenario.purification)
    pts = tuple(
        (
            p_s,
            power.power_to_logical_rate(
                p_s, solution.distance_D, plan.factor_chi, scenario.link.eta,
                scenario.satellite,
            ),
        )
        for p_s in grid
    )
    return SweepCurve(label=scenario.label, points=pts)


@dataclass(frozen=True)
class GateTimeComparison:
    """Where a clock speed sits on the gate-time ladder of real hardware."""

    clock_rate: float
    slower_than: tuple[str, ...]
    faster_than: tuple[str, ...]
    nearest_below: str | None
    nearest_above: str | None

    @property
    def classification(self) -> str:
        if self.nearest_below and self.nearest_above:
            return f"between {self.nearest_below} and {self.nearest_above}"
        if self.nearest_below:
            return f"above all surveyed architectures (fastest: {self.nearest_below})"
        if self.nearest_above:
            return f"below all surveyed architectures (slowest: {self.nearest_above})"
        return "no reference architectures"

    def to_dict(self) -> dict[str, Any]:
        return {
            "clock_rate": self.clock_rate,
            "slower_than": list(self.slower_than),
            "faster_than": list(self.faster_than),
            "nearest_below": self.nearest_below,
            "nearest_above": self.nearest_above,
            "classification": self.classification,
        }


def classify_rate(rate: float) -> GateTimeComparison:
    """Place a clock rate on the surveyed architecture ladder."""
    if not (math.isfinite(rate) and rate >= 0):
        raise DomainError(f"rate must be finite and >= 0, got {rate}")
    slower = tuple(e.architecture for e in GATE_TIMES if e.rate_hz > rate)
    faster = tuple(e.architecture for e in GATE_TIMES if e.rate_hz <= rate)
    below = [e for e in GATE_TIMES if e.rate_hz <= rate]
    above = [e for e in GATE_TIMES if e.rate_hz > rate]
    nearest_below = max(below, key=lambda e: e.rate_hz).architecture if below else None
    nearest_above = min(above, key=lambda e: e.rate_hz).architecture if above else None
    return GateTimeComparison(
        clock_rate=rate,
        slower_than=slower,
        faster_than=faster,
        nearest_below=nearest_below,
        nearest_above=nearest_above,
    )


def compare_gate_times(report: RateReport) -> GateTimeComparison:
    """Classify a report's headline (satellite-limited) clock speed."""
    return classify_rate(report.achievable_RLP_at_power)


def marker_power() -> float:
    """The reference maximum commercial satellite power for sweep output."""
    return MAX_COMMERCIAL_POWER_W
