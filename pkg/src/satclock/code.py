"""Surface-code scaling: logical error rate, pair-failure rate, minimum
distance, and the hardware-limited rate chain.

All failure-rate evaluations run in log space so that targets around
1e-21 remain exact; the naive power form underflows long before the
distances of interest are reached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from .errors import DomainError, UnsatisfiableDistanceError
from .model import CodeParams

#: Largest distance searched before a target is declared unsatisfiable.
MAX_DISTANCE = 10_000

# Relative slack when comparing a failure rate against a target, so that a
# distance sitting exactly on the target is accepted despite rounding noise.
_BOUNDARY_LOG_TOL = 1e-12

_MODES = ("strict", "paper_rounding")


@dataclass(frozen=True)
class DistanceSolution:
    """A solved code distance together with the failure rate it achieves."""

    distance_D: int
    failure_at_D: float
    mode: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "distance_D": self.distance_D,
            "failure_at_D": self.failure_at_D,
            "mode": self.mode,
        }


def _check_distance(D: int) -> None:
    if not isinstance(D, int) or isinstance(D, bool) or D < 1:
        raise DomainError(f"code distance must be an integer >= 1, got {D!r}")


def _log_logical_error_rate(D: float, params: CodeParams) -> float:
    return math.log(params.alpha) + 0.5 * (D + 1) * (
        math.log(params.beta) + math.log(params.p_phys)
    )


def _log_pair_failure(D: float, params: CodeParams) -> float:
    return math.log(4.0) + math.log(D) + _log_logical_error_rate(D, params)


def logical_error_rate(D: int, params: CodeParams) -> float:
    """Per-syndrome-cycle logical error rate ``alpha*(beta*p)**((D+1)/2)``.

    The exponent is evaluated as a real number, so even distances are
    permitted.
    """
    _check_distance(D)
    if params.beta * params.p_phys >= 1.0:
        raise DomainError("beta * p_phys >= 1: above threshold, scaling is meaningless")
    return math.exp(_log_logical_error_rate(D, params))


def operation_success(D: int, P_L: float, mode: str = "exact") -> float:
    """Success probability of one D-round fault-tolerant operation.

    ``exact`` returns ``(1 - P_L)**D``; ``first_order`` the linearized
    ``max(0, 1 - D*P_L)``.
    """
    _check_distance(D)
    if not 0.0 <= P_L <= 1.0:
        raise DomainError(f"P_L must be in [0, 1], got {P_L}")
    if mode == "exact":
        if P_L == 1.0:
            return 0.0
        # log1p keeps full precision for P_L far below one ulp of 1.0
        return math.exp(D * math.log1p(-P_L))
    if mode == "first_order":
        return max(0.0, 1.0 - D * P_L)
    raise DomainError(f"mode must be 'exact' or 'first_order', got {mode!r}")


def logical_pair_failure(D: int, params: CodeParams) -> float:
    """First-order failure rate of logical pair production, ``4*D*P_L``.

    Four D-round operations make up one logical pair, each failing with
    probability ``D*P_L`` to first order.
    """
    _check_distance(D)
    if params.beta * params.p_phys >= 1.0:
        raise DomainError("beta * p_phys >= 1: above threshold, scaling is meaningless")
    return math.exp(_log_pair_failure(D, params))


def min_code_distance(
    target: float,
    params: CodeParams,
    mode: str = "paper_rounding",
    odd_only: bool = False,
) -> DistanceSolution:
    """Smallest code distance whose pair-failure rate meets ``target``.

    ``strict`` scans integers upward and returns the first distance at or
    below the target, so the result is a true bound.  ``paper_rounding``
    solves the real-valued crossing of the failure curve by bisection and
    rounds to the nearest integer, which can land one step short of the
    target.  ``odd_only`` restricts the answer to odd distances.
    """
    if not 0.0 < target < 1.0:
        raise DomainError(f"target must be in (0, 1), got {target}")
    if mode not in _MODES:
        raise DomainError(f"mode must be one of {_MODES}, got {mode!r}")
    if params.beta * params.p_phys >= 1.0:
        raise DomainError("beta * p_phys >= 1: above threshold, no distance suffices")

    log_target = math.log(target)

    if mode == "strict":
        step = 2 if odd_only else 1
        for D in range(1, MAX_DISTANCE + 1, step):
            if _log_pair_failure(D, params) <= log_target + _BOUNDARY_LOG_TOL:
                return DistanceSolution(D, logical_pair_failure(D, params), mode)
        raise UnsatisfiableDistanceError(
            f"no distance <= {MAX_DISTANCE} meets target {target}"
        )

    # Real-valued crossing: the failure curve peaks at D = -2/ln(beta*p) and
    # decreases beyond; bisect on the decreasing branch.
    log_bp = math.log(params.beta * params.p_phys)
    lo = max(1.0, -2.0 / log_bp)
    if _log_pair_failure(lo, params) - log_target <= 0.0:
        D_real = lo  # entire decreasing branch already satisfies the target
    else:
        hi = 2.0 * lo
        while _log_pair_failure(hi, params) - log_target > 0.0:
            hi *= 2.0
            if hi > 4 * MAX_DISTANCE:
                raise UnsatisfiableDistanceError(
                    f"no distance <= {MAX_DISTANCE} meets target {target}"
                )
        lo_b = lo
        while hi - lo_b > 1e-9:
            mid = 0.5 * (lo_b + hi)
            if _log_pair_failure(mid, params) - log_target > 0.0:
                lo_b = mid
            else:
                hi = mid
        D_real = 0.5 * (lo_b + hi)

    if odd_only:
        D = max(1, 2 * math.floor((D_real - 1.0) / 2.0 + 0.5) + 1)
    else:
        D = max(1, math.floor(D_real + 0.5))
    if D > MAX_DISTANCE:
        raise UnsatisfiableDistanceError(
            f"no distance <= {MAX_DISTANCE} meets target {target}"
        )
    return DistanceSolution(D, logical_pair_failure(D, params), mode)


def logical_pair_rate_hw(D: int, gate_time_T: float) -> float:
    """Hardware-limited logical pair rate ``1 / (6 * T * D)`` in pairs/s.

    One syndrome cycle costs a depth-6 circuit at gate time ``T``, and a
    logical pair costs ``D`` cycles.
    """
    _check_distance(D)
    if not gate_time_T > 0:
        raise DomainError(f"gate_time_T must be > 0, got {gate_time_T}")
    return 1.0 / (6.0 * gate_time_T * D)


def ideal_pair_rate(D: int, R_LP: float) -> float:
    """Physical high-fidelity pair rate ``D**2 * R_LP`` sustaining rate ``R_LP``."""
    _check_distance(D)
    if not (math.isfinite(R_LP) and R_LP >= 0):
        raise DomainError(f"R_LP must be finite and >= 0, got {R_LP}")
    return float(D * D) * R_LP
