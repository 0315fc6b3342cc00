"""Analytic planner for 2->1 parity-check recurrence purification with
circuit multiplexing.

A ladder of recurrence rounds lifts the pair fidelity from ``f_initial``
to at least ``f_target``; because every round is post-selected, the whole
ladder succeeds only with probability ``P``, and ``K`` independent copies
are provisioned so that at least one survives with confidence ``S``.  The
resulting pair cost per delivered pair is ``chi = K * 2**N``.
"""

from __future__ import annotations

import math

from .errors import DomainError, UnreachableFidelityError
from .model import PurificationPlan, PurificationSpec

_MAX_ROUNDS = 10_000


def purified_fidelity(F: float) -> float:
    """Output fidelity of one successful 2->1 block: F^2 / (F^2 + (1-F)^2)."""
    if not 0.0 < F <= 1.0:
        raise DomainError(f"fidelity must be in (0, 1], got {F}")
    num = F * F
    return num / (num + (1.0 - F) * (1.0 - F))


def block_success(F: float) -> float:
    """Success probability of one 2->1 block: F^2 + (1-F)^2."""
    if not 0.0 <= F <= 1.0:
        raise DomainError(f"fidelity must be in [0, 1], got {F}")
    return F * F + (1.0 - F) * (1.0 - F)


def fidelity_ladder(spec: PurificationSpec) -> tuple[int, list[float]]:
    """Minimum round count and the fidelity sequence reaching the target.

    Iterates the recurrence map from ``f_initial`` until the fidelity is at
    least ``f_target``; zero rounds if the input already qualifies.
    """
    ladder = [spec.f_initial]
    while ladder[-1] < spec.f_target:
        nxt = purified_fidelity(ladder[-1])
        if nxt <= ladder[-1] or len(ladder) > _MAX_ROUNDS:
            raise UnreachableFidelityError(
                f"target fidelity {spec.f_target} unreachable from {spec.f_initial}"
            )
        ladder.append(nxt)
    return len(ladder) - 1, ladder


def ladder_success(ladder: list[float] | tuple[float, ...]) -> float:
    """Probability that every block of an N-round ladder succeeds.

    Round ``k`` (input fidelity ``ladder[k]``) runs ``2**(N-1-k)`` blocks in
    parallel, all of which must succeed; the empty ladder succeeds surely.
    """
    n_rounds = len(ladder) - 1
    if n_rounds < 0:
        raise DomainError("ladder must contain at least the input fidelity")
    prob = 1.0
    for k in range(n_rounds):
        prob *= block_success(ladder[k]) ** (2 ** (n_rounds - 1 - k))
    return prob


def multiplex_count(P: float, S: float) -> int:
    """Fewest parallel copies so that at least one succeeds with confidence S.

    Closed form ``ceil(ln(1-S)/ln(1-P))`` with an exactness check one step
    either side to absorb floating-point edge cases.
    """
    if not 0.0 < P < 1.0:
        raise DomainError(f"success probability P must be in (0, 1), got {P}")
    if not 0.0 < S < 1.0:
        raise DomainError(f"confidence S must be in (0, 1), got {S}")

    def at_least_one(k: int) -> float:
        return -math.expm1(k * math.log1p(-P))

    K = max(1, math.ceil(math.log1p(-S) / math.log1p(-P)))
    while at_least_one(K) < S:
        K += 1
    while K > 1 and at_least_one(K - 1) >= S:
        K -= 1
    return K


def purification_factor(spec: PurificationSpec) -> PurificationPlan:
    """Full plan for a purification spec: rounds, ladder, K, and chi."""
    n_rounds, ladder = fidelity_ladder(spec)
    blocks = tuple(block_success(f) for f in ladder[:n_rounds])
    P = ladder_success(ladder)
    K = 1 if n_rounds == 0 else multiplex_count(P, spec.confidence_S)
    return PurificationPlan(
        rounds_N=n_rounds,
        fidelity_ladder=tuple(ladder),
        block_success=blocks,
        ladder_success_P=P,
        multiplex_K=K,
        factor_chi=K * 2**n_rounds,
    )
