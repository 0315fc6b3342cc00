"""Downlink transmission statistics.

Given a double-downlink transmittance ``eta``, these routines answer: how
many transmission attempts are needed so that at least ``r_needed`` pairs
arrive with confidence ``S``?  Three routes are provided, from exact to
cheap:

* ``delivery_confidence`` with ``method="exact_binomial"`` — the exact
  binomial upper tail via the regularized incomplete beta function;
* ``method="normal"`` — the normal approximation with mean ``k*eta`` and
  variance ``k*eta*(1-eta)``;
* ``markov_rate`` — the mean-based shortcut ``r_needed / eta``.
"""

from __future__ import annotations

import math

from scipy import special, stats

from .errors import DomainError

# Above this the beta-function tail loses its value as an "exact" reference;
# callers should switch to the normal approximation.
EXACT_BINOMIAL_MAX_ATTEMPTS = 10**8

_METHODS = ("exact_binomial", "normal")


def db_to_eta(loss_db: float) -> float:
    """Transmittance of a channel with the given attenuation in dB."""
    if not math.isfinite(loss_db) or loss_db < 0:
        raise DomainError(f"loss_db must be finite and >= 0, got {loss_db}")
    return 10.0 ** (-loss_db / 10.0)


def eta_to_db(eta: float) -> float:
    """Attenuation in dB of a channel with transmittance ``eta``."""
    if not 0.0 < eta <= 1.0:
        raise DomainError(f"eta must be in (0, 1], got {eta}")
    return -10.0 * math.log10(eta)


def _validate_counts(k: int, eta: float, r_needed: int) -> None:
    if k < 0:
        raise DomainError(f"attempt count k must be >= 0, got {k}")
    if r_needed < 0:
        raise DomainError(f"r_needed must be >= 0, got {r_needed}")
    if not (math.isfinite(eta) and 0.0 <= eta <= 1.0):
        raise DomainError(f"eta must be in [0, 1], got {eta}")


def delivery_confidence(
    k: int,
    eta: float,
    r_needed: int,
    method: str = "exact_binomial",
    continuity_correction: bool = False,
) -> float:
    """P(at least ``r_needed`` of ``k`` attempts succeed), each with prob ``eta``.

    ``exact_binomial`` evaluates the tail as I_eta(r, k-r+1) and is limited
    to k <= 1e8.  ``normal`` uses the N(k*eta, k*eta*(1-eta)) upper tail;
    the optional continuity correction shifts the cut to r - 1/2.
    Degenerate eta (0 or 1) is resolved exactly in both methods.
    """
    _validate_counts(k, eta, r_needed)
    if method not in _METHODS:
        raise DomainError(f"method must be one of {_METHODS}, got {method!r}")
    if r_needed == 0:
        return 1.0
    if eta == 0.0:
        return 0.0
    if eta == 1.0:
        return 1.0 if r_needed <= k else 0.0

    if method == "exact_binomial":
        if k > EXACT_BINOMIAL_MAX_ATTEMPTS:
            raise DomainError(
                f"exact_binomial supports k <= {EXACT_BINOMIAL_MAX_ATTEMPTS}; "
                f"got k={k} (use method='normal')"
            )
        if r_needed > k:
            return 0.0
        return float(special.betainc(r_needed, k - r_needed + 1, eta))

    mean = k * eta
    var = k * eta * (1.0 - eta)
    if var == 0.0:  # k == 0 with r_needed > 0
        return 0.0
    cut = r_needed - 0.5 if continuity_correction else float(r_needed)
    return float(stats.norm.sf(cut, loc=mean, scale=math.sqrt(var)))


def min_attempts(
    r_needed: int,
    eta: float,
    confidence_S: float,
    method: str = "exact_binomial",
) -> int:
    """Smallest attempt count whose delivery confidence reaches ``confidence_S``.

    Uses exponential bracketing followed by integer bisection; the
    confidence is monotone non-decreasing in the attempt count.
    """
    if not 0.0 < confidence_S < 1.0:
        raise DomainError(f"confidence_S must be in (0, 1), got {confidence_S}")
    _validate_counts(0, eta, r_needed)
    if r_needed == 0:
        return 0
    if eta == 0.0:
        raise DomainError("eta = 0 cannot deliver a positive pair count")
    if eta == 1.0:
        return r_needed

    def ok(k: int) -> bool:
        return delivery_confidence(k, eta, r_needed, method) >= confidence_S

    lo = 0  # always failing for r_needed > 0
    hi = max(1, math.ceil(r_needed / eta))
    while not ok(hi):
        lo = hi
        hi *= 2
        if method == "exact_binomial" and hi > EXACT_BINOMIAL_MAX_ATTEMPTS:
            raise DomainError(
                "exact_binomial bracket exceeded "
                f"{EXACT_BINOMIAL_MAX_ATTEMPTS} attempts; use method='normal'"
            )
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def markov_rate(r_needed: float, eta: float) -> float:
    """Mean-based attempt estimate ``r_needed / eta``.

    A mild underestimate of ``min_attempts`` at high confidence; rates and
    counts are interchangeable under the 1-second accounting window.
    """
    if not (math.isfinite(eta) and 0.0 < eta <= 1.0):
        raise DomainError(f"eta must be in (0, 1], got {eta}")
    if not (math.isfinite(r_needed) and r_needed >= 0):
        raise DomainError(f"r_needed must be finite and >= 0, got {r_needed}")
    return r_needed / eta
