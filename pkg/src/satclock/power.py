"""Satellite power budget: pair-generation capacity and the closed-form
power/clock relation.

Sources are treated as continuously divisible by default (capacity is
linear in power); ``integer_sources=True`` rounds to whole sources for a
conservative figure.
"""

from __future__ import annotations

import math

from .errors import DomainError
from .model import SatelliteSpec


def generation_capacity(sat: SatelliteSpec, integer_sources: bool = False) -> float:
    """Pairs per second a satellite can generate with all power on sources."""
    n_sources = sat.power_Ps / sat.source_power_Pr
    if integer_sources:
        n_sources = float(math.floor(n_sources))
    return n_sources * sat.source_brightness_Np


def required_power(r_pg: float, sat: SatelliteSpec, integer_sources: bool = False) -> float:
    """Watts needed to sustain a pair-generation rate of ``r_pg``."""
    if not (math.isfinite(r_pg) and r_pg >= 0):
        raise DomainError(f"r_pg must be finite and >= 0, got {r_pg}")
    n_sources = r_pg / sat.source_brightness_Np
    if integer_sources:
        n_sources = float(math.ceil(n_sources))
    return n_sources * sat.source_power_Pr


def power_to_logical_rate(
    power_Ps: float, D: int, chi: int, eta: float, sat: SatelliteSpec
) -> float:
    """Satellite-limited logical pair rate at a given power budget.

    Inverts the chain pair-capacity -> transmitted -> purified -> lattice
    surgery: ``Ps * Np * eta / (D**2 * chi * Pr)``.
    """
    if not (math.isfinite(power_Ps) and power_Ps > 0):
        raise DomainError(f"power_Ps must be > 0, got {power_Ps}")
    if D < 1:
        raise DomainError(f"distance must be >= 1, got {D}")
    if chi < 1:
        raise DomainError(f"chi must be >= 1, got {chi}")
    if not 0.0 < eta <= 1.0:
        raise DomainError(f"eta must be in (0, 1], got {eta}")
    return (power_Ps * sat.source_brightness_Np * eta) / (
        float(D) * float(D) * float(chi) * sat.source_power_Pr
    )
