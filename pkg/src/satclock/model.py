"""Domain types, unit conventions, and the built-in scenario catalog.

Units are fixed package-wide: seconds, watts, dimensionless probabilities,
and attenuation in dB with ``loss_db = -10*log10(eta)``.  Every type
validates its invariants at construction and is immutable afterwards, so
downstream solvers never see an ill-formed input.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping

from .errors import DomainError, ScenarioFormatError
from .link import db_to_eta, eta_to_db

#: Default per-gate time (superconducting-class hardware), overridable.
DEFAULT_GATE_TIME_S = 50e-9

#: Power of the largest commercial communication satellite considered.
MAX_COMMERCIAL_POWER_W = 10e3

_REL_TOL_DB_ETA = 1e-12


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def _finite(x: float) -> bool:
    return isinstance(x, (int, float)) and math.isfinite(x)


@dataclass(frozen=True)
class CodeParams:
    """Surface-code error-model constants and gate time.

    ``alpha`` and ``beta`` set the per-cycle logical error scaling
    ``alpha * (beta * p_phys) ** ((D + 1) / 2)``; ``beta * p_phys < 1``
    keeps the code below threshold so the scaling shrinks with distance.
    """

    alpha: float = 0.3
    beta: float = 70.0
    p_phys: float = 1e-3
    gate_time_T: float = DEFAULT_GATE_TIME_S

    def __post_init__(self) -> None:
        _require(_finite(self.alpha) and self.alpha > 0, f"alpha must be > 0, got {self.alpha}")
        _require(_finite(self.beta) and self.beta > 0, f"beta must be > 0, got {self.beta}")
        _require(
            _finite(self.p_phys) and 0 < self.p_phys < 1,
            f"p_phys must be in (0, 1), got {self.p_phys}",
        )
        _require(
            self.beta * self.p_phys < 1,
            f"beta * p_phys = {self.beta * self.p_phys} is not below threshold (< 1)",
        )
        _require(
            _finite(self.gate_time_T) and self.gate_time_T > 0,
            f"gate_time_T must be > 0 seconds, got {self.gate_time_T}",
        )

    def to_dict(self) -> dict[str, float]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "p_phys": self.p_phys,
            "gate_time_T": self.gate_time_T,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "CodeParams":
        _check_keys(data, ("alpha", "beta", "p_phys", "gate_time_T"), "code")
        return cls(**data)


@dataclass(frozen=True)
class PurificationSpec:
    """Input fidelity, target fidelity, and confidence for purification planning.

    The recurrence map only gains above fidelity 1/2, hence
    ``f_initial > 0.5``; ``f_target = 1`` is unreachable and rejected.
    """

    f_initial: float
    f_target: float
    confidence_S: float

    def __post_init__(self) -> None:
        _require(
            _finite(self.f_initial) and 0.5 < self.f_initial <= 1.0,
            f"f_initial must be in (0.5, 1], got {self.f_initial}",
        )
        _require(
            _finite(self.f_target) and 0.0 < self.f_target < 1.0,
            f"f_target must be in (0, 1), got {self.f_target}",
        )
        _require(
            _finite(self.confidence_S) and 0.0 < self.confidence_S < 1.0,
            f"confidence_S must be in (0, 1), got {self.confidence_S}",
        )

    @property
    def epsilon(self) -> float:
        """Allowed infidelity of the purified output, ``1 - f_target``."""
        return 1.0 - self.f_target

    def to_dict(self) -> dict[str, float]:
        return {
            "f_initial": self.f_initial,
            "f_target": self.f_target,
            "confidence_S": self.confidence_S,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PurificationSpec":
        _check_keys(
            data, ("f_initial", "f_target", "confidence_S", "epsilon"), "purification"
        )
        d = dict(data)
        epsilon = d.pop("epsilon", None)
        spec = cls(**d)
        if epsilon is not None and abs(epsilon - spec.epsilon) > 1e-12:
            raise ScenarioFormatError(
                f"epsilon={epsilon} inconsistent with f_target={spec.f_target}"
            )
        return spec


@dataclass(frozen=True)
class PurificationPlan:
    """Resolved purification schedule: rounds, fidelities, multiplexing.

    ``factor_chi = multiplex_K * 2**rounds_N`` raw pairs are consumed per
    delivered high-fidelity pair.
    """

    rounds_N: int
    fidelity_ladder: tuple[float, ...]
    block_success: tuple[float, ...]
    ladder_success_P: float
    multiplex_K: int
    factor_chi: int

    def __post_init__(self) -> None:
        _require(self.rounds_N >= 0, f"rounds_N must be >= 0, got {self.rounds_N}")
        _require(
            len(self.fidelity_ladder) == self.rounds_N + 1,
            "fidelity_ladder must hold one entry per round plus the input",
        )
        _require(
            len(self.block_success) == self.rounds_N,
            "block_success must hold one entry per round",
        )
        _require(
            all(_finite(f) and 0.0 < f <= 1.0 for f in self.fidelity_ladder),
            "fidelity_ladder entries must be in (0, 1]",
        )
        _require(
            all(_finite(q) and 0.0 <= q <= 1.0 for q in self.block_success),
            "block_success entries must be probabilities",
        )
        if 0.5 < self.fidelity_ladder[0] < 1.0:  # 1.0 is a fixed point
            ladder = self.fidelity_ladder
            _require(
                all(a < b for a, b in zip(ladder, ladder[1:])),
                "fidelity_ladder must be strictly increasing above 1/2",
            )
        _require(
            _finite(self.ladder_success_P) and 0.0 <= self.ladder_success_P <= 1.0,
            f"ladder_success_P must be a probability, got {self.ladder_success_P}",
        )
        _require(self.multiplex_K >= 1, f"multiplex_K must be >= 1, got {self.multiplex_K}")
        _require(
            self.factor_chi == self.multiplex_K * 2**self.rounds_N,
            f"factor_chi must equal multiplex_K * 2**rounds_N, got {self.factor_chi}",
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "rounds_N": self.rounds_N,
            "fidelity_ladder": list(self.fidelity_ladder),
            "block_success": list(self.block_success),
            "ladder_success_P": self.ladder_success_P,
            "multiplex_K": self.multiplex_K,
            "factor_chi": self.factor_chi,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PurificationPlan":
        _check_keys(
            data,
            (
                "rounds_N",
                "fidelity_ladder",
                "block_success",
                "ladder_success_P",
                "multiplex_K",
                "factor_chi",
            ),
            "plan",
        )
        d = dict(data)
        d["fidelity_ladder"] = tuple(d["fidelity_ladder"])
        d["block_success"] = tuple(d["block_success"])
        return cls(**d)


@dataclass(frozen=True)
class LinkSpec:
    """Double-downlink loss and delivery confidence.

    ``eta`` is derived from ``loss_db`` when omitted; if both are given
    they must agree to 1e-12 relative.
    """

    loss_db: float
    confidence_S: float
    eta: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        _require(
            _finite(self.loss_db) and self.loss_db >= 0,
            f"loss_db must be >= 0, got {self.loss_db}",
        )
        _require(
            _finite(self.confidence_S) and 0.0 < self.confidence_S < 1.0,
            f"confidence_S must be in (0, 1), got {self.confidence_S}",
        )
        derived = db_to_eta(self.loss_db)
        if self.eta is None:
            object.__setattr__(self, "eta", derived)
        else:
            _require(
                _finite(self.eta) and 0.0 < self.eta <= 1.0,
                f"eta must be in (0, 1], got {self.eta}",
            )
            _require(
                abs(self.eta - derived) <= _REL_TOL_DB_ETA * derived,
                f"eta={self.eta} inconsistent with loss_db={self.loss_db} "
                f"(expected {derived})",
            )

    @classmethod
    def from_eta(cls, eta: float, confidence_S: float) -> "LinkSpec":
        return cls(loss_db=eta_to_db(eta), confidence_S=confidence_S, eta=eta)

    def to_dict(self) -> dict[str, float]:
        return {"loss_db": self.loss_db, "eta": self.eta, "confidence_S": self.confidence_S}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "LinkSpec":
        _check_keys(data, ("loss_db", "eta", "confidence_S"), "link")
        d = dict(data)
        if "loss_db" not in d:
            if "eta" not in d:
                raise ScenarioFormatError("link requires 'loss_db' or 'eta'")
            d["loss_db"] = eta_to_db(d["eta"])
        return cls(**d)


@dataclass(frozen=True)
class SatelliteSpec:
    """Satellite power budget and pair-source characteristics."""

    power_Ps: float
    source_power_Pr: float
    source_brightness_Np: float

    def __post_init__(self) -> None:
        for name in ("power_Ps", "source_power_Pr", "source_brightness_Np"):
            v = getattr(self, name)
            _require(_finite(v) and v > 0, f"{name} must be > 0, got {v}")

    def to_dict(self) -> dict[str, float]:
        return {
            "power_Ps": self.power_Ps,
            "source_power_Pr": self.source_power_Pr,
            "source_brightness_Np": self.source_brightness_Np,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SatelliteSpec":
        _check_keys(
            data, ("power_Ps", "source_power_Pr", "source_brightness_Np"), "satellite"
        )
        return cls(**data)


@dataclass(frozen=True)
class Scenario:
    """One end-to-end estimation case: code, purification, link, satellite."""

    label: str
    code: CodeParams
    target_failure_PLB: float
    purification: PurificationSpec
    link: LinkSpec
    satellite: SatelliteSpec

    def __post_init__(self) -> None:
        _require(
            _finite(self.target_failure_PLB) and 0.0 < self.target_failure_PLB < 1.0,
            f"target_failure_PLB must be in (0, 1), got {self.target_failure_PLB}",
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "code": self.code.to_dict(),
            "target_failure_PLB": self.target_failure_PLB,
            "purification": self.purification.to_dict(),
            "link": self.link.to_dict(),
            "satellite": self.satellite.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Scenario":
        _check_keys(
            data,
            ("label", "code", "target_failure_PLB", "purification", "link", "satellite"),
            "scenario",
        )
        try:
            return cls(
                label=str(data["label"]),
                code=CodeParams.from_dict(data["code"]),
                target_failure_PLB=data["target_failure_PLB"],
                purification=PurificationSpec.from_dict(data["purification"]),
                link=LinkSpec.from_dict(data["link"]),
                satellite=SatelliteSpec.from_dict(data["satellite"]),
            )
        except KeyError as exc:
            raise ScenarioFormatError(f"scenario is missing field {exc.args[0]!r}") from exc

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Scenario":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ScenarioFormatError("scenario document must be a JSON object")
        return cls.from_dict(data)


def _check_keys(data: Mapping[str, Any], allowed: tuple[str, ...], ctx: str) -> None:
    if not isinstance(data, Mapping):
        raise ScenarioFormatError(f"{ctx} section must be a mapping")
    unknown = set(data) - set(allowed)
    if unknown:
        raise ScenarioFormatError(f"unknown key(s) in {ctx}: {sorted(unknown)}")
    for key, value in data.items():
        if key in ("label",):
            continue
        if isinstance(value, bool) or (
            not isinstance(value, (int, float, Mapping, list, tuple))
        ):
            raise ScenarioFormatError(f"field {ctx}.{key} has unsupported type")


# --------------------------------------------------------------------------
# Built-in scenario catalog (three distance classes, shared hardware numbers)
# --------------------------------------------------------------------------

#: Most optimistic average double-downlink losses per distance class, dB.
CLASS_LOSSES_DB = {
    "state": 45.1,
    "continental": 65.6,
    "transcontinental": 79.1,
}

_SHARED = dict(
    code=CodeParams(alpha=0.3, beta=70.0, p_phys=1e-3, gate_time_T=DEFAULT_GATE_TIME_S),
    target_failure_PLB=4.28e-21,
    purification=PurificationSpec(f_initial=0.87, f_target=0.999, confidence_S=0.999),
    satellite=SatelliteSpec(power_Ps=10e3, source_power_Pr=15e-6, source_brightness_Np=4e6),
)


def builtin_scenario(name: str) -> Scenario:
    """Catalog scenario for a distance class: state, continental, transcontinental."""
    key = name.strip().lower()
    if key not in CLASS_LOSSES_DB:
        raise DomainError(
            f"unknown builtin scenario {name!r}; choose from {sorted(CLASS_LOSSES_DB)}"
        )
    return Scenario(
        label=key,
        link=LinkSpec(loss_db=CLASS_LOSSES_DB[key], confidence_S=0.999),
        **_SHARED,
    )


def builtin_scenarios() -> list[Scenario]:
    """All catalog scenarios, in distance order."""
    return [builtin_scenario(name) for name in CLASS_LOSSES_DB]


# --------------------------------------------------------------------------
# Reference tables (report metadata, not model inputs)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GateTimeEntry:
    architecture: str
    gate_time_s: float
    rate_hz: float


@dataclass(frozen=True)
class SatellitePowerEntry:
    name: str
    power_W: float


GATE_TIMES: tuple[GateTimeEntry, ...] = (
    GateTimeEntry("superconducting", 50e-9, 2e7),
    GateTimeEntry("nv diamond", 0.05e-6, 2e7),
    GateTimeEntry("ion trap", 1.6e-6, 6.25e5),
    GateTimeEntry("nmr", 1e-3, 1e3),
)

SATELLITE_SURVEY: tuple[SatellitePowerEntry, ...] = (
    SatellitePowerEntry("GSAT-11", 13.6e3),
    SatellitePowerEntry("GSAT-31", 4.7e3),
    SatellitePowerEntry("GSAT-7A", 3.3e3),
    SatellitePowerEntry("GSAT-29", 4.6e3),
    SatellitePowerEntry("GSAT-30", 6e3),
)


def gate_time(architecture: str) -> float:
    """Average gate time in seconds for a surveyed qubit architecture."""
    key = architecture.strip().lower()
    for entry in GATE_TIMES:
        if entry.architecture == key:
            return entry.gate_time_s
    raise DomainError(
        f"unknown architecture {architecture!r}; choose from "
        f"{[e.architecture for e in GATE_TIMES]}"
    )


def satellite_power(name: str) -> float:
    """Power rating in watts for a surveyed communication satellite."""
    key = name.strip().upper()
    for entry in SATELLITE_SURVEY:
        if entry.name.upper() == key:
            return entry.power_W
    raise DomainError(
        f"unknown satellite {name!r}; choose from {[e.name for e in SATELLITE_SURVEY]}"
    )


def reference_tables() -> dict[str, Any]:
    """Satellite power survey and gate-time ladder as plain data."""
    return {
        "satellites": [
            {"name": e.name, "power_W": e.power_W} for e in SATELLITE_SURVEY
        ],
        "gate_times": [
            {
                "architecture": e.architecture,
                "gate_time_s": e.gate_time_s,
                "rate_hz": e.rate_hz,
            }
            for e in GATE_TIMES
        ],
        "max_commercial_power_W": MAX_COMMERCIAL_POWER_W,
    }
