"""HTTP service exposing the estimator as request/response endpoints.

Run with ``uvicorn satclock.service:app``.  Request and response bodies
are pydantic models mirroring the scenario-file schema, so anything that
round-trips through the CLI's JSON also round-trips through the API.
Domain errors map to 422, unknown builtin names to 404.
"""

from __future__ import annotations

from typing import Any, Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import estimator, mc, purify
from .code import logical_pair_failure, min_code_distance
from .errors import DomainError, ScenarioFormatError
from .model import (
    CLASS_LOSSES_DB,
    DEFAULT_GATE_TIME_S,
    CodeParams,
    PurificationSpec,
    Scenario,
    builtin_scenario,
    builtin_scenarios,
    reference_tables,
)

app = FastAPI(
    title="satclock",
    description="Logical Bell-pair clock-speed estimation for satellite-fed "
    "distributed quantum computation.",
    version="0.1.0",
)


class CodeParamsIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    alpha: float = 0.3
    beta: float = 70.0
    p_phys: float = 1e-3
    gate_time_T: float = DEFAULT_GATE_TIME_S


class PurificationSpecIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    f_initial: float
    f_target: float
    confidence_S: float


class LinkSpecIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    loss_db: float | None = None
    eta: float | None = None
    confidence_S: float


class SatelliteSpecIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    power_Ps: float
    source_power_Pr: float
    source_brightness_Np: float


class ScenarioIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    label: str = "custom"
    code: CodeParamsIn = CodeParamsIn()
    target_failure_PLB: float
    purification: PurificationSpecIn
    link: LinkSpecIn
    satellite: SatelliteSpecIn

    def to_domain(self) -> Scenario:
        data = self.model_dump()
        link = {k: v for k, v in data["link"].items() if v is not None}
        data["link"] = link
        return Scenario.from_dict(data)


class ScenarioRef(BaseModel):
    """Either a builtin catalog name or a full inline scenario."""

    model_config = ConfigDict(extra="forbid")
    builtin: str | None = None
    scenario: ScenarioIn | None = None

    def resolve(self) -> Scenario:
        if (self.builtin is None) == (self.scenario is None):
            raise HTTPException(
                status_code=422,
                detail="provide exactly one of 'builtin' or 'scenario'",
            )
        if self.builtin is not None:
            if self.builtin.strip().lower() not in CLASS_LOSSES_DB:
                raise HTTPException(
                    status_code=404, detail=f"unknown builtin scenario {self.builtin!r}"
                )
            return builtin_scenario(self.builtin)
        return _domain(self.scenario.to_domain)


def _domain(fn, *args: Any, **kwargs: Any):
    try:
        return fn(*args, **kwargs)
    except (DomainError, ScenarioFormatError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


class DistanceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    target: float
    alpha: float = 0.3
    beta: float = 70.0
    p_phys: float = 1e-3
    mode: Literal["paper_rounding", "strict"] = "paper_rounding"
    odd_only: bool = False


class DistanceResponse(BaseModel):
    distance_D: int
    failure_at_D: float
    failure_at_prev: float | None = None
    mode: str


class PurifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    f_initial: float
    f_target: float
    confidence_S: float = 0.999


class PurificationPlanOut(BaseModel):
    rounds_N: int
    fidelity_ladder: list[float]
    block_success: list[float]
    ladder_success_P: float
    multiplex_K: int
    factor_chi: int


class GateTimeComparisonOut(BaseModel):
    clock_rate: float
    slower_than: list[str]
    faster_than: list[str]
    nearest_below: str | None
    nearest_above: str | None
    classification: str


class RateReportOut(BaseModel):
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
    gate_time_comparison: GateTimeComparisonOut


class EstimateRequest(ScenarioRef):
    mode: Literal["paper_rounding", "strict"] = "paper_rounding"


class SweepRequest(ScenarioRef):
    mode: Literal["paper_rounding", "strict"] = "paper_rounding"
    powers: list[float] | None = Field(
        default=None, description="strictly increasing watt grid; default 1 W-100 kW"
    )


class SweepPointOut(BaseModel):
    P_s_watts: float
    R_LP_per_s: float


class SweepCurveOut(BaseModel):
    label: str
    points: list[SweepPointOut]


class SweepResponse(BaseModel):
    marker_power_watts: float
    curves: list[SweepCurveOut]


class ValidateRequest(ScenarioRef):
    trials: int = 100_000
    seed: int = 42
    mode: Literal["paper_rounding", "strict"] = "paper_rounding"


class CheckResultOut(BaseModel):
    name: str
    analytic: float
    empirical: float
    delta: float
    tolerance: float
    passed: bool


class ValidationReportOut(BaseModel):
    label: str
    trials: int
    seed: int
    all_passed: bool
    checks: list[CheckResultOut]


@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok"}


@app.get("/scenarios")
def list_scenarios() -> list[dict[str, Any]]:
    return [s.to_dict() for s in builtin_scenarios()]


@app.get("/scenarios/{name}")
def get_scenario(name: str) -> dict[str, Any]:
    if name.strip().lower() not in CLASS_LOSSES_DB:
        raise HTTPException(status_code=404, detail=f"unknown builtin scenario {name!r}")
    return builtin_scenario(name).to_dict()


@app.get("/reference")
def get_reference() -> dict[str, Any]:
    return reference_tables()


@app.post("/distance", response_model=DistanceResponse)
def solve_distance(req: DistanceRequest) -> DistanceResponse:
    params = _domain(CodeParams, alpha=req.alpha, beta=req.beta, p_phys=req.p_phys)
    solution = _domain(
        min_code_distance, req.target, params, mode=req.mode, odd_only=req.odd_only
    )
    prev = (
        logical_pair_failure(solution.distance_D - 1, params)
        if solution.distance_D > 1
        else None
    )
    return DistanceResponse(
        distance_D=solution.distance_D,
        failure_at_D=solution.failure_at_D,
        failure_at_prev=prev,
        mode=solution.mode,
    )


@app.post("/purify", response_model=PurificationPlanOut)
def plan_purification(req: PurifyRequest) -> PurificationPlanOut:
    spec = _domain(
        PurificationSpec,
        f_initial=req.f_initial,
        f_target=req.f_target,
        confidence_S=req.confidence_S,
    )
    plan = _domain(purify.purification_factor, spec)
    return PurificationPlanOut(**plan.to_dict())


@app.post("/estimate", response_model=RateReportOut)
def run_estimate(req: EstimateRequest) -> RateReportOut:
    scenario = req.resolve()
    report = _domain(estimator.estimate, scenario, distance_mode=req.mode)
    comparison = estimator.compare_gate_times(report)
    return RateReportOut(
        **report.to_dict(), gate_time_comparison=GateTimeComparisonOut(**comparison.to_dict())
    )


@app.post("/sweep", response_model=SweepResponse)
def run_sweep(req: SweepRequest) -> SweepResponse:
    scenario = req.resolve()
    curve = _domain(
        estimator.sweep_power, scenario, req.powers, distance_mode=req.mode
    )
    return SweepResponse(
        marker_power_watts=estimator.marker_power(),
        curves=[SweepCurveOut(**curve.to_dict())],
    )


@app.post("/validate", response_model=ValidationReportOut)
def run_validation(req: ValidateRequest) -> ValidationReportOut:
    scenario = req.resolve()
    report = _domain(
        mc.validate, scenario, trials=req.trials, seed=req.seed, distance_mode=req.mode
    )
    return ValidationReportOut(**report.to_dict())
