"""satclock: clock-speed estimator for satellite-fed distributed
fault-tolerant quantum computation.

The core question: at what rate can two distant surface-code patches be
stitched into logical Bell pairs when the raw entanglement arrives as
photon pairs beamed down from a satellite?  The package chains the surface
code budget, purification planning, downlink statistics, and the satellite
power budget into a single estimate, and validates each analytic step with
exact oracles and seeded Monte Carlo.
"""

from .bellsim import BellDiagonal, DensityMatrix, fidelity, make_input_state, parity_check_block
from .code import (
    DistanceSolution,
    ideal_pair_rate,
    logical_error_rate,
    logical_pair_failure,
    logical_pair_rate_hw,
    min_code_distance,
    operation_success,
)
from .errors import (
    DomainError,
    ScenarioFormatError,
    SimulationBudgetError,
    UnreachableFidelityError,
    UnsatisfiableDistanceError,
)
from .estimator import (
    GateTimeComparison,
    RateReport,
    SweepCurve,
    classify_rate,
    compare_gate_times,
    default_power_grid,
    estimate,
    sweep_power,
)
from .link import db_to_eta, delivery_confidence, eta_to_db, markov_rate, min_attempts
from .mc import (
    PurificationStats,
    TransmissionStats,
    ValidationReport,
    simulate_purification,
    simulate_transmission,
    validate,
)
from .model import (
    CodeParams,
    LinkSpec,
    PurificationPlan,
    PurificationSpec,
    SatelliteSpec,
    Scenario,
    builtin_scenario,
    builtin_scenarios,
    gate_time,
    reference_tables,
    satellite_power,
)
from .power import generation_capacity, power_to_logical_rate, required_power
from .purify import (
    block_success,
    fidelity_ladder,
    ladder_success,
    multiplex_count,
    purification_factor,
    purified_fidelity,
)

__version__ = "0.1.0"

__all__ = [
    "BellDiagonal",
    "CodeParams",
    "DensityMatrix",
    "DistanceSolution",
    "DomainError",
    "GateTimeComparison",
    "LinkSpec",
    "PurificationPlan",
    "PurificationSpec",
    "PurificationStats",
    "RateReport",
    "SatelliteSpec",
    "Scenario",
    "ScenarioFormatError",
    "SimulationBudgetError",
    "SweepCurve",
    "TransmissionStats",
    "UnreachableFidelityError",
    "UnsatisfiableDistanceError",
    "ValidationReport",
    "block_success",
    "builtin_scenario",
    "builtin_scenarios",
    "classify_rate",
    "compare_gate_times",
    "db_to_eta",
    "default_power_grid",
    "delivery_confidence",
    "estimate",
    "eta_to_db",
    "fidelity",
    "fidelity_ladder",
    "gate_time",
    "generation_capacity",
    "ideal_pair_rate",
    "ladder_success",
    "logical_error_rate",
    "logical_pair_failure",
    "logical_pair_rate_hw",
    "make_input_state",
    "markov_rate",
    "min_attempts",
    "min_code_distance",
    "multiplex_count",
    "operation_success",
    "parity_check_block",
    "power_to_logical_rate",
    "purification_factor",
    "purified_fidelity",
    "reference_tables",
    "required_power",
    "satellite_power",
    "simulate_purification",
    "simulate_transmission",
    "sweep_power",
    "validate",
]
