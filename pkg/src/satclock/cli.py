"""Command-line frontend.

Five subcommands: ``distance``, ``purify``, ``estimate``, ``sweep``, and
``validate``.  Scenarios come from the builtin catalog (``state``,
``continental``, ``transcontinental``, and ``all`` where ranges make
sense) or from a JSON file.  Output is deterministic byte-for-byte for
fixed inputs (and fixed ``--seed`` where randomness is involved).

Exit codes: 0 success, 1 usage error, 2 domain error (invalid or
unsatisfiable parameters), 3 I/O or scenario-file parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path
from typing import Sequence

from . import estimator, mc, purify
from .code import min_code_distance, logical_pair_failure
from .errors import DomainError, ScenarioFormatError
from .model import (
    CLASS_LOSSES_DB,
    CodeParams,
    PurificationSpec,
    Scenario,
    builtin_scenario,
    builtin_scenarios,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_IO = 3

OUT_DIR_ENV = "SATCLOCK_OUT_DIR"

_MODE_NAMES = {"paper": "paper_rounding", "paper_rounding": "paper_rounding", "strict": "strict"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="satclock",
        description="Logical Bell-pair clock-speed estimator for satellite-fed "
        "distributed quantum computation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dist = sub.add_parser("distance", help="solve the minimum code distance")
    p_dist.add_argument("--target", type=float, required=True,
                        help="tolerable logical-pair failure rate")
    p_dist.add_argument("--alpha", type=float, default=0.3)
    p_dist.add_argument("--beta", type=float, default=70.0)
    p_dist.add_argument("--p", type=float, default=1e-3, help="physical error rate")
    p_dist.add_argument("--mode", choices=("paper", "strict"), default="paper")
    p_dist.add_argument("--odd-only", action="store_true",
                        help="restrict to odd distances")
    p_dist.add_argument("--format", choices=("text", "json"), default="text")

    p_pur = sub.add_parser("purify", help="plan the purification ladder")
    p_pur.add_argument("--f0", type=float, required=True, help="input pair fidelity")
    p_pur.add_argument("--ftarget", type=float, required=True, help="target fidelity")
    p_pur.add_argument("--confidence", type=float, default=0.999,
                       help="required at-least-one-success confidence")
    p_pur.add_argument("--format", choices=("text", "json"), default="text")

    p_est = sub.add_parser("estimate", help="full rate report for a scenario")
    p_est.add_argument("--scenario", required=True,
                       help="builtin name (state|continental|transcontinental) or JSON file")
    p_est.add_argument("--mode", choices=("paper", "strict"), default="paper")
    p_est.add_argument("--format", choices=("text", "json"), default="text")
    p_est.add_argument("--out", help="write output to this file instead of stdout")

    p_swp = sub.add_parser("sweep", help="clock speed vs satellite power curves")
    p_swp.add_argument("--scenario", required=True,
                       help="builtin name, 'all', or JSON file")
    p_swp.add_argument("--powers",
                       help="watt grid as MIN:MAX:COUNT (log-spaced) or a comma list; "
                       "default 1 W to 100 kW at 200 points/decade")
    p_swp.add_argument("--mode", choices=("paper", "strict"), default="paper")
    p_swp.add_argument("--format", choices=("csv", "json"), default="csv")
    p_swp.add_argument("--out", help="write output to this file instead of stdout")

    p_val = sub.add_parser("validate", help="Monte Carlo validation report")
    p_val.add_argument("--scenario", required=True,
                       help="builtin name or JSON file")
    p_val.add_argument("--trials", type=int, default=100_000)
    p_val.add_argument("--seed", type=int, default=42)
    p_val.add_argument("--mode", choices=("paper", "strict"), default="paper")
    p_val.add_argument("--format", choices=("text", "json"), default="json")
    p_val.add_argument("--out", help="write output to this file instead of stdout")

    return parser


def _load_scenario(source: str) -> Scenario:
    if source.strip().lower() in CLASS_LOSSES_DB:
        return builtin_scenario(source)
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise _IOFailure(f"cannot read scenario file {source!r}: {exc}") from exc
    try:
        return Scenario.from_json(text)
    except json.JSONDecodeError as exc:
        raise _IOFailure(
            f"scenario file {source!r} is not valid JSON "
            f"(line {exc.lineno}, column {exc.colno}): {exc.msg}"
        ) from exc
    except ScenarioFormatError as exc:
        raise _IOFailure(f"scenario file {source!r}: {exc}") from exc


class _IOFailure(Exception):
    pass


def _resolve_out(out: str | None) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _emit(text: str, out: str | None) -> None:
    path = _resolve_out(out)
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc}") from exc


def _json_dumps(data: object) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _cmd_distance(args: argparse.Namespace) -> None:
    params = CodeParams(alpha=args.alpha, beta=args.beta, p_phys=args.p)
    mode = _MODE_NAMES[args.mode]
    solution = min_code_distance(args.target, params, mode=mode, odd_only=args.odd_only)
    payload = solution.to_dict()
    if solution.distance_D > 1:
        payload["failure_at_prev"] = logical_pair_failure(
            solution.distance_D - 1, params
        )
    if args.format == "json":
        print(_json_dumps(payload))
        return
    print(f"distance_D     = {solution.distance_D}")
    print(f"failure_at_D   = {solution.failure_at_D:.6e}")
    if "failure_at_prev" in payload:
        print(f"failure_at_D-1 = {payload['failure_at_prev']:.6e}")
    print(f"mode           = {solution.mode}")


def _cmd_purify(args: argparse.Namespace) -> None:
    spec = PurificationSpec(
        f_initial=args.f0, f_target=args.ftarget, confidence_S=args.confidence
    )
    plan = purify.purification_factor(spec)
    if args.format == "json":
        print(_json_dumps(plan.to_dict()))
        return
    ladder = ", ".join(f"{f:.6f}" for f in plan.fidelity_ladder)
    print(f"rounds_N         = {plan.rounds_N}")
    print(f"fidelity_ladder  = [{ladder}]")
    print(f"ladder_success_P = {plan.ladder_success_P:.6g}")
    print(f"multiplex_K      = {plan.multiplex_K}")
    print(f"factor_chi       = {plan.factor_chi}")


def _format_report_text(report: estimator.RateReport) -> str:
    comparison = estimator.compare_gate_times(report)
    lines = [
        f"scenario                 = {report.label}",
        f"distance_D               = {report.distance_D} ({report.distance_mode})",
        f"failure_at_D             = {report.failure_at_D:.6e}",
        f"factor_chi               = {report.factor_chi} "
        f"(rounds_N={report.rounds_N}, multiplex_K={report.multiplex_K})",
        f"eta                      = {report.eta:.6e}",
        f"rate_logical_RLP         = {report.rate_logical_RLP:.6e} /s (hardware-limited)",
        f"rate_ideal_RIP           = {report.rate_ideal_RIP:.6e} /s",
        f"rate_with_purification   = {report.rate_with_purification_RIPP:.6e} /s",
        f"rate_generation_RPG      = {report.rate_generation_RPG:.6e} /s",
        f"required_power           = {report.required_power:.6e} W",
        f"achievable_RLP_at_power  = {report.achievable_RLP_at_power:.6e} /s "
        "(satellite-limited)",
        f"effective_clock          = {report.effective_clock:.6e} /s",
        f"classification           = {comparison.classification}",
    ]
    if report.hardware_limited:
        lines.append(
            "warning: gate time, not satellite power, is the binding constraint"
        )
    return "\n".join(lines)


def _scenarios_from_arg(source: str) -> list:
    if source.strip().lower() == "all":
        return builtin_scenarios()
    return [_load_scenario(source)]


def _cmd_estimate(args: argparse.Namespace) -> None:
    scenarios = _scenarios_from_arg(args.scenario)
    reports = [
        estimator.estimate(s, distance_mode=_MODE_NAMES[args.mode]) for s in scenarios
    ]
    if args.format == "json":
        payloads = []
        for report in reports:
            payload = report.to_dict()
            payload["gate_time_comparison"] = estimator.compare_gate_times(report).to_dict()
            payloads.append(payload)
        _emit(_json_dumps(payloads[0] if len(payloads) == 1 else payloads), args.out)
    else:
        _emit("\n\n".join(_format_report_text(r) for r in reports), args.out)


def _parse_power_grid(spec: str) -> list[float]:
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise DomainError("power grid spec must be MIN:MAX:COUNT")
        try:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise DomainError(f"bad power grid spec {spec!r}: {exc}") from exc
        if not (lo > 0 and hi > lo and count >= 2):
            raise DomainError("power grid requires 0 < MIN < MAX and COUNT >= 2")
        step = (math.log10(hi) - math.log10(lo)) / (count - 1)
        return [10.0 ** (math.log10(lo) + i * step) for i in range(count)]
    try:
        grid = [float(x) for x in spec.split(",") if x.strip()]
    except ValueError as exc:
        raise DomainError(f"bad power list {spec!r}: {exc}") from exc
    if not grid:
        raise DomainError("power list is empty")
    return grid


def _cmd_sweep(args: argparse.Namespace) -> None:
    scenarios = _scenarios_from_arg(args.scenario)
    powers = _parse_power_grid(args.powers) if args.powers else None
    mode = _MODE_NAMES[args.mode]
    curves = [estimator.sweep_power(s, powers, distance_mode=mode) for s in scenarios]
    marker = estimator.marker_power()

    if args.format == "json":
        payload = {
            "marker_power_watts": marker,
            "curves": [c.to_dict() for c in curves],
        }
        _emit(_json_dumps(payload), args.out)
        return

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["scenario", "P_s_watts", "R_LP_per_s", "at_10kW_marker"])
    for curve in curves:
        for p_s, r_lp in curve.points:
            writer.writerow([curve.label, repr(p_s), repr(r_lp), int(p_s == marker)])
    _emit(buf.getvalue(), args.out)


def _format_validation_text(report) -> str:
    lines = [
        f"scenario = {report.label}  trials = {report.trials}  seed = {report.seed}"
    ]
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        lines.append(
            f"[{status}] {check.name}: analytic={check.analytic:.6e} "
            f"empirical={check.empirical:.6e} delta={check.delta:.3e} "
            f"tol={check.tolerance:.3e}"
        )
    lines.append("all_passed = " + ("true" if report.all_passed else "false"))
    return "\n".join(lines)


def _cmd_validate(args: argparse.Namespace) -> None:
    scenarios = _scenarios_from_arg(args.scenario)
    reports = [
        mc.validate(
            s, trials=args.trials, seed=args.seed,
            distance_mode=_MODE_NAMES[args.mode],
        )
        for s in scenarios
    ]
    if args.format == "json":
        payloads = [r.to_dict() for r in reports]
        _emit(_json_dumps(payloads[0] if len(payloads) == 1 else payloads), args.out)
        return
    _emit("\n\n".join(_format_validation_text(r) for r in reports), args.out)


_COMMANDS = {
    "distance": _cmd_distance,
    "purify": _cmd_purify,
    "estimate": _cmd_estimate,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        _COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
