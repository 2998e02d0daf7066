from typing import Optional

from pydantic import BaseModel

from sustain5g.analysis import failsafe_point, key_utilization_window
from sustain5g.models.network_models import (
    FailSafeCriterion,
    FailSafeReport,
    NetworkConfig,
    OptimizationConstraints,
)

from .output import csv_text, format_number


class FailSafeResult(BaseModel):
    report: FailSafeReport
    utilization_time: Optional[float] = None


def scan_failsafe(
    cfg: NetworkConfig,
    criterion: FailSafeCriterion = FailSafeCriterion.SUSTAINABILITY_RATE,
    constraints: Optional[OptimizationConstraints] = None,
) -> FailSafeResult:
    cfg.require_side_conditions()
    report = failsafe_point(cfg, criterion)
    utilization = None
    if constraints is not None and report.found:
        utilization = key_utilization_window(constraints, report)
    return FailSafeResult(report=report, utilization_time=utilization)


def scan_csv(report: FailSafeReport) -> str:
    return csv_text(
        ["t", report.criterion.value],
        ([format_number(t), format_number(v)] for t, v in report.scan_points),
    )


def print_failsafe(result: FailSafeResult) -> None:
    report = result.report
    print(f"⏱️ Fail-safe point ({report.criterion.value} criterion, threshold {report.threshold_used:g})")
    print("=" * 50)
    if report.found:
        print(f"F_S = {report.fail_safe_time:.6f} s in [{report.window.lo:g}, {report.window.hi:g}]")
    else:
        print("F_S = none")
        print(f"ℹ️ The criterion already fails at t1 = {report.window.lo:g} s; "
              "keys must be updated before operating")
    if result.utilization_time is not None:
        print(f"t_u = {result.utilization_time:.6f} s")
