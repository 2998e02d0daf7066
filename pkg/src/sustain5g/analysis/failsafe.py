import logging
from typing import Callable

import numpy as np
from scipy.optimize import bisect

from sustain5g.analysis.overhead import cumulative_message_overhead
from sustain5g.analysis.sustainability import instantaneous_sustainability
from sustain5g.errors import InfeasibleConfigError, NoSafeWindowError
from sustain5g.models.network_models import (
    FailSafeCriterion,
    FailSafeReport,
    NetworkConfig,
    OptimizationConstraints,
)

logger = logging.getLogger(__name__)

DEFAULT_SCAN_POINTS = 201
BISECTION_XTOL = 1e-4


def criterion_threshold(cfg: NetworkConfig, criterion: FailSafeCriterion) -> float:
    if criterion is FailSafeCriterion.SUSTAINABILITY_RATE:
        if cfg.s_n_threshold is None:
            raise InfeasibleConfigError("s_n_threshold is required for the sustainability criterion")
        return cfg.s_n_threshold
    if cfg.m_o_threshold is None:
        raise InfeasibleConfigError("m_o_threshold is required for the overhead criterion")
    return cfg.m_o_threshold


def criterion_value(cfg: NetworkConfig, criterion: FailSafeCriterion, t):
    """s(t) for the sustainability criterion, cumulative M_O(t1→t) for the overhead one."""
    if criterion is FailSafeCriterion.SUSTAINABILITY_RATE:
        return instantaneous_sustainability(cfg, t)
    return cumulative_message_overhead(cfg, t)


def _margin(cfg: NetworkConfig, criterion: FailSafeCriterion, threshold: float) -> Callable:
    """Nonnegative exactly where the criterion holds."""
    if criterion is FailSafeCriterion.SUSTAINABILITY_RATE:
        return lambda t: criterion_value(cfg, criterion, t) - threshold
    return lambda t: threshold - criterion_value(cfg, criterion, t)


def failsafe_point(
    cfg: NetworkConfig,
    criterion: FailSafeCriterion = FailSafeCriterion.SUSTAINABILITY_RATE,
    scan_points: int = DEFAULT_SCAN_POINTS,
    xtol: float = BISECTION_XTOL,
) -> FailSafeReport:
    """Latest t in [t1, t2] up to which the criterion holds everywhere.

    A uniform scan brackets the first failure, bisection refines it. The
    report carries ``fail_safe_time=None`` when the criterion already fails
    at t1.
    """
    threshold = criterion_threshold(cfg, criterion)
    margin = _margin(cfg, criterion, threshold)

    grid = np.linspace(cfg.t1, cfg.t2, max(scan_points, 2))
    values = np.asarray(criterion_value(cfg, criterion, grid), dtype=float)
    holds = np.asarray(margin(grid), dtype=float) >= 0
    trace = [(float(t), float(v)) for t, v in zip(grid, values)]

    def report(fail_safe_time):
        return FailSafeReport(
            fail_safe_time=fail_safe_time,
            criterion=criterion,
            threshold_used=threshold,
            window=cfg.window,
            scan_points=trace,
        )

    if not holds[0]:
        logger.info("%s criterion fails at t1=%g", criterion.value, cfg.t1)
        return report(None)

    failing = np.flatnonzero(~holds)
    if failing.size == 0:
        return report(cfg.t2)

    upper = failing[0]
    lo, hi = float(grid[upper - 1]), float(grid[upper])
    logger.debug("bisecting %s criterion on [%g, %g]", criterion.value, lo, hi)
    root = bisect(lambda t: float(margin(t)), lo, hi, xtol=xtol)
    # keep the answer on the side where the criterion still holds
    while root > lo and margin(root) < 0:
        root = max(lo, root - xtol)
    return report(float(root))


def key_utilization_window(opt: OptimizationConstraints, fs: FailSafeReport) -> float:
    """t_u = min(F_S, t′ − ε), the recommended time to keep operating current keys."""
    if fs.fail_safe_time is None:
        raise NoSafeWindowError("no safe window: the criterion fails at t1")
    if not opt.safe_time <= opt.attack_time:
        raise InfeasibleConfigError("t_u < t′ ≤ t", f"t′={opt.safe_time} > t={opt.attack_time}")
    utilization = min(fs.fail_safe_time, opt.safe_time - opt.safety_margin)
    if not utilization > 0:
        raise InfeasibleConfigError("t_u > 0", f"t′ − ε = {opt.safe_time - opt.safety_margin}")
    return utilization
