"""Oracle self-validation: Ei, quadrature, closed form, overhead and fail-safe suites."""

import logging
import math
from typing import Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel

from sustain5g.analysis import (
    criterion_value,
    failsafe_point,
    instantaneous_sustainability,
    overhead_prefactor,
    signaling_overhead,
    sustainability_asymptotic,
    sustainability_closed_form,
)
from sustain5g.analysis.sustainability import evaluate_sustainability
from sustain5g.models.network_models import (
    REFERENCE_BETAS,
    FailSafeCriterion,
    NetworkConfig,
    OverheadInterpretation,
    RealInterval,
)
from sustain5g.numerics import (
    SERIES_ASYMPTOTIC_CROSSOVER,
    ei_asymptotic,
    ei_reference,
    ei_series,
    exp_integral_ei,
    integrate_adaptive,
)

logger = logging.getLogger(__name__)

DEFAULT_EI_TOLERANCE = 1e-9
EI_SAMPLES = 1000
EI_SPOT_VALUES = {1.0: 1.8951178163559368, -1.0: -0.21938393439552029}
CLOSED_FORM_TOLERANCE = 1e-6
Q_LAW_TOLERANCE = 1e-12
CROSSOVER_TOLERANCE = 1e-10
OVERHEAD_TOLERANCE = 1e-8
FAILSAFE_TOLERANCE = 1e-3
BRUTE_FORCE_STEP = 1e-4
REFERENCE_PASSES = (1, 2, 3, 4, 5)
FEASIBLE_ENTITIES = (6, 7, 8, 9, 10)


class CheckResult(BaseModel):
    suite: str
    name: str
    measured: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.measured) and self.measured <= self.tolerance


def _relative(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def _reference_grid(betas=REFERENCE_BETAS) -> List[NetworkConfig]:
    return [
        NetworkConfig.reference(beta=beta, passes=passes, n_entities=entities)
        for beta in betas
        for passes in REFERENCE_PASSES
        for entities in FEASIBLE_ENTITIES
    ]


def ei_suite(tolerance: float = DEFAULT_EI_TOLERANCE) -> List[CheckResult]:
    grid = np.logspace(-3, math.log10(30.0), EI_SAMPLES)
    checks = []
    for sign, name in ((1.0, "ei positive [1e-3, 30]"), (-1.0, "ei negative [-30, -1e-3]")):
        worst = max(_relative(exp_integral_ei(sign * x), ei_reference(sign * x)) for x in grid)
        checks.append(CheckResult(suite="ei", name=name, measured=worst, tolerance=tolerance))
    for x, expected in EI_SPOT_VALUES.items():
        checks.append(CheckResult(
            suite="ei",
            name=f"ei spot Ei({x:g})",
            measured=_relative(exp_integral_ei(x), expected),
            tolerance=tolerance,
        ))
    crossover = SERIES_ASYMPTOTIC_CROSSOVER
    checks.append(CheckResult(
        suite="ei",
        name=f"series/asymptotic crossover at {crossover:g}",
        measured=_relative(ei_asymptotic(crossover)[0], ei_series(crossover)),
        tolerance=CROSSOVER_TOLERANCE,
    ))
    return checks


def quadrature_suite() -> List[CheckResult]:
    window = RealInterval(lo=5.0, hi=105.0)
    ei_integral = integrate_adaptive(lambda t: math.exp(1.0 / t) / t, window)
    sine = integrate_adaptive(math.sin, RealInterval(lo=0.0, hi=math.pi))
    return [
        CheckResult(
            suite="quadrature",
            name="∫ e^(1/t)/t on [5, 105] vs Ei(1/5) − Ei(1/105)",
            measured=_relative(ei_integral.value, exp_integral_ei(0.2) - exp_integral_ei(1 / 105)),
            tolerance=1e-9,
        ),
        CheckResult(
            suite="quadrature",
            name="∫ sin on [0, π] = 2",
            measured=_relative(sine.value, 2.0),
            tolerance=1e-12,
        ),
    ]


def closed_form_suite() -> List[CheckResult]:
    configs = _reference_grid()
    worst_gap = max(evaluate_sustainability(cfg).relative_gap for cfg in configs)

    worst_law = 0.0
    for beta in REFERENCE_BETAS:
        for entities in FEASIBLE_ENTITIES:
            scaled = [
                sustainability_closed_form(NetworkConfig.reference(beta, q, entities)) * q
                for q in REFERENCE_PASSES
            ]
            worst_law = max(worst_law, max(_relative(v, scaled[0]) for v in scaled))

    worst_limit = max(abs(sustainability_asymptotic(cfg) - 0.5) for cfg in configs)
    return [
        CheckResult(suite="closed-form", name=f"closed form vs quadrature ({len(configs)} configs)",
                    measured=worst_gap, tolerance=CLOSED_FORM_TOLERANCE),
        CheckResult(suite="closed-form", name="S_N·Q constant across Q",
                    measured=worst_law, tolerance=Q_LAW_TOLERANCE),
        CheckResult(suite="closed-form", name="asymptotic limit α/β = 0.5",
                    measured=worst_limit, tolerance=0.0),
    ]


def overhead_suite() -> List[CheckResult]:
    # β = 10 puts α′ = α/t1 at 1, outside the overhead domain
    configs = _reference_grid(betas=[b for b in REFERENCE_BETAS if b < 10])
    worst_integral = 0.0
    worst_printed = 0.0
    for cfg in configs:
        prefactor = overhead_prefactor(cfg)
        base = 1.0 - cfg.alpha_prime
        oracle = integrate_adaptive(lambda t: prefactor * base**t, cfg.window).value
        worst_integral = max(
            worst_integral, _relative(signaling_overhead(cfg, OverheadInterpretation.INTEGRAL), oracle)
        )
        printed = signaling_overhead(cfg, OverheadInterpretation.PRINTED)
        worst_printed = max(worst_printed, abs(printed - prefactor * (cfg.t2 - cfg.t1)))
    return [
        CheckResult(suite="overhead", name="integral form vs quadrature",
                    measured=worst_integral, tolerance=OVERHEAD_TOLERANCE),
        CheckResult(suite="overhead", name="printed form = prefactor·(t2 − t1)",
                    measured=worst_printed, tolerance=0.0),
    ]


def brute_force_failsafe(cfg: NetworkConfig, criterion: FailSafeCriterion, threshold: float,
                         step: float = BRUTE_FORCE_STEP) -> Optional[float]:
    """Last grid point before the criterion first fails, on a uniform grid of ``step``."""
    grid = np.arange(cfg.t1, cfg.t2 + step / 2, step)
    values = np.asarray(criterion_value(cfg, criterion, grid))
    holds = values >= threshold if criterion is FailSafeCriterion.SUSTAINABILITY_RATE else values <= threshold
    if not holds[0]:
        return None
    failing = np.flatnonzero(~holds)
    return float(grid[-1]) if failing.size == 0 else float(grid[failing[0] - 1])


def failsafe_suite() -> List[CheckResult]:
    checks = []
    base = NetworkConfig.reference(beta=2.0, passes=1, n_entities=10)
    s_at_50 = instantaneous_sustainability(base, 50.0)
    cfg = base.model_copy(update={"s_n_threshold": s_at_50})
    report = failsafe_point(cfg, FailSafeCriterion.SUSTAINABILITY_RATE)
    checks.append(CheckResult(suite="failsafe", name="F_S at s(50) ≈ 50",
                              measured=abs(report.fail_safe_time - 50.0), tolerance=FAILSAFE_TOLERANCE))

    overhead_cfg = base.model_copy(
        update={"m_o_threshold": criterion_value(base, FailSafeCriterion.MESSAGE_OVERHEAD, 50.0)}
    )
    report = failsafe_point(overhead_cfg, FailSafeCriterion.MESSAGE_OVERHEAD)
    expected = brute_force_failsafe(overhead_cfg, FailSafeCriterion.MESSAGE_OVERHEAD,
                                    overhead_cfg.m_o_threshold)
    checks.append(CheckResult(suite="failsafe", name="overhead F_S vs brute-force scan",
                              measured=abs(report.fail_safe_time - expected), tolerance=FAILSAFE_TOLERANCE))
    return checks


SUITES: Dict[str, Callable[..., List[CheckResult]]] = {
    "ei": ei_suite,
    "quadrature": quadrature_suite,
    "closed-form": closed_form_suite,
    "overhead": overhead_suite,
    "failsafe": failsafe_suite,
}


def run_validation(only: Optional[str] = None,
                   ei_tolerance: float = DEFAULT_EI_TOLERANCE) -> List[CheckResult]:
    names = [only] if only else list(SUITES)
    results = []
    for name in names:
        logger.info("running %s suite", name)
        suite = SUITES[name]
        results.extend(suite(ei_tolerance) if name == "ei" else suite())
    return results


def print_validation(results: List[CheckResult]) -> None:
    print("🔬 Oracle validation")
    print("=" * 50)
    for result in results:
        marker = "✅" if result.passed else "❌"
        print(f"{marker} [{result.suite}] {result.name}: error {result.measured:.3e} "
              f"(tolerance {result.tolerance:.1e})")
    failed = sum(not r.passed for r in results)
    print(f"\n{len(results) - failed}/{len(results)} checks passed")
