import math
from typing import List, Mapping, Optional

from sustain5g.analysis.overhead import message_overhead
from sustain5g.analysis.probability import (
    connectivity_loss_probability,
    key_update_pmf,
    vehicle_pmf,
)
from sustain5g.errors import NumericalError
from sustain5g.models.network_models import NetworkConfig
from sustain5g.models.sim_models import (
    ComparisonReport,
    ComparisonRow,
    ComparisonStatus,
    ProbabilityEstimate,
    SimStats,
)

ATTACHMENT_SIGMA = 4.0
PMF_SIGMA = 3.0
NOTE_MODEL_EXCLUDES_Q = "model excludes Q"


def _estimate_row(
    name: str, estimate: ProbabilityEstimate, analytic: float, sigma: float
) -> ComparisonRow:
    z = estimate.z_score(analytic)
    return ComparisonRow(
        name=name,
        empirical=estimate.estimate,
        analytic=analytic,
        stderr=estimate.stderr,
        z_score=z,
        sigma_rule=sigma,
        status=ComparisonStatus.PASS if z <= sigma else ComparisonStatus.FAIL,
    )


def _passes_sweep_row(cfg: NetworkConfig, sweep: Mapping[int, SimStats]) -> ComparisonRow:
    passes = sorted(sweep)
    messages = [sweep[q].session_messages for q in passes]
    try:
        analytic = [message_overhead(cfg.model_copy(update={"passes": q})) for q in passes]
        constant = all(math.isclose(value, analytic[0], rel_tol=1e-12) for value in analytic)
        analytic_note = "analytic M_O constant in Q" if constant else "analytic M_O varies with Q"
        analytic_ratio = analytic[-1] / analytic[0] if analytic[0] else math.nan
    except NumericalError as exc:
        analytic_note = f"analytic M_O unavailable: {exc}"
        analytic_ratio = math.nan
    rising = all(b > a for a, b in zip(messages, messages[1:]))
    trend = "rise" if rising else "do not rise"
    return ComparisonRow(
        name="message_growth_vs_passes",
        empirical=messages[-1] / messages[0] if messages[0] else math.nan,
        analytic=analytic_ratio,
        status=ComparisonStatus.INFO,
        note=(
            f"{NOTE_MODEL_EXCLUDES_Q}: {analytic_note}; empirical session messages {trend} "
            f"over Q={passes[0]}..{passes[-1]} ({messages})"
        ),
    )


def compare_to_analytic(
    stats: SimStats,
    cfg: NetworkConfig,
    passes_sweep: Optional[Mapping[int, SimStats]] = None,
) -> ComparisonReport:
    """Empirical against analytic, one row per quantity with the sigma rule applied.

    Message totals are model-level quantities and are reported as
    informational rows, never as failures.
    """
    rows: List[ComparisonRow] = []
    probabilities = stats.empirical_probabilities
    window = stats.unit_window

    if "connectivity_loss" in probabilities:
        rows.append(_estimate_row(
            "connectivity_loss",
            probabilities["connectivity_loss"],
            connectivity_loss_probability(cfg),
            ATTACHMENT_SIGMA,
        ))
    if "vehicle_miss" in probabilities:
        rows.append(_estimate_row(
            "vehicle_miss", probabilities["vehicle_miss"], 1.0 - cfg.reach_fraction, ATTACHMENT_SIGMA
        ))
    if "exactly_two_updates" in probabilities:
        rows.append(_estimate_row(
            "exactly_two_updates",
            probabilities["exactly_two_updates"],
            key_update_pmf(cfg.update_rate * window, 1.0),
            PMF_SIGMA,
        ))
    if "exactly_one_arrival" in probabilities:
        rows.append(_estimate_row(
            "exactly_one_arrival",
            probabilities["exactly_one_arrival"],
            vehicle_pmf(cfg.arrival_rate * window, 1.0),
            PMF_SIGMA,
        ))

    expected_arrivals = cfg.arrival_rate * stats.horizon
    arrival_z = abs(stats.arrival_count - expected_arrivals) / math.sqrt(expected_arrivals)
    rows.append(ComparisonRow(
        name="arrivals",
        empirical=float(stats.arrival_count),
        analytic=expected_arrivals,
        stderr=math.sqrt(expected_arrivals),
        z_score=arrival_z,
        sigma_rule=ATTACHMENT_SIGMA,
        status=ComparisonStatus.PASS if arrival_z <= ATTACHMENT_SIGMA else ComparisonStatus.FAIL,
    ))

    handshakes = stats.auth_count + stats.refresh_count
    if handshakes:
        per_handshake = stats.session_messages / handshakes
        rows.append(ComparisonRow(
            name="messages_per_handshake",
            empirical=per_handshake,
            analytic=float(cfg.passes),
            status=ComparisonStatus.PASS if per_handshake == cfg.passes else ComparisonStatus.FAIL,
            note="Q messages per authentication or refresh",
        ))

    try:
        analytic_overhead = message_overhead(cfg)
        overhead_note = "model-level M_O against simulated message total"
    except NumericalError as exc:
        analytic_overhead = math.nan
        overhead_note = f"analytic M_O unavailable: {exc}"
    rows.append(ComparisonRow(
        name="message_overhead",
        empirical=stats.message_total,
        analytic=analytic_overhead,
        status=ComparisonStatus.INFO,
        note=overhead_note,
    ))

    if passes_sweep and len(passes_sweep) > 1:
        rows.append(_passes_sweep_row(cfg, passes_sweep))

    return ComparisonReport(rows=rows)
