import logging
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from sustain5g.keychain import RefreshPolicy, build_hierarchy
from sustain5g.models.key_models import KEY_SIZE
from sustain5g.models.network_models import NetworkConfig
from sustain5g.models.run_models import PolicySection
from sustain5g.models.sim_models import ComparisonReport, SimConfig, SimStats
from sustain5g.sim import compare_to_analytic, run_sim
from sustain5g.sim.sampling import STREAM_KEYS, lane_generator

from .output import csv_text, format_number

logger = logging.getLogger(__name__)

TRACE_COLUMNS = [
    "start",
    "end",
    "arrivals",
    "lost",
    "authentications",
    "refreshes",
    "key_updates",
    "messages",
]


class SimulationResult(BaseModel):
    stats: SimStats
    comparison: ComparisonReport
    passes_sweep: Dict[int, SimStats] = Field(default_factory=dict)
    key_dump: str = ""


def _single_run(cfg: NetworkConfig, sim: SimConfig, policy: PolicySection):
    # root material comes from its own stream so the key tree is reproducible per seed
    hierarchy = build_hierarchy(lane_generator(sim.seed, STREAM_KEYS).bytes(KEY_SIZE))
    refresh_policy = RefreshPolicy(weights=policy.weights, threshold=policy.threshold)
    stats = run_sim(cfg, sim, hierarchy, refresh_policy, policy.fs_window)
    return stats, hierarchy


def simulate(
    cfg: NetworkConfig,
    sim: SimConfig,
    policy: Optional[PolicySection] = None,
    passes_sweep: Optional[List[int]] = None,
) -> SimulationResult:
    """One seeded run, plus one run per Q in ``passes_sweep`` on the same random streams."""
    policy = policy or PolicySection()
    stats, hierarchy = _single_run(cfg, sim, policy)

    sweep: Dict[int, SimStats] = {}
    for passes in sorted(set(passes_sweep or [])):
        if passes == cfg.passes:
            sweep[passes] = stats
            continue
        logger.info("re-running simulation with Q=%d", passes)
        sweep[passes], _ = _single_run(cfg.model_copy(update={"passes": passes}), sim, policy)

    return SimulationResult(
        stats=stats,
        comparison=compare_to_analytic(stats, cfg, sweep or None),
        passes_sweep=sweep,
        key_dump=hierarchy.dump(),
    )


def traces_csv(stats: SimStats) -> str:
    rows = (
        [
            format_number(bucket.start),
            format_number(bucket.end),
            str(bucket.arrivals),
            str(bucket.lost),
            str(bucket.authentications),
            str(bucket.refreshes),
            str(bucket.key_updates),
            format_number(bucket.messages),
        ]
        for bucket in stats.traces
    )
    return csv_text(TRACE_COLUMNS, rows)


def print_simulation(result: SimulationResult) -> None:
    stats = result.stats
    print("🚗 Simulation")
    print("=" * 50)
    print(f"🎲 Seed: {stats.seed}")
    print(f"📥 Arrivals: {stats.arrival_count} ({stats.lost_count} without connectivity)")
    print(f"🔐 Authentications: {stats.auth_count}, refreshes: {stats.refresh_count}")
    print(f"🔑 Key updates: {stats.key_update_count}, policy evaluations: {stats.policy_evaluations}")
    print(f"✉️ Messages: {stats.message_total:g}")
    print("\n📊 Empirical vs analytic:")
    for row in result.comparison.rows:
        marker = {"pass": "✅", "fail": "❌", "info": "ℹ️"}[row.status.value]
        z = f" z={row.z_score:.2f}/{row.sigma_rule:g}σ" if row.z_score is not None else ""
        note = f" ({row.note})" if row.note else ""
        print(f"   {marker} {row.name}: {row.empirical:.6g} vs {row.analytic:.6g}{z}{note}")
