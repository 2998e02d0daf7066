from typing import List, Optional

from sustain5g.analysis.probability import vehicle_count_density
from sustain5g.models.network_models import (
    DensityProfile,
    NetworkConfig,
    OptimizationConstraints,
    Violation,
)

CLAUSE_DENSITY = "0 < D ≤ N"
CLAUSE_UPDATES = "U_N ≥ U′_N"
CLAUSE_PAIRS_POSITIVE = "0 < n⁻¹(n⁻¹−1)/2"
CLAUSE_PAIRS_BOUNDED = "n⁻¹(n⁻¹−1)/2 ≤ E(E−1)/2"
CLAUSE_HOPS_NOT_ENTITIES = "n⁻¹ ≠ E"
CLAUSE_TIMING = "t_u < t′ ≤ t"


def vehicles_in_periphery(cfg: NetworkConfig, profile: Optional[DensityProfile] = None) -> float:
    """D: integrated profile if given, else the configured override, else β·t1 clipped to [0, N]."""
    if profile is not None:
        return vehicle_count_density(profile)
    if cfg.density_override is not None:
        return cfg.density_override
    return min(max(cfg.arrival_rate * cfg.t1, 0.0), float(cfg.n_devices))


def check_feasibility(
    cfg: NetworkConfig,
    opt: Optional[OptimizationConstraints] = None,
    observed_updates: Optional[int] = None,
    profile: Optional[DensityProfile] = None,
) -> List[Violation]:
    """Every failed constraint clause of the key-update problem, empty when feasible.

    Clauses that need ``opt`` or ``observed_updates`` are skipped when those
    are not supplied.
    """
    violations: List[Violation] = []

    density = vehicles_in_periphery(cfg, profile)
    if not 0 < density <= cfg.n_devices:
        violations.append(Violation(clause=CLAUSE_DENSITY, detail=f"D={density:g}, N={cfg.n_devices}"))

    if opt is not None and observed_updates is not None and observed_updates < opt.min_updates:
        violations.append(
            Violation(clause=CLAUSE_UPDATES, detail=f"U_N={observed_updates} < U′_N={opt.min_updates}")
        )

    hops = cfg.reachable_hops_inv
    hop_pairs = hops * (hops - 1) / 2
    entity_pairs = cfg.n_entities * (cfg.n_entities - 1) / 2
    if not hop_pairs > 0:
        violations.append(Violation(clause=CLAUSE_PAIRS_POSITIVE, detail=f"n⁻¹={hops}"))
    if not hop_pairs <= entity_pairs:
        violations.append(
            Violation(clause=CLAUSE_PAIRS_BOUNDED, detail=f"{hop_pairs:g} > {entity_pairs:g}")
        )
    if hops == cfg.n_entities:
        violations.append(Violation(clause=CLAUSE_HOPS_NOT_ENTITIES, detail=f"n⁻¹ = E = {hops}"))

    if opt is not None:
        timing_ok = opt.safe_time <= opt.attack_time
        if opt.utilization_time is not None:
            timing_ok = timing_ok and opt.utilization_time < opt.safe_time
        if not timing_ok:
            violations.append(
                Violation(
                    clause=CLAUSE_TIMING,
                    detail=f"t_u={opt.utilization_time}, t′={opt.safe_time}, t={opt.attack_time}",
                )
            )

    return violations
