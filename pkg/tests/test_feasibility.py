import pytest

from sustain5g.analysis import check_feasibility, vehicles_in_periphery
from sustain5g.analysis.feasibility import (
    CLAUSE_DENSITY,
    CLAUSE_HOPS_NOT_ENTITIES,
    CLAUSE_PAIRS_BOUNDED,
    CLAUSE_PAIRS_POSITIVE,
    CLAUSE_TIMING,
    CLAUSE_UPDATES,
)
from sustain5g.models import DensityProfile, NetworkConfig, OptimizationConstraints


def clauses(violations):
    return [v.clause for v in violations]


@pytest.fixture
def opt() -> OptimizationConstraints:
    return OptimizationConstraints(attack_time=100.0, safe_time=60.0, utilization_time=40.0, min_updates=3)


def test_reference_configuration_is_feasible(a1_config, opt):
    assert check_feasibility(a1_config, opt, observed_updates=3) == []


def test_pair_constraint_holds_for_ten_entities(a1_config):
    # 5·4/2 = 10 ≤ 10·9/2 = 45
    assert CLAUSE_PAIRS_BOUNDED not in clauses(check_feasibility(a1_config))


def test_density_clause(a1_config):
    cfg = a1_config.model_copy(update={"density_override": 0.0})
    assert clauses(check_feasibility(cfg)) == [CLAUSE_DENSITY]
    crowded = a1_config.model_copy(update={"density_override": 11.0})
    assert clauses(check_feasibility(crowded)) == [CLAUSE_DENSITY]


def test_updates_clause(a1_config, opt):
    assert clauses(check_feasibility(a1_config, opt, observed_updates=2)) == [CLAUSE_UPDATES]


def test_updates_clause_skipped_without_observation(a1_config, opt):
    assert check_feasibility(a1_config, opt) == []


def test_pairs_positive_clause():
    cfg = NetworkConfig.reference(reachable_hops_inv=1)
    assert clauses(check_feasibility(cfg)) == [CLAUSE_PAIRS_POSITIVE]


def test_pairs_bounded_clause():
    cfg = NetworkConfig.reference(n_entities=3)
    assert CLAUSE_PAIRS_BOUNDED in clauses(check_feasibility(cfg))


def test_hops_equal_entities_clause():
    cfg = NetworkConfig.reference(n_entities=5)
    assert clauses(check_feasibility(cfg)) == [CLAUSE_HOPS_NOT_ENTITIES]


def test_timing_clause_utilization_after_safe_time(a1_config):
    opt = OptimizationConstraints(attack_time=100.0, safe_time=60.0, utilization_time=70.0)
    assert clauses(check_feasibility(a1_config, opt)) == [CLAUSE_TIMING]


def test_timing_clause_safe_time_after_attack(a1_config):
    opt = OptimizationConstraints(attack_time=50.0, safe_time=60.0)
    assert clauses(check_feasibility(a1_config, opt)) == [CLAUSE_TIMING]


def test_violations_carry_detail(a1_config):
    violation = check_feasibility(NetworkConfig.reference(n_entities=5))[0]
    assert "5" in violation.detail


def test_periphery_defaults_to_clipped_arrivals(a1_config):
    assert vehicles_in_periphery(a1_config) == 10.0
    slow = NetworkConfig.reference(beta=0.5, update_rate=0.1)
    assert vehicles_in_periphery(slow) == 2.5


def test_periphery_prefers_profile(a1_config):
    profile = DensityProfile.constant(0.5, 0.0, 10.0)
    assert vehicles_in_periphery(a1_config, profile) == pytest.approx(5.0)
    assert check_feasibility(a1_config, profile=profile) == []
