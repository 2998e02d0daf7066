import math

import pytest

from sustain5g.analysis import (
    connectivity_loss_probability,
    key_update_pmf,
    vehicle_count_density,
    vehicle_pmf,
)
from sustain5g.errors import DomainError, InfeasibleConfigError
from sustain5g.models import DensityProfile, NetworkConfig


def test_connectivity_loss_reference_value(a1_config):
    assert connectivity_loss_probability(a1_config) == pytest.approx(9.765625e-4, rel=1e-15)


def test_connectivity_loss_single_device():
    cfg = NetworkConfig.reference(n_entities=10, reachable_hops_inv=9, n_devices=1)
    assert connectivity_loss_probability(cfg) == pytest.approx(0.1, rel=1e-12)


def test_connectivity_loss_needs_unreachable_entities():
    cfg = NetworkConfig.reference(n_entities=5)
    with pytest.raises(InfeasibleConfigError) as excinfo:
        connectivity_loss_probability(cfg)
    assert excinfo.value.clause == "E − n⁻¹ > 0"


def test_connectivity_loss_is_a_probability():
    for entities in range(6, 30):
        p = connectivity_loss_probability(NetworkConfig.reference(n_entities=entities))
        assert 0 < p < 1


def test_key_update_pmf_includes_factorial():
    assert key_update_pmf(1.0, 1.0) == pytest.approx(math.exp(-1) / 2, rel=1e-15)
    assert key_update_pmf(4.0, 2.0) == pytest.approx(2 * math.exp(-2), rel=1e-15)


def test_vehicle_pmf():
    assert vehicle_pmf(2.0, 1.0) == pytest.approx(2 * math.exp(-2), rel=1e-15)
    assert vehicle_pmf(10.0, 5.0) == pytest.approx(2 * math.exp(-2), rel=1e-15)


def test_pmfs_are_probabilities_for_large_means():
    assert 0.0 <= key_update_pmf(1e6, 1.0) <= 1.0
    assert 0.0 <= vehicle_pmf(1e6, 1.0) <= 1.0


@pytest.mark.parametrize("t", [0.0, -1.0])
def test_pmfs_reject_nonpositive_time(t):
    with pytest.raises(DomainError):
        key_update_pmf(1.0, t)
    with pytest.raises(DomainError):
        vehicle_pmf(1.0, t)


def test_constant_density_integrates_to_area():
    profile = DensityProfile.constant(3.0, 0.0, 10.0)
    assert vehicle_count_density(profile) == pytest.approx(30.0, rel=1e-12)


def test_triangular_density_integrates_to_half_base_times_peak():
    profile = DensityProfile.triangular(4.0, 100.0, 300.0)
    assert vehicle_count_density(profile) == pytest.approx(400.0, rel=1e-10)


def test_zero_density_counts_nobody():
    assert vehicle_count_density(DensityProfile.constant(0.0, 0.0, 1.0)) == 0.0


def test_negative_density_is_rejected():
    profile = DensityProfile(
        density=lambda x: x - 1.0, support=DensityProfile.constant(1.0, 0.0, 2.0).support
    )
    with pytest.raises(DomainError):
        vehicle_count_density(profile)
