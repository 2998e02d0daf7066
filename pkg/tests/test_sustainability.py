import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sustain5g.analysis import (
    evaluate_sustainability,
    instantaneous_sustainability,
    sustainability_asymptotic,
    sustainability_closed_form,
    sustainability_quadrature,
)
from sustain5g.errors import DomainError, InfeasibleConfigError
from sustain5g.models import REFERENCE_BETAS, NetworkConfig, RealInterval
from sustain5g.numerics import integrate_adaptive

FEASIBLE_ENTITIES = range(6, 11)
PASSES = range(1, 6)


def test_a1_closed_form_value(a1_config):
    # 25.6 × (Ei(0.2) − Ei(1/105))
    assert sustainability_closed_form(a1_config) == pytest.approx(83.0832, rel=1e-5)


def test_a1_quadrature_agrees_with_closed_form(a1_config):
    closed = sustainability_closed_form(a1_config)
    assert sustainability_quadrature(a1_config) == pytest.approx(closed, rel=1e-6)


def test_near_equal_rates_approach_log_window_ratio():
    cfg = NetworkConfig.reference(beta=2.0, update_rate=2.0 - 1e-6)
    alpha, beta = cfg.update_rate, cfg.arrival_rate
    loss = (1 - cfg.reach_fraction) ** cfg.n_devices
    approx = alpha**2 / (2 * beta * cfg.n_devices * loss * cfg.passes) * math.log(cfg.t2 / cfg.t1)
    assert sustainability_quadrature(cfg) == pytest.approx(approx, rel=1e-3)
    assert sustainability_closed_form(cfg) == pytest.approx(approx, rel=1e-3)


@pytest.mark.parametrize("beta", REFERENCE_BETAS)
def test_closed_form_matches_quadrature_on_reference_grid(beta):
    for passes in PASSES:
        for entities in FEASIBLE_ENTITIES:
            report = evaluate_sustainability(NetworkConfig.reference(beta, passes, entities))
            assert report.relative_gap <= 1e-6


@pytest.mark.parametrize("beta", REFERENCE_BETAS)
def test_q_inverse_law(beta):
    for entities in FEASIBLE_ENTITIES:
        scaled = [
            sustainability_closed_form(NetworkConfig.reference(beta, q, entities)) * q for q in PASSES
        ]
        assert all(v == pytest.approx(scaled[0], rel=1e-12) for v in scaled)


def test_sustainability_decreases_down_the_q_column():
    for beta in REFERENCE_BETAS:
        values = [sustainability_closed_form(NetworkConfig.reference(beta, q, 10)) for q in PASSES]
        assert all(a > b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("beta", REFERENCE_BETAS)
def test_asymptotic_limit_is_half_under_reference_rule(beta):
    assert sustainability_asymptotic(NetworkConfig.reference(beta)) == 0.5


def test_asymptotic_is_rate_ratio():
    cfg = NetworkConfig.reference(update_rate=0.3, arrival_rate=1.7)
    assert sustainability_asymptotic(cfg) == 0.3 / 1.7


def test_ratio_to_limit_is_monotone_in_rate():
    ratios = [
        evaluate_sustainability(NetworkConfig.reference(beta)).limit_ratio
        for beta in (1.0, 2.0, 4.0, 8.0, 16.0)
    ]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))


@settings(max_examples=30, deadline=None)
@given(
    t2=st.floats(min_value=6.0, max_value=200.0),
    extra=st.floats(min_value=0.5, max_value=100.0),
)
def test_closed_form_increases_with_window_end(t2, extra):
    shorter = NetworkConfig.reference(t2=t2)
    longer = NetworkConfig.reference(t2=t2 + extra)
    assert sustainability_closed_form(shorter) < sustainability_closed_form(longer)


def test_instantaneous_rate_integrates_to_closed_form(a1_config):
    integral = integrate_adaptive(
        lambda t: instantaneous_sustainability(a1_config, t), RealInterval(lo=5.0, hi=105.0)
    )
    assert integral.value == pytest.approx(sustainability_closed_form(a1_config), rel=1e-8)


def test_instantaneous_rate_is_vectorised(a1_config):
    import numpy as np

    grid = np.linspace(5.0, 105.0, 11)
    values = instantaneous_sustainability(a1_config, grid)
    assert values.shape == grid.shape
    assert values[3] == pytest.approx(instantaneous_sustainability(a1_config, float(grid[3])))
    assert np.all(np.diff(values) < 0)


def test_instantaneous_rate_rejects_nonpositive_time(a1_config):
    with pytest.raises(DomainError):
        instantaneous_sustainability(a1_config, 0.0)


def test_equal_rates_are_infeasible():
    cfg = NetworkConfig.reference(update_rate=2.0, arrival_rate=2.0)
    with pytest.raises(InfeasibleConfigError, match="β − α > 0"):
        sustainability_closed_form(cfg)
    with pytest.raises(InfeasibleConfigError, match="β − α > 0"):
        sustainability_quadrature(cfg)


def test_single_hop_is_infeasible():
    with pytest.raises(InfeasibleConfigError, match="n⁻¹ ≥ 2"):
        sustainability_closed_form(NetworkConfig.reference(reachable_hops_inv=1))


def test_report_fields(a1_config):
    report = evaluate_sustainability(a1_config)
    assert report.asymptotic == 0.5
    assert report.quadrature_error >= 0
    assert report.limit_ratio == pytest.approx(report.closed_form / 0.5)
