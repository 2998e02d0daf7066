import logging
import math
from typing import Optional, Union

import numpy as np

from sustain5g.analysis.probability import (
    KEYS_PER_AUTHENTICATION,
    SOURCES_PER_VEHICLE,
    connectivity_loss_probability,
    poisson_logpmf,
)
from sustain5g.errors import DomainError
from sustain5g.models.network_models import (
    NetworkConfig,
    QuadratureResult,
    SustainabilityReport,
)
from sustain5g.numerics import exp_integral_ei, integrate_adaptive

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def _normalizer(cfg: NetworkConfig) -> float:
    """N·P·Q, the denominator shared by every sustainability form."""
    return cfg.n_devices * connectivity_loss_probability(cfg) * cfg.passes


def sustainability_closed_form(cfg: NetworkConfig) -> float:
    cfg.require_side_conditions()
    alpha, beta = cfg.update_rate, cfg.arrival_rate
    prefactor = alpha**2 / (2 * beta * _normalizer(cfg))
    gap = cfg.rate_gap
    return prefactor * (exp_integral_ei(gap / cfg.t1) - exp_integral_ei(gap / cfg.t2))


def _rate_integrand(cfg: NetworkConfig):
    alpha, beta = cfg.update_rate, cfg.arrival_rate

    def integrand(t: float) -> float:
        # ratio of the two Poisson pmfs, taken in log space to survive large means
        return math.exp(
            poisson_logpmf(KEYS_PER_AUTHENTICATION, alpha / t)
            - poisson_logpmf(SOURCES_PER_VEHICLE, beta / t)
        )

    return integrand


def _integrate_rate(cfg: NetworkConfig, tol: Optional[float] = None) -> QuadratureResult:
    cfg.require_side_conditions()
    return integrate_adaptive(_rate_integrand(cfg), cfg.window, tol)


def sustainability_quadrature(cfg: NetworkConfig, tol: Optional[float] = None) -> float:
    """Pre-integration form: pmf ratio integrated over [t1, t2] by adaptive quadrature."""
    return _integrate_rate(cfg, tol).value / _normalizer(cfg)


def sustainability_asymptotic(cfg: NetworkConfig) -> float:
    """Large-rate limit α/β."""
    return cfg.update_rate / cfg.arrival_rate


def instantaneous_sustainability(cfg: NetworkConfig, t: ArrayLike) -> ArrayLike:
    """s(τ) = α²·e^{(β−α)/τ} / (2βτ·N·P·Q), the integrand normalised by N·P·Q."""
    cfg.require_side_conditions()
    times = np.asarray(t, dtype=float)
    if np.any(times <= 0):
        raise DomainError("instantaneous sustainability needs t > 0")
    alpha, beta = cfg.update_rate, cfg.arrival_rate
    values = alpha**2 * np.exp(cfg.rate_gap / times) / (2 * beta * times * _normalizer(cfg))
    if values.ndim == 0:
        return float(values)
    return values


def evaluate_sustainability(cfg: NetworkConfig, tol: Optional[float] = None) -> SustainabilityReport:
    closed_form = sustainability_closed_form(cfg)
    integral = _integrate_rate(cfg, tol)
    normalizer = _normalizer(cfg)
    quadrature = integral.value / normalizer
    gap = abs(closed_form - quadrature) / abs(quadrature)
    logger.debug(
        "S_N closed=%.16g quad=%.16g gap=%.3g (%d evaluations)",
        closed_form, quadrature, gap, integral.evaluations,
    )
    return SustainabilityReport(
        closed_form=closed_form,
        quadrature=quadrature,
        asymptotic=sustainability_asymptotic(cfg),
        relative_gap=gap,
        quadrature_error=integral.error_estimate / normalizer,
    )
