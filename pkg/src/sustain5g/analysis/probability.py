"""Poisson and attachment probabilities behind the sustainability model."""

import math
from typing import Optional

from sustain5g.errors import DomainError, InfeasibleConfigError
from sustain5g.models.network_models import DensityProfile, NetworkConfig
from sustain5g.numerics import integrate_adaptive

KEYS_PER_AUTHENTICATION = 2  # one long-range and one short-range key
SOURCES_PER_VEHICLE = 1


def poisson_logpmf(k: int, lam: float) -> float:
    if lam < 0:
        raise DomainError(f"Poisson mean must be nonnegative, got {lam!r}")
    if lam == 0:
        return 0.0 if k == 0 else -math.inf
    return k * math.log(lam) - lam - math.lgamma(k + 1)


def _mean_per_time(rate: float, t: float) -> float:
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    if rate < 0:
        raise DomainError(f"rate must be nonnegative, got {rate!r}")
    return rate / t


def key_update_pmf(alpha: float, t: float) -> float:
    """P[X = 2] for X ~ Poisson(α/t), including the 2! divisor."""
    return math.exp(poisson_logpmf(KEYS_PER_AUTHENTICATION, _mean_per_time(alpha, t)))


def vehicle_pmf(beta: float, t: float) -> float:
    """P[X′ = 1] for X′ ~ Poisson(β/t)."""
    return math.exp(poisson_logpmf(SOURCES_PER_VEHICLE, _mean_per_time(beta, t)))


def connectivity_loss_probability(cfg: NetworkConfig) -> float:
    """P = (1 − n⁻¹/E)^N: no device lands on a reachable entity."""
    if cfg.reach_fraction >= 1:
        raise InfeasibleConfigError("E − n⁻¹ > 0")
    return (1.0 - cfg.reach_fraction) ** cfg.n_devices


def vehicle_count_density(profile: DensityProfile, tol: Optional[float] = None) -> float:
    """D = ∫ density(x) dx over the profile support."""

    def integrand(x: float) -> float:
        value = profile.density(x)
        if value < 0:
            raise DomainError(f"density is negative at x={x}: {value}")
        return value

    return integrate_adaptive(integrand, profile.support, tol).value
