"""Signaling and message overhead of key updates."""

import math
from typing import Optional, Union

import numpy as np

from sustain5g.analysis.probability import connectivity_loss_probability
from sustain5g.errors import DomainError
from sustain5g.models.network_models import NetworkConfig, OverheadInterpretation

ArrayLike = Union[float, np.ndarray]


def overhead_prefactor(cfg: NetworkConfig) -> float:
    """O_b·(n⁻¹/E)^N / (E·(1 − n⁻¹/E)^N), as printed for the signaling overhead."""
    loss = connectivity_loss_probability(cfg)
    return cfg.o_b * cfg.reach_fraction**cfg.n_devices / (cfg.n_entities * loss)


def _checked_alpha_prime(cfg: NetworkConfig) -> float:
    alpha_prime = cfg.alpha_prime
    if not 0 < alpha_prime < 1:
        raise DomainError(f"α′ = α/t must lie in (0, 1), got {alpha_prime:g}")
    return alpha_prime


def time_factor(
    cfg: NetworkConfig,
    t_start: ArrayLike,
    t_end: ArrayLike,
    interpretation: Optional[OverheadInterpretation] = None,
) -> ArrayLike:
    """∫(1−α′)ᵗ dt over [t_start, t_end], or t_end − t_start for the printed form."""
    interpretation = interpretation or cfg.overhead_interpretation
    alpha_prime = _checked_alpha_prime(cfg)
    start = np.asarray(t_start, dtype=float)
    end = np.asarray(t_end, dtype=float)
    if interpretation is OverheadInterpretation.PRINTED:
        factor = end - start
    else:
        log_base = math.log1p(-alpha_prime)
        factor = (np.exp(end * log_base) - np.exp(start * log_base)) / log_base
    if factor.ndim == 0:
        return float(factor)
    return factor


def signaling_overhead(
    cfg: NetworkConfig, interpretation: Optional[OverheadInterpretation] = None
) -> float:
    """O_S over the configured window [t1, t2]."""
    return overhead_prefactor(cfg) * time_factor(cfg, cfg.t1, cfg.t2, interpretation)


def message_overhead(
    cfg: NetworkConfig, interpretation: Optional[OverheadInterpretation] = None
) -> float:
    """M_O = O_S·(1 − P)/(E·P)."""
    loss = connectivity_loss_probability(cfg)
    return signaling_overhead(cfg, interpretation) * (1 - loss) / (cfg.n_entities * loss)


def cumulative_message_overhead(
    cfg: NetworkConfig,
    t: ArrayLike,
    interpretation: Optional[OverheadInterpretation] = None,
) -> ArrayLike:
    """M_O accumulated from t1 up to t; nondecreasing in t."""
    loss = connectivity_loss_probability(cfg)
    scale = overhead_prefactor(cfg) * (1 - loss) / (cfg.n_entities * loss)
    factor = time_factor(cfg, cfg.t1, t, interpretation)
    return scale * factor
