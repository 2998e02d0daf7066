from .quadrature import integrate_adaptive
from .special import (
    EI_ARGUMENT_LIMIT,
    SERIES_ASYMPTOTIC_CROSSOVER,
    ei_asymptotic,
    ei_reference,
    ei_series,
    exp_integral_ei,
)

__all__ = [
    "integrate_adaptive",
    "EI_ARGUMENT_LIMIT",
    "SERIES_ASYMPTOTIC_CROSSOVER",
    "ei_asymptotic",
    "ei_reference",
    "ei_series",
    "exp_integral_ei",
]
