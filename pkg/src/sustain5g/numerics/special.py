"""Exponential integral Ei and the oracles it is checked against."""

import math
from decimal import Decimal, localcontext
from typing import Tuple

from scipy.special import expi

from sustain5g.errors import DomainError, EiOverflowError

EI_ARGUMENT_LIMIT = 700.0
SERIES_ASYMPTOTIC_CROSSOVER = 40.0
ORACLE_DIGITS = 60

EULER_GAMMA = Decimal(
    "0.5772156649015328606065120900824024310421593359399235988057672348848677"
)


def exp_integral_ei(x: float) -> float:
    """Principal value Ei(x) = −∫_{−x}^{∞} e^{−u}/u du for real nonzero x."""
    if x == 0:
        raise DomainError("Ei has a logarithmic singularity at x = 0")
    if not math.isfinite(x) or abs(x) > EI_ARGUMENT_LIMIT:
        raise EiOverflowError(f"|x| must not exceed {EI_ARGUMENT_LIMIT:g}, got {x!r}")
    return float(expi(x))


def ei_series(x: float, digits: int = ORACLE_DIGITS) -> float:
    """γ + ln|x| + Σ xᵏ/(k·k!) summed in ``digits``-digit decimal arithmetic.

    Exact for the double ``x`` up to rounding of the final conversion as long as
    ``digits`` covers the cancellation of the alternating terms (|x| ≲ 60 at the
    default precision).
    """
    if x == 0:
        raise DomainError("Ei has a logarithmic singularity at x = 0")
    with localcontext() as ctx:
        ctx.prec = digits
        dx = Decimal(x)
        total = EULER_GAMMA + abs(dx).ln()
        eps = Decimal(10) ** (-digits)
        term = Decimal(1)
        k = 0
        while True:
            k += 1
            term = term * dx / k
            contribution = term / k
            total += contribution
            if k > abs(x) and abs(contribution) <= eps * max(abs(total), Decimal(1)):
                break
        return float(total)


def ei_asymptotic(x: float) -> Tuple[float, float]:
    """eˣ/x · Σ k!/xᵏ truncated at its smallest term.

    Returns ``(value, smallest_term)``; the relative truncation error is of the
    order of the smallest term.
    """
    if x <= 0:
        raise DomainError("the asymptotic expansion is used for x > 0 only")
    if x > EI_ARGUMENT_LIMIT:
        raise EiOverflowError(f"x must not exceed {EI_ARGUMENT_LIMIT:g}")
    total = 0.0
    term = 1.0
    k = 0
    while True:
        total += term
        following = term * (k + 1) / x
        if following >= term:
            break
        term = following
        k += 1
    return math.exp(x) / x * total, term


def ei_reference(x: float) -> float:
    """Series below the crossover, asymptotic expansion above it."""
    if abs(x) <= SERIES_ASYMPTOTIC_CROSSOVER:
        return ei_series(x)
    if x > 0:
        return ei_asymptotic(x)[0]
    return ei_series(x, digits=ORACLE_DIGITS + int(abs(x)))
