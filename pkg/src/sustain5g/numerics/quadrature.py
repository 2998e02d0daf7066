import logging
import math
from typing import Callable, Optional

from scipy.integrate import quad

from sustain5g.config import get_settings
from sustain5g.errors import DomainError, QuadratureNonConvergence
from sustain5g.models.network_models import QuadratureResult, RealInterval

logger = logging.getLogger(__name__)

# QUADPACK's 21-point Gauss-Kronrod rule spends this many evaluations per panel.
EVALUATIONS_PER_PANEL = 21


def integrate_adaptive(
    f: Callable[[float], float],
    interval: RealInterval,
    tol: Optional[float] = None,
    max_evaluations: Optional[int] = None,
) -> QuadratureResult:
    """Adaptive bisection with an embedded Gauss (10-point) / Kronrod (21-point) pair.

    The target accuracy is ``max(tol, tol·|value|)``. Raises
    :class:`QuadratureNonConvergence` when the evaluation budget runs out, or when
    QUADPACK flags the result and its error estimate misses the target.
    """
    settings = get_settings()
    tol = settings.quad_tolerance if tol is None else tol
    max_evaluations = settings.max_evaluations if max_evaluations is None else max_evaluations
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")

    limit = max(1, max_evaluations // EVALUATIONS_PER_PANEL)
    result = quad(
        f,
        interval.lo,
        interval.hi,
        epsabs=tol,
        epsrel=tol,
        limit=limit,
        full_output=1,
    )
    value, abserr, info = result[0], result[1], result[2]
    evaluations = int(info["neval"])

    warning = None
    if len(result) > 3:
        # ier > 0: a message accompanies the result
        if info["last"] >= limit or evaluations > max_evaluations:
            raise QuadratureNonConvergence(
                f"no convergence on [{interval.lo}, {interval.hi}] within "
                f"{max_evaluations} evaluations: {result[3]}"
            )
        # round-off or bad integrand: only usable if the error still meets the target
        notice = " ".join(str(result[3]).split())
        diverged = "divergent" in notice or "does not converge" in notice
        if diverged or not abs(abserr) <= max(tol, tol * abs(value)):
            raise QuadratureNonConvergence(
                f"integral on [{interval.lo}, {interval.hi}] missed tolerance {tol:g} "
                f"(error estimate {abserr:.3g}): {notice}"
            )
        warning = notice
        logger.warning("quadrature on [%g, %g]: %s", interval.lo, interval.hi, warning)

    if not math.isfinite(value):
        raise QuadratureNonConvergence(f"non-finite integral on [{interval.lo}, {interval.hi}]")

    logger.debug(
        "integrated [%g, %g]: value=%.16g err=%.3g neval=%d",
        interval.lo, interval.hi, value, abserr, evaluations,
    )
    return QuadratureResult(
        value=value, error_estimate=abs(abserr), evaluations=evaluations, warning=warning
    )
