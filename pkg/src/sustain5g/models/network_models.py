import math
from enum import Enum
from typing import Callable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from sustain5g.errors import InfeasibleConfigError


class OverheadInterpretation(Enum):
    """How the time factor of the signaling overhead is read."""
    INTEGRAL = "integral"
    PRINTED = "printed"


class FailSafeCriterion(Enum):
    SUSTAINABILITY_RATE = "sustainability"
    MESSAGE_OVERHEAD = "overhead"


REFERENCE_BETAS: Tuple[float, ...] = (2.0, 4.0, 6.0, 8.0, 10.0)


def scenario_label(beta: float) -> str:
    """A1..A5 for the arrival-rate steps of the reference parameter table."""
    for index, step in enumerate(REFERENCE_BETAS, start=1):
        if math.isclose(beta, step):
            return f"A{index}"
    return f"beta={beta:g}"


class RealInterval(BaseModel):
    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float

    @model_validator(mode="after")
    def _check_bounds(self) -> "RealInterval":
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("interval bounds must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"interval requires lo < hi, got [{self.lo}, {self.hi}]")
        return self

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


class QuadratureResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    error_estimate: float = Field(ge=0)
    evaluations: int = Field(ge=3)
    warning: Optional[str] = Field(None, description="QUADPACK notice kept when the error still met the target")


class NetworkConfig(BaseModel):
    """All parameters of the sustainability model.

    Field-level checks reject values that make no physical sense. The analytic
    side conditions (``β − α > 0``, ``E − n⁻¹ > 0``, ``n⁻¹ ≥ 2``) are kept out of
    construction so that infeasible combinations can still be described,
    swept and reported; analytic operations call
    :meth:`require_side_conditions` before evaluating.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_devices: int = Field(ge=1, description="N, end devices (vehicles/UEs)")
    n_entities: int = Field(ge=1, description="E, overall involved entities")
    reachable_hops_inv: int = Field(ge=1, description="n⁻¹, inverse hop count")
    passes: int = Field(ge=1, description="Q, protocol passes per authentication")
    update_rate: float = Field(gt=0, description="α, key updates per unit time")
    arrival_rate: float = Field(gt=0, description="β, vehicles per unit time")
    t1: float = Field(gt=0, description="window start, seconds")
    t2: float = Field(gt=0, description="window end, seconds")
    o_b: float = Field(1.0, gt=0, description="O_b, initial authentication overhead (messages)")
    s_n_threshold: Optional[float] = Field(None, gt=0)
    m_o_threshold: Optional[float] = Field(None, gt=0)
    overhead_interpretation: OverheadInterpretation = OverheadInterpretation.INTEGRAL
    alpha_prime_time: Optional[float] = Field(
        None, gt=0, description="time at which α′ = α/t is evaluated (default t1)"
    )
    density_override: Optional[float] = Field(
        None, description="D used by the feasibility check instead of β·t1"
    )

    @model_validator(mode="after")
    def _check_window(self) -> "NetworkConfig":
        if not (math.isfinite(self.t1) and math.isfinite(self.t2)):
            raise ValueError("t1 and t2 must be finite")
        if not self.t2 > self.t1:
            raise ValueError("t₂ − t₁ > 0")
        return self

    @classmethod
    def reference(
        cls, beta: float = 2.0, passes: int = 1, n_entities: int = 10, **overrides
    ) -> "NetworkConfig":
        """Reference parameter table: α = β/2, N = 10, n⁻¹ = 5, t = [5, 105] s."""
        values = dict(
            n_devices=10,
            n_entities=n_entities,
            reachable_hops_inv=5,
            passes=passes,
            update_rate=beta / 2,
            arrival_rate=beta,
            t1=5.0,
            t2=105.0,
            o_b=1.0,
        )
        values.update(overrides)
        return cls(**values)

    @property
    def window(self) -> RealInterval:
        return RealInterval(lo=self.t1, hi=self.t2)

    @property
    def reach_fraction(self) -> float:
        """n⁻¹/E, the chance that one device lands on a reachable entity."""
        return self.reachable_hops_inv / self.n_entities

    @property
    def rate_gap(self) -> float:
        return self.arrival_rate - self.update_rate

    @property
    def alpha_prime(self) -> float:
        at = self.alpha_prime_time if self.alpha_prime_time is not None else self.t1
        return self.update_rate / at

    def side_condition_violations(self) -> List[str]:
        violations = []
        if not self.rate_gap > 0:
            violations.append("β − α > 0")
        if not self.n_entities - self.reachable_hops_inv > 0:
            violations.append("E − n⁻¹ > 0")
        if self.reachable_hops_inv < 2:
            violations.append("n⁻¹ ≥ 2")
        return violations

    def require_side_conditions(self) -> None:
        violations = self.side_condition_violations()
        if violations:
            raise InfeasibleConfigError(
                violations[0],
                f"β={self.arrival_rate}, α={self.update_rate}, "
                f"E={self.n_entities}, n⁻¹={self.reachable_hops_inv}",
            )


class OptimizationConstraints(BaseModel):
    """Timing constraints of the key-update optimization problem."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    attack_time: float = Field(gt=0, description="t, time to launch an attack")
    safe_time: float = Field(gt=0, description="t′, minimum time keys must stay unchanged")
    utilization_time: Optional[float] = Field(None, gt=0, description="t_u, planned key use")
    min_updates: int = Field(0, ge=0, description="U′_N, mandatory key updates")
    safety_margin: float = Field(1.0, gt=0, description="ε, seconds")


class DensityProfile(BaseModel):
    """Vehicle density along the radial coordinate around a terminal."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    density: Callable[[float], float]
    support: RealInterval

    @classmethod
    def constant(cls, value: float, lo: float, hi: float) -> "DensityProfile":
        if value < 0:
            raise ValueError("density must be nonnegative")
        return cls(density=lambda _x: value, support=RealInterval(lo=lo, hi=hi))

    @classmethod
    def triangular(cls, peak: float, lo: float, hi: float) -> "DensityProfile":
        """Zero at both ends of the support, ``peak`` at the midpoint."""
        if peak < 0:
            raise ValueError("density must be nonnegative")
        mid = (lo + hi) / 2
        half = (hi - lo) / 2

        def density(x: float) -> float:
            return max(0.0, peak * (1.0 - abs(x - mid) / half))

        return cls(density=density, support=RealInterval(lo=lo, hi=hi))


class SustainabilityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    closed_form: float
    quadrature: float
    asymptotic: float
    relative_gap: float = Field(ge=0)
    quadrature_error: float = Field(0.0, ge=0)

    @property
    def limit_ratio(self) -> float:
        """closed_form / asymptotic; how far the window is from the large-rate limit."""
        return self.closed_form / self.asymptotic


class FailSafeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    fail_safe_time: Optional[float] = None
    criterion: FailSafeCriterion
    threshold_used: float
    window: RealInterval
    scan_points: List[Tuple[float, float]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_inside_window(self) -> "FailSafeReport":
        if self.fail_safe_time is not None and not self.window.contains(self.fail_safe_time):
            raise ValueError("fail-safe time must lie inside [t1, t2]")
        return self

    @property
    def found(self) -> bool:
        return self.fail_safe_time is not None


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    clause: str
    detail: str = ""
