import math
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class SimConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = Field(ge=0, lt=2**64)
    trials: int = Field(100_000, ge=1)
    horizon: float = Field(100.0, gt=0, description="seconds of simulated time")
    unit_window: float = Field(1.0, gt=0, description="pmf estimation window and trace bucket width")
    mean_dwell: float = Field(60.0, gt=0, description="mean time a vehicle stays attached")
    zone_length: float = Field(250.0, gt=0, description="meters per zone")
    max_speed: float = Field(40.0, gt=0, description="upper bound of sampled speeds, m/s")


class ProbabilityEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    estimate: float = Field(ge=0, le=1)
    stderr: float = Field(ge=0)
    successes: int = Field(ge=0)
    trials: int = Field(ge=1)

    @classmethod
    def from_counts(cls, successes: int, trials: int) -> "ProbabilityEstimate":
        """Binomial estimate; the stderr uses a half-count smoothed p so that
        degenerate samples (0 or all successes) still report their width."""
        estimate = successes / trials
        smoothed = (successes + 0.5) / (trials + 1)
        stderr = math.sqrt(smoothed * (1 - smoothed) / trials)
        return cls(estimate=estimate, stderr=stderr, successes=successes, trials=trials)

    def interval(self, z: float = 1.96) -> Tuple[float, float]:
        return max(0.0, self.estimate - z * self.stderr), min(1.0, self.estimate + z * self.stderr)

    def z_score(self, expected: float) -> float:
        return abs(self.estimate - expected) / self.stderr


class PoissonHistogram(BaseModel):
    model_config = ConfigDict(frozen=True)

    rate: float
    window: float
    trials: int = Field(ge=1)
    counts: List[int]

    @property
    def mean_parameter(self) -> float:
        return self.rate * self.window

    @property
    def mean(self) -> float:
        return sum(k * c for k, c in enumerate(self.counts)) / self.trials

    @property
    def variance(self) -> float:
        mean = self.mean
        return sum(c * (k - mean) ** 2 for k, c in enumerate(self.counts)) / self.trials

    def estimate(self, k: int) -> ProbabilityEstimate:
        hits = self.counts[k] if 0 <= k < len(self.counts) else 0
        return ProbabilityEstimate.from_counts(hits, self.trials)


class TraceBucket(BaseModel):
    start: float
    end: float
    arrivals: int = 0
    lost: int = 0
    authentications: int = 0
    refreshes: int = 0
    key_updates: int = 0
    messages: float = 0.0


class SimStats(BaseModel):
    seed: int
    passes: int
    horizon: float
    unit_window: float
    empirical_probabilities: Dict[str, ProbabilityEstimate] = Field(default_factory=dict)
    arrival_count: int = 0
    lost_count: int = 0
    auth_count: int = 0
    refresh_count: int = 0
    key_update_count: int = 0
    policy_evaluations: int = 0
    session_messages: int = 0
    initial_auth_messages: float = 0.0
    message_total: float = 0.0
    traces: List[TraceBucket] = Field(default_factory=list)


class ComparisonStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    INFO = "info"


class ComparisonRow(BaseModel):
    name: str
    empirical: float
    analytic: float
    stderr: Optional[float] = None
    z_score: Optional[float] = None
    sigma_rule: Optional[float] = None
    status: ComparisonStatus
    note: str = ""


class ComparisonReport(BaseModel):
    rows: List[ComparisonRow] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.status is not ComparisonStatus.FAIL for row in self.rows)

    def row(self, name: str) -> ComparisonRow:
        for row in self.rows:
            if row.name == name:
                return row
        raise KeyError(name)
