import math
from typing import Dict

from pydantic import BaseModel, ConfigDict, Field

from sustain5g.errors import DomainError
from sustain5g.models.key_models import (
    PolicyWeights,
    RefreshAction,
    RefreshDecision,
    VehicleContext,
)

REASON_FAILSAFE_EXPIRY = "fail-safe expiry"
REASON_ZONE_HANDOVER = "zone handover"
REASON_WEIGHTED_SCORE = "weighted score"


class RefreshPolicy(BaseModel):
    """Factorized refresh module: two hard rules, then a weighted threshold.

    Each factor is scaled by its normalisation constant and clipped to [0, 1]
    before weighting. The constants are operating defaults, tune them per
    deployment.
    """

    model_config = ConfigDict(frozen=True)

    weights: PolicyWeights = Field(default_factory=PolicyWeights)
    threshold: float = 0.5
    speed_scale: float = Field(40.0, gt=0, description="m/s mapped to 1")
    displacement_scale: float = Field(500.0, gt=0, description="meters mapped to 1")
    shared_sessions_scale: float = Field(10.0, gt=0)
    refresh_rate_scale: float = Field(1.0, gt=0)
    total_keys_scale: float = Field(10.0, gt=0)
    zone_traversals_scale: float = Field(5.0, gt=0)

    def normalized_factors(self, ctx: VehicleContext, fs_window: float) -> Dict[str, float]:
        raw = {
            "speed": ctx.speed / self.speed_scale,
            "displacement": ctx.displacement / self.displacement_scale,
            "last_update": ctx.last_update / fs_window,
            "shared_sessions": ctx.shared_sessions / self.shared_sessions_scale,
            "refresh_rate": ctx.refresh_rate / self.refresh_rate_scale,
            "total_keys": ctx.total_keys / self.total_keys_scale,
            "zone_traversals": ctx.zone_traversals / self.zone_traversals_scale,
            "dissociation": 1.0 - ctx.associativity,
        }
        return {name: min(1.0, max(0.0, value)) for name, value in raw.items()}

    def score(self, ctx: VehicleContext, fs_window: float) -> float:
        weights = self.weights.model_dump()
        factors = self.normalized_factors(ctx, fs_window)
        return sum(weights[name] * value for name, value in factors.items())

    def evaluate(self, ctx: VehicleContext, fs_window: float) -> RefreshDecision:
        if not (math.isfinite(fs_window) and fs_window > 0):
            raise DomainError(f"fail-safe window must be positive and finite, got {fs_window!r}")
        if not math.isfinite(self.threshold):
            raise DomainError("policy threshold must be finite")

        score = self.score(ctx, fs_window)
        reasons = []
        if ctx.last_update > fs_window:
            reasons.append(REASON_FAILSAFE_EXPIRY)
        if ctx.zone_changed:
            reasons.append(REASON_ZONE_HANDOVER)
        if not reasons and score > self.threshold:
            reasons.append(REASON_WEIGHTED_SCORE)

        action = RefreshAction.REGENERATE if reasons else RefreshAction.KEEP
        return RefreshDecision(action=action, score=score, reasons=reasons)


def evaluate_refresh_policy(
    ctx: VehicleContext, fs_window: float, weights: PolicyWeights, threshold: float
) -> RefreshDecision:
    return RefreshPolicy(weights=weights, threshold=threshold).evaluate(ctx, fs_window)
