from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from sustain5g.models.key_models import PolicyWeights
from sustain5g.models.network_models import (
    REFERENCE_BETAS,
    NetworkConfig,
    OptimizationConstraints,
)
from sustain5g.models.sim_models import SimConfig


class SweepSpec(BaseModel):
    """Axes of a parameter sweep; defaults reproduce the reference parameter table."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    betas: List[float] = Field(default_factory=lambda: list(REFERENCE_BETAS), min_length=1)
    alphas: Optional[List[float]] = Field(None, description="explicit α per β, overrides alpha_ratio")
    alpha_ratio: float = Field(0.5, gt=0)
    passes: List[int] = Field(default_factory=lambda: [1, 2, 3, 4, 5], min_length=1)
    entities: List[int] = Field(default_factory=lambda: list(range(1, 11)), min_length=1)

    @model_validator(mode="after")
    def _check_axes(self) -> "SweepSpec":
        if any(beta <= 0 for beta in self.betas):
            raise ValueError("sweep betas must be positive")
        if self.alphas is not None:
            if len(self.alphas) != len(self.betas):
                raise ValueError("sweep alphas must pair one-to-one with betas")
            if any(alpha <= 0 for alpha in self.alphas):
                raise ValueError("sweep alphas must be positive")
        if any(q < 1 for q in self.passes):
            raise ValueError("sweep passes must be >= 1")
        if any(e < 1 for e in self.entities):
            raise ValueError("sweep entities must be >= 1")
        return self

    def alpha_for(self, index: int) -> float:
        if self.alphas is not None:
            return self.alphas[index]
        return self.betas[index] * self.alpha_ratio


class PolicySection(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    weights: PolicyWeights = Field(default_factory=PolicyWeights)
    threshold: float = 0.5
    fs_window: Optional[float] = Field(None, gt=0)


class RunConfig(BaseModel):
    """Schema of the JSON configuration file."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    network: Optional[NetworkConfig] = None
    constraints: Optional[OptimizationConstraints] = None
    sweep: SweepSpec = Field(default_factory=SweepSpec)
    sim: Optional[SimConfig] = None
    policy: PolicySection = Field(default_factory=PolicySection)


class RunManifest(BaseModel):
    """Everything needed to re-create a run: parsed config, effective settings, argv and seed."""

    config_path: Optional[str] = None
    run_config: Optional[RunConfig] = None
    settings: Dict[str, Any] = Field(default_factory=dict)
    command: str
    argv: List[str] = Field(default_factory=list)
    seed: Optional[int] = None
    tool_version: str
    timestamp: datetime = Field(default_factory=datetime.now)
    outputs: List[str] = Field(default_factory=list)
