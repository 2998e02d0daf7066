import math
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

KEY_SIZE = 32


class SessionMode(Enum):
    """Long range secures the TM↔hub backhaul, short range the vehicle↔edge fronthaul."""
    LONG_RANGE = "long-range"
    SHORT_RANGE = "short-range"


class SessionPhase(Enum):
    IDLE = "idle"
    AUTHENTICATING = "authenticating"
    ACTIVE = "active"
    REFRESHING = "refreshing"
    EXPIRED = "expired"


class SessionEvent(Enum):
    START = "start"
    PASS_COMPLETED = "pass-completed"
    EXPIRE = "expire"
    REFRESH_REQUESTED = "refresh-requested"


class RefreshAction(Enum):
    KEEP = "keep"
    REGENERATE = "regenerate"


class KeyMaterial(BaseModel):
    model_config = ConfigDict(frozen=True)

    key_bytes: bytes = Field(min_length=KEY_SIZE, max_length=KEY_SIZE)
    label: str = Field(min_length=1)
    generation: int = Field(0, ge=0)

    @property
    def hex(self) -> str:
        return self.key_bytes.hex()


class SessionState(BaseModel):
    model_config = ConfigDict(frozen=True)

    mode: SessionMode = SessionMode.SHORT_RANGE
    phase: SessionPhase = SessionPhase.IDLE
    pass_index: Optional[int] = None
    passes_required: int = Field(ge=1)
    messages_sent: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_pass_index(self) -> "SessionState":
        in_handshake = self.phase in (SessionPhase.AUTHENTICATING, SessionPhase.REFRESHING)
        if in_handshake:
            if self.pass_index is None or not 1 <= self.pass_index <= self.passes_required:
                raise ValueError("pass_index must lie in [1, Q] during a handshake")
        elif self.pass_index is not None:
            raise ValueError("pass_index is only defined during a handshake")
        return self


class VehicleContext(BaseModel):
    """Inputs of the factorized refresh module for one vehicle."""

    vehicle_id: str = ""
    speed: float = Field(0.0, ge=0, description="S, m/s")
    location: Tuple[float, float] = (0.0, 0.0)
    last_update: float = Field(0.0, ge=0, description="U_T, seconds since key issuance")
    shared_sessions: int = Field(0, ge=0, description="A_S")
    refresh_rate: float = Field(0.0, ge=0, description="F_R, updates per unit time")
    total_keys: int = Field(0, ge=0, description="T_K")
    zone_traversals: int = Field(0, ge=0, description="Z_T since issuance")
    associativity: float = Field(1.0, ge=0, le=1, description="V_A")
    last_decision_location: Optional[Tuple[float, float]] = None
    last_decision_zone_traversals: int = Field(0, ge=0)

    @property
    def displacement(self) -> float:
        """Meters travelled since the last policy decision."""
        if self.last_decision_location is None:
            return 0.0
        return math.dist(self.location, self.last_decision_location)

    @property
    def zone_changed(self) -> bool:
        return self.zone_traversals > self.last_decision_zone_traversals

    def mark_decided(self) -> None:
        """Anchor the "since last decision" factors at the current state."""
        self.last_decision_location = self.location
        self.last_decision_zone_traversals = self.zone_traversals


class PolicyWeights(BaseModel):
    model_config = ConfigDict(frozen=True)

    speed: float = Field(0.125, ge=0)
    displacement: float = Field(0.125, ge=0)
    last_update: float = Field(0.125, ge=0)
    shared_sessions: float = Field(0.125, ge=0)
    refresh_rate: float = Field(0.125, ge=0)
    total_keys: float = Field(0.125, ge=0)
    zone_traversals: float = Field(0.125, ge=0)
    dissociation: float = Field(0.125, ge=0, description="weight of 1 − V_A")

    @classmethod
    def uniform(cls, weight: float) -> "PolicyWeights":
        return cls(**{name: weight for name in cls.model_fields})

    @model_validator(mode="after")
    def _check_finite(self) -> "PolicyWeights":
        if not all(math.isfinite(value) for value in self.model_dump().values()):
            raise ValueError("policy weights must be finite")
        return self


class RefreshDecision(BaseModel):
    model_config = ConfigDict(frozen=True)

    action: RefreshAction
    score: float
    reasons: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_reasons(self) -> "RefreshDecision":
        if self.action is RefreshAction.REGENERATE and not self.reasons:
            raise ValueError("a regenerate decision needs at least one reason")
        return self

    @property
    def regenerate(self) -> bool:
        return self.action is RefreshAction.REGENERATE
