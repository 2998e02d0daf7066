from .key_models import (
    KEY_SIZE,
    KeyMaterial,
    PolicyWeights,
    RefreshAction,
    RefreshDecision,
    SessionEvent,
    SessionMode,
    SessionPhase,
    SessionState,
    VehicleContext,
)
from .network_models import (
    REFERENCE_BETAS,
    DensityProfile,
    FailSafeCriterion,
    FailSafeReport,
    NetworkConfig,
    OptimizationConstraints,
    OverheadInterpretation,
    QuadratureResult,
    RealInterval,
    SustainabilityReport,
    Violation,
    scenario_label,
)
from .run_models import PolicySection, RunConfig, RunManifest, SweepSpec
from .sim_models import (
    ComparisonReport,
    ComparisonRow,
    ComparisonStatus,
    PoissonHistogram,
    ProbabilityEstimate,
    SimConfig,
    SimStats,
    TraceBucket,
)

__all__ = [
    "KEY_SIZE",
    "KeyMaterial",
    "PolicyWeights",
    "RefreshAction",
    "RefreshDecision",
    "SessionEvent",
    "SessionMode",
    "SessionPhase",
    "SessionState",
    "VehicleContext",
    "REFERENCE_BETAS",
    "DensityProfile",
    "FailSafeCriterion",
    "FailSafeReport",
    "NetworkConfig",
    "OptimizationConstraints",
    "OverheadInterpretation",
    "QuadratureResult",
    "RealInterval",
    "SustainabilityReport",
    "Violation",
    "scenario_label",
    "PolicySection",
    "RunConfig",
    "RunManifest",
    "SweepSpec",
    "ComparisonReport",
    "ComparisonRow",
    "ComparisonStatus",
    "PoissonHistogram",
    "ProbabilityEstimate",
    "SimConfig",
    "SimStats",
    "TraceBucket",
]
