from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from sustain5g.analysis import (
    check_feasibility,
    connectivity_loss_probability,
    evaluate_sustainability,
    message_overhead,
    signaling_overhead,
)
from sustain5g.errors import DomainError, InfeasibleConfigError
from sustain5g.models.network_models import (
    NetworkConfig,
    OptimizationConstraints,
    OverheadInterpretation,
    SustainabilityReport,
    Violation,
)


class AnalysisResult(BaseModel):
    network: NetworkConfig
    sustainability: SustainabilityReport
    connectivity_loss: float
    signaling_overhead: Dict[str, Optional[float]] = Field(default_factory=dict)
    message_overhead: Optional[float] = None
    overhead_note: str = ""
    violations: List[Violation] = Field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return not self.violations


def analyze(
    cfg: NetworkConfig,
    constraints: Optional[OptimizationConstraints] = None,
    observed_updates: Optional[int] = None,
) -> AnalysisResult:
    """Sustainability, both overhead readings, M_O and the feasibility verdict.

    A configuration that breaks an analytic side condition raises
    :class:`InfeasibleConfigError` naming every violated clause.
    """
    clauses = cfg.side_condition_violations()
    if clauses:
        clauses += [v.clause for v in check_feasibility(cfg) if v.clause not in clauses]
        raise InfeasibleConfigError("; ".join(clauses))

    overheads: Dict[str, Optional[float]] = {}
    note = ""
    m_o: Optional[float] = None
    try:
        for interpretation in OverheadInterpretation:
            overheads[interpretation.value] = signaling_overhead(cfg, interpretation)
        m_o = message_overhead(cfg)
    except DomainError as exc:
        overheads = {interpretation.value: None for interpretation in OverheadInterpretation}
        note = str(exc)

    return AnalysisResult(
        network=cfg,
        sustainability=evaluate_sustainability(cfg),
        connectivity_loss=connectivity_loss_probability(cfg),
        signaling_overhead=overheads,
        message_overhead=m_o,
        overhead_note=note,
        violations=check_feasibility(cfg, constraints, observed_updates),
    )


def _fmt(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.10g}"


def print_analysis(result: AnalysisResult) -> None:
    cfg = result.network
    report = result.sustainability
    print("📡 Sustainability analysis")
    print("=" * 50)
    print(f"N={cfg.n_devices} E={cfg.n_entities} n⁻¹={cfg.reachable_hops_inv} Q={cfg.passes} "
          f"α={cfg.update_rate:g} β={cfg.arrival_rate:g} window=[{cfg.t1:g}, {cfg.t2:g}] s")
    print(f"P (connectivity loss):       {_fmt(result.connectivity_loss)}")
    print(f"S_N closed form:             {_fmt(report.closed_form)}")
    print(f"S_N quadrature:              {_fmt(report.quadrature)}")
    print(f"S_N relative gap:            {report.relative_gap:.3e}")
    print(f"S_N asymptotic (α/β):        {_fmt(report.asymptotic)}")
    for name, value in result.signaling_overhead.items():
        label = f"O_S ({name} form):"
        print(f"{label:<29}{_fmt(value)}")
    active = cfg.overhead_interpretation.value
    label = f"M_O ({active} form):"
    print(f"{label:<29}{_fmt(result.message_overhead)}")
    if result.overhead_note:
        print(f"⚠️ Overhead: {result.overhead_note}")
    if result.feasible:
        print("✅ Feasible: all constraint clauses hold")
    else:
        print("❌ Infeasible:")
        for violation in result.violations:
            print(f"   - {violation.clause} ({violation.detail})")
