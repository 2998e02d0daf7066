"""Parameter sweep over (β, Q, E) with one CSV row per combination."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from pydantic import BaseModel

from sustain5g.analysis import (
    check_feasibility,
    message_overhead,
    signaling_overhead,
    sustainability_asymptotic,
    sustainability_closed_form,
    sustainability_quadrature,
)
from sustain5g.config import get_settings
from sustain5g.errors import DomainError
from sustain5g.models.network_models import NetworkConfig, scenario_label
from sustain5g.models.run_models import SweepSpec

from .output import csv_text, format_number

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "scenario",
    "beta",
    "alpha",
    "passes",
    "n_entities",
    "feasible",
    "violation",
    "s_n_closed_form",
    "s_n_quadrature",
    "s_n_asymptotic",
    "signaling_overhead",
    "message_overhead",
    "overhead_note",
]


class SweepRow(BaseModel):
    scenario: str
    beta: float
    alpha: float
    passes: int
    n_entities: int
    feasible: bool
    violation: str = ""
    s_n_closed_form: Optional[float] = None
    s_n_quadrature: Optional[float] = None
    s_n_asymptotic: Optional[float] = None
    signaling_overhead: Optional[float] = None
    message_overhead: Optional[float] = None
    overhead_note: str = ""

    def cells(self) -> List[str]:
        return [
            self.scenario,
            format_number(self.beta),
            format_number(self.alpha),
            str(self.passes),
            str(self.n_entities),
            "true" if self.feasible else "false",
            self.violation,
            format_number(self.s_n_closed_form),
            format_number(self.s_n_quadrature),
            format_number(self.s_n_asymptotic),
            format_number(self.signaling_overhead),
            format_number(self.message_overhead),
            self.overhead_note,
        ]


def sweep_configs(base: NetworkConfig, spec: SweepSpec) -> List[NetworkConfig]:
    """Every (β, Q, E) combination in lexicographic axis order."""
    configs = []
    order = sorted(range(len(spec.betas)), key=lambda i: spec.betas[i])
    for index in order:
        for passes in sorted(spec.passes):
            for entities in sorted(spec.entities):
                configs.append(
                    base.model_copy(
                        update=dict(
                            arrival_rate=spec.betas[index],
                            update_rate=spec.alpha_for(index),
                            passes=passes,
                            n_entities=entities,
                        )
                    )
                )
    return configs


def sweep_row(cfg: NetworkConfig) -> SweepRow:
    """Evaluate one combination; infeasible ones keep their clause and no numbers."""
    row = SweepRow(
        scenario=scenario_label(cfg.arrival_rate),
        beta=cfg.arrival_rate,
        alpha=cfg.update_rate,
        passes=cfg.passes,
        n_entities=cfg.n_entities,
        feasible=False,
    )
    clauses = cfg.side_condition_violations()
    clauses += [v.clause for v in check_feasibility(cfg) if v.clause not in clauses]
    if clauses:
        row.violation = "; ".join(clauses)
        return row

    row.feasible = True
    row.s_n_closed_form = sustainability_closed_form(cfg)
    row.s_n_quadrature = sustainability_quadrature(cfg)
    row.s_n_asymptotic = sustainability_asymptotic(cfg)
    try:
        row.signaling_overhead = signaling_overhead(cfg)
        row.message_overhead = message_overhead(cfg)
    except DomainError as exc:
        row.overhead_note = str(exc)
    return row


def run_sweep(base: NetworkConfig, spec: SweepSpec) -> List[SweepRow]:
    configs = sweep_configs(base, spec)
    threads = get_settings().threads
    logger.info("sweeping %d combinations on %d thread(s)", len(configs), threads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(sweep_row, configs))
    return [sweep_row(cfg) for cfg in configs]


def sweep_csv(rows: List[SweepRow]) -> str:
    return csv_text(SWEEP_COLUMNS, (row.cells() for row in rows))
