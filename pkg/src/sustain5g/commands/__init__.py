from .analyze import AnalysisResult, analyze, print_analysis
from .failsafe import FailSafeResult, print_failsafe, scan_csv, scan_failsafe
from .output import OutputDirectory, csv_text, format_number, load_run_config, model_json
from .simulate import TRACE_COLUMNS, SimulationResult, print_simulation, simulate, traces_csv
from .sweep import SWEEP_COLUMNS, SweepRow, run_sweep, sweep_configs, sweep_csv, sweep_row
from .validate import SUITES, CheckResult, print_validation, run_validation

__all__ = [
    "AnalysisResult",
    "analyze",
    "print_analysis",
    "FailSafeResult",
    "print_failsafe",
    "scan_csv",
    "scan_failsafe",
    "OutputDirectory",
    "csv_text",
    "format_number",
    "load_run_config",
    "model_json",
    "SimulationResult",
    "print_simulation",
    "simulate",
    "traces_csv",
    "SWEEP_COLUMNS",
    "TRACE_COLUMNS",
    "SweepRow",
    "run_sweep",
    "sweep_configs",
    "sweep_csv",
    "sweep_row",
    "SUITES",
    "CheckResult",
    "print_validation",
    "run_validation",
]
