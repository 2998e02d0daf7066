from .compare import compare_to_analytic
from .engine import AuthenticationSimulator, default_fs_window, run_sim
from .sampling import estimate_connectivity_loss, lane_generator, sample_poisson_counts

__all__ = [
    "compare_to_analytic",
    "AuthenticationSimulator",
    "default_fs_window",
    "run_sim",
    "estimate_connectivity_loss",
    "lane_generator",
    "sample_poisson_counts",
]
