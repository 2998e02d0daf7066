from .failsafe import criterion_value, failsafe_point, key_utilization_window
from .feasibility import check_feasibility, vehicles_in_periphery
from .overhead import (
    cumulative_message_overhead,
    message_overhead,
    overhead_prefactor,
    signaling_overhead,
)
from .probability import (
    connectivity_loss_probability,
    key_update_pmf,
    vehicle_count_density,
    vehicle_pmf,
)
from .sustainability import (
    evaluate_sustainability,
    instantaneous_sustainability,
    sustainability_asymptotic,
    sustainability_closed_form,
    sustainability_quadrature,
)

__all__ = [
    "criterion_value",
    "failsafe_point",
    "key_utilization_window",
    "check_feasibility",
    "vehicles_in_periphery",
    "cumulative_message_overhead",
    "message_overhead",
    "overhead_prefactor",
    "signaling_overhead",
    "connectivity_loss_probability",
    "key_update_pmf",
    "vehicle_count_density",
    "vehicle_pmf",
    "evaluate_sustainability",
    "instantaneous_sustainability",
    "sustainability_asymptotic",
    "sustainability_closed_form",
    "sustainability_quadrature",
]
