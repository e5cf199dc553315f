from .schemas import ParameterSet, InitialConditions, validate_inputs
from .agents import (
    ActiveWorkers, InactiveWorkers, Firms, Bank, CentralBank, FixedRateCentralBank,
    Government, RestOfWorld, Aggregates, Properties,
)
from .model import Model, inspect, seed_model, set_deterministic
from .initialisation import (
    init_model,
    init_properties,
    init_firms,
    init_workers,
    init_bank,
    init_central_bank,
    init_government,
    init_rotw,
    init_aggregates,
    update_variables_with_totals,
    check_consistency,
)
