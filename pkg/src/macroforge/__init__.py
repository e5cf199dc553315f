from dotenv import load_dotenv
load_dotenv()

from .model import (
    Model, ParameterSet, InitialConditions, init_model, inspect, seed_model, set_deterministic,
    update_variables_with_totals, FixedRateCentralBank,
)
from .behaviors import register_behavior, unregister_behavior, taylor_rule, central_bank_rate
from .sampling import DynamicWeightedSampler, sampler_new
from .expectations import ar1_fit, ar1_forecast
from .engine import (
    step, run, ensemblerun, ensemble_mean_and_sem, DataTracker, SimulationData,
    Shock, NoShock, ConsumptionShock, make_shock,
)
from .io import load_config, save_config, serialize_config, export_data, load_data, plot_data, plot_data_vector

from .main import run_simulation, run_ensemble, run_shock, run_validate, run_bench
