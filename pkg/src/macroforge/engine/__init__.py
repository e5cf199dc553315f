from .shocks import Shock, NoShock, ConsumptionShock, make_shock
from .tracker import DataTracker, SimulationData
from .step import step, StepReport
from .runner import run, ensemblerun, ensemble_mean_and_sem, default_workers
from ..model.model import set_deterministic, seed_model
