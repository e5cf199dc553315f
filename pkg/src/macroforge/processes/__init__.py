from .simulation_runner import _SimulationRunner
from .ensemble_runner import _EnsembleRunner
from .shock_runner import _ShockRunner, ratio_table
from .validator import _Validator, save_golden
from .benchmark import _Benchmark, BenchReport, summarize
