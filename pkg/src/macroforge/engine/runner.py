# -----------------------------------------------------------------------------
# Name:        runner.py
# Purpose:     Single runs and Monte Carlo ensembles
#
# Created:     07/02/2026
# -----------------------------------------------------------------------------

import os
import copy
import pickle
import traceback
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .. import _consts
from ..cli.module_log import Logger
from ..model.model import seed_model
from ..utils.filesystem import now, total_seconds_from
from ..utils.status_exception import StatusException, ModelValidationError, StateError, EnsembleRunError
from .shocks import NoShock
from .step import step
from .tracker import DataTracker, SimulationData


def default_workers():
    """
    default_workers - MACROFORGE_WORKERS when set, otherwise the CPU count
    """
    value = os.environ.get(_consts._ENV_WORKERS)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            Logger.warning(f'Ignoring {_consts._ENV_WORKERS}={value!r}: not an integer')
    return os.cpu_count() or 1


def run(model, shock=None, tracker=None, parallel_sectors=False, strict=True):
    """
    run - step the model until agg.t > prop.T, collecting the tracked variables
    after every quarter. The model is left in its final state.
    StepReports are kept in data.reports.
    """
    shock = NoShock() if shock is None else shock
    tracker = DataTracker() if tracker is None else tracker
    tracker.validate(model)

    data = SimulationData(tracker.names)
    t0 = now()
    while model.agg.t <= model.prop.T:
        report = step(model, shock=shock, parallel_sectors=parallel_sectors, strict=strict)
        data.reports.append(report)
        data.append(tracker.collect(model))
    Logger.debug(f'Run {model.run_index}: {len(data)} quarters in {total_seconds_from(t0):.2f}s')
    return data


def _run_member(model, master_seed, run_index, shock, tracker, parallel_sectors, strict):
    """
    One ensemble member on its own copy of the model. Failures come back as
    (None, status, message) so they cross process boundaries intact.
    """
    try:
        member = copy.deepcopy(model)
        seed_model(member, master_seed, run_index)
        data = run(member, copy.deepcopy(shock), tracker, parallel_sectors=parallel_sectors, strict=strict)
        return data, None, None
    except StatusException as e:
        return None, e.status, str(e)
    except Exception as e:
        return None, StatusException.ERROR, f'{e}\n{traceback.format_exc()}'


def _picklable(*objects):
    try:
        pickle.dumps(objects)
        return True
    except Exception as e:
        Logger.warning(f'Ensemble falls back to sequential execution: {type(e).__name__}: {e}')
        return False


def ensemblerun(model, n_runs, master_seed=_consts._DEFAULT_MASTER_SEED, shock=None, tracker=None,
                parallel=True, workers=None, parallel_sectors=False, strict=True):
    """
    ensemblerun - n_runs independent runs of copies of `model`.

    Run i (1-based) draws from the stream keyed (master_seed, i), so the
    result does not depend on `parallel` or `workers`. The given model is
    not modified. Results are ordered by run index.
    """
    if int(n_runs) < 1:
        raise ModelValidationError(f'n_runs must be at least 1, got {n_runs}')
    if model.agg.t != 1:
        raise StateError(f'Ensembles start from a fresh model (quarter 1), got quarter {model.agg.t}')
    n_runs = int(n_runs)
    shock = NoShock() if shock is None else shock
    tracker = DataTracker() if tracker is None else tracker
    tracker.validate(model)
    workers = default_workers() if workers is None else max(1, int(workers))

    indices = list(range(1, n_runs + 1))
    t0 = now()

    if parallel and workers > 1 and n_runs > 1 and _picklable(model, shock, tracker):
        Logger.debug(f'Ensemble of {n_runs} runs on {workers} processes')
        with ProcessPoolExecutor(max_workers=min(workers, n_runs)) as executor:
            outputs = list(executor.map(
                _run_member,
                *zip(*[(model, master_seed, i, shock, tracker, parallel_sectors, strict) for i in indices])
            ))
    else:
        Logger.debug(f'Ensemble of {n_runs} runs, sequential')
        outputs = [_run_member(model, master_seed, i, shock, tracker, parallel_sectors, strict) for i in indices]

    results = []
    for i, (data, status, message) in zip(indices, outputs):
        if data is None:
            raise EnsembleRunError(i, StatusException(status, message))
        results.append(data)
    Logger.debug(f'Ensemble done in {total_seconds_from(t0):.2f}s')
    return results


def ensemble_mean_and_sem(data_vector, name):
    """
    ensemble_mean_and_sem - per-quarter mean and standard error of the mean of one variable
    """
    values = np.vstack([np.asarray(data[name], dtype=float) for data in data_vector])
    mean = values.mean(axis=0)
    if values.shape[0] < 2:
        return mean, np.zeros_like(mean)
    sem = values.std(axis=0, ddof=1) / np.sqrt(values.shape[0])
    return mean, sem
