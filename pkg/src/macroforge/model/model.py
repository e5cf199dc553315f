# -----------------------------------------------------------------------------
# Name:        model.py
# Purpose:     The model container, dotted-path inspection and RNG installation
#
# Created:     04/02/2026
# -----------------------------------------------------------------------------

import copy
from dataclasses import dataclass, field, fields, is_dataclass

import numpy as np

from .. import _consts
from ..behaviors.registry import BehaviorRegistry
from ..sampling.streams import run_stream
from ..utils.status_exception import InspectionError, StateError
from .agents import (
    ActiveWorkers, InactiveWorkers, Firms, Bank, CentralBank,
    Government, RestOfWorld, Aggregates, Properties,
)


@dataclass
class Model:
    """
    Seven agent groups plus the run properties (prop) and the aggregate state (agg).
    Exactly one step runs on a model at a time.
    """
    w_act: ActiveWorkers
    w_inact: InactiveWorkers
    firms: Firms
    bank: Bank
    cb: CentralBank
    gov: Government
    rotw: RestOfWorld
    agg: Aggregates
    prop: Properties
    behaviors: BehaviorRegistry = field(default_factory=BehaviorRegistry)
    rng: np.random.Generator = None
    master_seed: int = _consts._DEFAULT_MASTER_SEED
    run_index: int = 1
    deterministic: bool = False

    @property
    def n_agents(self):
        return len(self.w_act) + len(self.w_inact) + len(self.firms) + 4

    def inspect(self, path):
        return inspect(self, path)

    def copy(self):
        return copy.deepcopy(self)


def _readable(value, part):
    """Data fields, properties and mapping keys are readable; methods are not."""
    if not part or part.startswith('_'):
        return False
    if isinstance(value, dict):
        return part in value
    if is_dataclass(value) and part in {f.name for f in fields(value)}:
        return True
    return isinstance(getattr(type(value), part, None), property)


def inspect(model, path):
    """
    inspect - read `path` ("cb.rate", "firms.P_i", "prop.extra.knob", ...) without
    touching the model. Only data fields, properties and mapping keys can be
    named. Arrays come back as copies.
    """
    parts = str(path).split('.') if path else []
    if not parts or parts[0] not in _consts._TOP_LEVEL_NAMES:
        raise InspectionError(
            f'Unknown path "{path}". Valid top-level names are: {", ".join(_consts._TOP_LEVEL_NAMES)}'
        )

    value = model
    walked = []
    for part in parts:
        if not _readable(value, part):
            raise InspectionError(
                f'Unknown attribute "{part}" under "{".".join(walked) or "model"}" in path "{path}". '
                f'Valid top-level names are: {", ".join(_consts._TOP_LEVEL_NAMES)}'
            )
        value = value[part] if isinstance(value, dict) else getattr(value, part)
        walked.append(part)

    if isinstance(value, np.ndarray):
        return value.copy()
    if isinstance(value, (list, dict)):
        return copy.deepcopy(value)
    return value


def seed_model(model, master_seed, run=1):
    """
    seed_model - install the random stream of ensemble member `run`
    """
    model.master_seed = int(master_seed)
    model.run_index = int(run)
    model.rng = run_stream(master_seed, run)
    return model


def set_deterministic(model, on=True):
    """
    set_deterministic - switch noise-free mode; only allowed before the first step
    """
    if model.agg.t != 1:
        raise StateError(f'Deterministic mode can only be toggled before the first step (model is at quarter {model.agg.t})')
    model.deterministic = bool(on)
    return model
