# -----------------------------------------------------------------------------
# Name:        tracker.py
# Purpose:     Per-quarter collection of tracked variables
#
# Created:     07/02/2026
# -----------------------------------------------------------------------------

import numpy as np
import pandas as pd

from .. import _consts
from ..model.model import inspect
from ..utils.status_exception import InspectionError, RegistrationError


def unemployment_rate(model):
    return 1.0 - model.agg.employment_rate


def nominal_wages(model):
    """Mean wage of employed workers, per worker at 1:1 scale."""
    w = model.w_act
    if not w.employed.any():
        return 0.0
    return float(w.wage[w.employed].mean()) / model.prop.scale


_DEFAULT_EXTRACTORS = {
    'nominal_gdp': 'agg.nominal_gdp',
    'real_gdp': 'agg.real_gdp',
    'real_household_consumption': 'agg.real_household_consumption',
    'nominal_household_consumption': 'agg.nominal_household_consumption',
    'real_government_consumption': 'agg.real_government_consumption',
    'nominal_government_consumption': 'agg.nominal_government_consumption',
    'real_capitalformation': 'agg.real_capitalformation',
    'nominal_capitalformation': 'agg.nominal_capitalformation',
    'real_exports': 'agg.real_exports',
    'nominal_exports': 'agg.nominal_exports',
    'real_imports': 'agg.real_imports',
    'nominal_imports': 'agg.nominal_imports',
    'gdp_deflator': 'agg.gdp_deflator',
    'inflation_rate': 'agg.inflation_rate',
    'expected_inflation': 'agg.expected_inflation',
    'expected_growth': 'agg.expected_growth',
    'employment_rate': 'agg.employment_rate',
    'unemployment_rate': unemployment_rate,
    'nominal_wages': nominal_wages,
    'policy_rate': 'cb.rate',
    'bank_profits': 'bank.Pi_k',
    'bank_equity': 'bank.E_k',
    'total_loans': 'bank.L',
    'government_debt': 'gov.debt',
    'government_deficit': 'gov.deficit',
}


def _extract(model, extractor):
    value = extractor(model) if callable(extractor) else inspect(model, extractor)
    if np.ndim(value) != 0:
        raise InspectionError(f'Tracked value {extractor!r} is not a scalar')
    return float(value)


class DataTracker():
    """
    Ordered (name, extractor) pairs. An extractor is a dotted model path or a
    callable taking the model; both must return a scalar.
    """

    def __init__(self, entries=None):
        self._entries = {}
        source = entries if entries is not None else [(name, _DEFAULT_EXTRACTORS[name]) for name in _consts._DEFAULT_TRACKED_VARIABLES]
        for name, extractor in source:
            self.add(name, extractor)

    @property
    def names(self):
        return list(self._entries)

    def add(self, name, extractor, model=None):
        """
        add - track one more variable; checked against `model` right away when given
        """
        if name in self._entries:
            raise RegistrationError(f'Tracked variable "{name}" already exists')
        if not (callable(extractor) or isinstance(extractor, str)):
            raise RegistrationError(f'Extractor for "{name}" must be a dotted path or a callable')
        if model is not None:
            _extract(model, extractor)
        self._entries[name] = extractor
        return self

    def validate(self, model):
        for extractor in self._entries.values():
            _extract(model, extractor)

    def collect(self, model):
        return {name: _extract(model, extractor) for name, extractor in self._entries.items()}

    def __len__(self):
        return len(self._entries)


class SimulationData():
    """
    Time series of tracked variables, one value per completed quarter.
    Series are available as attributes (data.real_gdp) or items (data['real_gdp']).
    """

    def __init__(self, names=None, series=None):
        if series is not None:
            self._series = {name: [float(v) for v in values] for name, values in series.items()}
        else:
            self._series = {name: [] for name in (names or [])}
        lengths = {len(values) for values in self._series.values()}
        if len(lengths) > 1:
            raise ValueError('All series of a SimulationData must have the same length')
        self.reports = []

    def append(self, values):
        if set(values) != set(self._series):
            raise ValueError('Appended values do not match the tracked variables')
        for name, value in values.items():
            self._series[name].append(float(value))

    @property
    def names(self):
        return list(self._series)

    def keys(self):
        return self._series.keys()

    def __getitem__(self, name):
        return np.asarray(self._series[name])

    def __getattr__(self, name):
        if name.startswith('_'):
            raise AttributeError(name)
        series = self.__dict__.get('_series', {})
        if name in series:
            return np.asarray(series[name])
        raise AttributeError(f'No tracked variable "{name}"')

    def __contains__(self, name):
        return name in self._series

    def __len__(self):
        lengths = [len(values) for values in self._series.values()]
        return lengths[0] if lengths else 0

    def __eq__(self, other):
        if not isinstance(other, SimulationData):
            return NotImplemented
        return self._series == other._series

    def to_dataframe(self):
        df = pd.DataFrame(self._series)
        df.insert(0, 'quarter', np.arange(1, len(self) + 1, dtype=np.int64))
        return df
