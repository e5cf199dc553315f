# -----------------------------------------------------------------------------
# Name:        shocks.py
# Purpose:     Policies applied to the whole model at the start of each quarter
#
# Created:     07/02/2026
# -----------------------------------------------------------------------------

from dataclasses import dataclass, field

from .. import _consts
from ..utils.status_exception import ModelValidationError


class Shock():
    """
    Base shock: apply(model) runs once per quarter, before any agent acts.
    """

    name = 'shock'

    def apply(self, model):
        raise NotImplementedError

    def __call__(self, model):
        return self.apply(model)


class NoShock(Shock):

    name = 'no_shock'

    def apply(self, model):
        return None


@dataclass
class ConsumptionShock(Shock):
    """
    Raises the propensity to consume by `multiplier` from quarter 1 and restores
    the original value at quarter `final_time`.
    """

    multiplier: float
    final_time: int
    _psi0: float = field(default=None, init=False, repr=False)

    name = _consts._SHOCKS.CONSUMPTION

    def __post_init__(self):
        if not self.multiplier > 0:
            raise ModelValidationError(f'ConsumptionShock multiplier must be positive, got {self.multiplier}')
        if int(self.final_time) < 2:
            raise ModelValidationError(f'ConsumptionShock final_time must be at least 2, got {self.final_time}')
        self.final_time = int(self.final_time)

    def apply(self, model):
        t = model.agg.t
        if t == 1:
            self._psi0 = model.prop.psi
            model.prop.psi = self._psi0 * self.multiplier
        elif t == self.final_time:
            model.prop.psi = self._psi0 if self._psi0 is not None else model.prop.psi / self.multiplier


_SHOCK_TYPES = {
    _consts._SHOCKS.CONSUMPTION: ConsumptionShock,
}


def make_shock(kind, *args, **kwargs):
    """
    make_shock - built-in shock by name, e.g. make_shock('consumption', 1.02, 4)
    """
    if kind not in _SHOCK_TYPES:
        raise ModelValidationError(f'Unknown shock type "{kind}". Valid types are: {", ".join(_SHOCK_TYPES)}')
    return _SHOCK_TYPES[kind](*args, **kwargs)
