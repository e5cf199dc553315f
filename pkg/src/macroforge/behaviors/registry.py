# -----------------------------------------------------------------------------
# Name:        registry.py
# Purpose:     Named overrides of single phases of the step pipeline
#
# Created:     05/02/2026
# -----------------------------------------------------------------------------

from .. import _consts
from ..cli.module_log import Logger
from ..utils.status_exception import RegistrationError


class BehaviorRegistry():
    """
    Map from behavior point to an override callable.

    Overrides receive the model (and the sector index for
    'goods_market_weights') and return what the default phase returns.
    Points without an override keep the default behavior.
    """

    points = tuple(_consts._BEHAVIOR_POINTS_LIST)

    def __init__(self):
        self._overrides = {}

    def _check_point(self, point):
        if point not in self.points:
            raise RegistrationError(f'Unknown behavior point "{point}". Valid points are: {", ".join(self.points)}')

    def register(self, point, f):
        self._check_point(point)
        if not callable(f):
            raise RegistrationError(f'Override for "{point}" is not callable')
        self._overrides[point] = f
        Logger.debug(f'Behavior "{point}" overridden by {getattr(f, "__name__", repr(f))}')

    def unregister(self, point):
        self._check_point(point)
        self._overrides.pop(point, None)

    def get(self, point):
        return self._overrides.get(point)

    def __contains__(self, point):
        return point in self._overrides

    def __len__(self):
        return len(self._overrides)

    def registered(self):
        return list(self._overrides)


def register_behavior(registry, point, f):
    """
    register_behavior - install `f` at `point`; unknown points fail here, not during a run.
    """
    registry.register(point, f)


def unregister_behavior(registry, point):
    """
    unregister_behavior - restore the default behavior at `point`
    """
    registry.unregister(point)
