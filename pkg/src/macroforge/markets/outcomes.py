# -----------------------------------------------------------------------------
# Name:        outcomes.py
# Purpose:     Results of the labor, credit and goods markets
#
# Created:     06/02/2026
# -----------------------------------------------------------------------------

from dataclasses import dataclass

import numpy as np


@dataclass
class MarketOutcome:
    """
    Goods market result. Buyers are laid out as: active households, inactive
    households, firms buying intermediates, firms investing, government, rest of world.
    """
    sector_quantity: np.ndarray
    sector_value: np.ndarray
    buyer_spent: np.ndarray
    seller_sold: np.ndarray
    seller_revenue: np.ndarray
    unmet_demand: float
    unsold_inventory: float
    buyer_imports: np.ndarray = None

    @property
    def total_spent(self):
        return float(self.buyer_spent.sum())

    @property
    def total_revenue(self):
        return float(self.seller_revenue.sum())

    def conservation_residual(self):
        spent, revenue = self.total_spent, self.total_revenue
        return abs(spent - revenue) / max(abs(spent), abs(revenue), 1e-300)


@dataclass
class LaborOutcome:
    vacancies: np.ndarray
    hired: np.ndarray
    fired: np.ndarray
    unfilled: int

    @property
    def n_hired(self):
        return int(self.hired.sum())

    @property
    def n_fired(self):
        return int(self.fired.sum())


@dataclass
class CreditOutcome:
    requested: np.ndarray
    granted: np.ndarray
    capacity: float

    @property
    def rationed(self):
        return float(self.requested.sum() - self.granted.sum())


class BuyerLayout():
    """
    Offsets of each buyer group inside MarketOutcome.buyer_spent.
    """

    def __init__(self, n_act, n_inact, n_firms):
        self.n_act = n_act
        self.n_inact = n_inact
        self.n_firms = n_firms
        self.active = slice(0, n_act)
        self.inactive = slice(n_act, n_act + n_inact)
        self.intermediate = slice(n_act + n_inact, n_act + n_inact + n_firms)
        self.investment = slice(n_act + n_inact + n_firms, n_act + n_inact + 2 * n_firms)
        self.government = n_act + n_inact + 2 * n_firms
        self.rotw = self.government + 1
        self.size = self.rotw + 1
