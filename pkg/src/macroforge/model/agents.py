# -----------------------------------------------------------------------------
# Name:        agents.py
# Purpose:     Columnar agent groups, aggregate state and run properties
#
# Created:     04/02/2026
# -----------------------------------------------------------------------------

from dataclasses import dataclass, field, fields
from typing import Any, Dict, List

import numpy as np

from ..utils.status_exception import ModelValidationError


class _Columnar:
    """
    Mixin for agent groups stored as one numpy array per attribute.
    """

    def __len__(self):
        first = fields(self)[0].name
        return len(getattr(self, first))

    def columns(self):
        return [f.name for f in fields(self)]


@dataclass
class ActiveWorkers(_Columnar):
    Y_h: np.ndarray
    D_h: np.ndarray
    employer_id: np.ndarray
    sector_id: np.ndarray
    wage: np.ndarray
    employed: np.ndarray
    consumption_budget: np.ndarray

    def validate(self):
        if np.any(self.employed != (self.employer_id >= 0)):
            raise ModelValidationError('w_act: employed flag and employer_id disagree')
        if np.any(self.wage[self.employed] <= 0):
            raise ModelValidationError('w_act: employed households must earn a positive wage')
        if np.any(self.D_h < 0):
            raise ModelValidationError('w_act: negative household deposits')


@dataclass
class InactiveWorkers(_Columnar):
    Y_h: np.ndarray
    D_h: np.ndarray
    consumption_budget: np.ndarray

    def validate(self):
        if np.any(self.D_h < 0):
            raise ModelValidationError('w_inact: negative household deposits')


@dataclass
class Firms(_Columnar):
    sector_id: np.ndarray
    alpha_i: np.ndarray
    N_i: np.ndarray
    N_d_i: np.ndarray
    Y_i: np.ndarray
    Y_d_i: np.ndarray
    S_i: np.ndarray
    P_i: np.ndarray
    W_i: np.ndarray
    D_i: np.ndarray
    L_i: np.ndarray
    Pi_i: np.ndarray
    sales_i: np.ndarray

    def validate(self):
        for name, ok in (('S_i', self.S_i >= 0), ('P_i', self.P_i > 0), ('N_i', self.N_i >= 0), ('L_i', self.L_i >= 0)):
            if not np.all(ok):
                raise ModelValidationError(f'firms: {name} out of range for {int(np.sum(~ok))} firm(s)')

    def sector_slices(self, S):
        """
        Firms are stored sorted by sector: slice of the firm arrays for each sector.
        """
        bounds = np.searchsorted(self.sector_id, np.arange(S + 1), side='left')
        return [slice(int(bounds[s]), int(bounds[s + 1])) for s in range(S)]


@dataclass
class Bank:
    E_k: float
    L: float
    D: float
    Pi_k: float = 0.0
    # loans booked this quarter to cover negative firm deposits
    overdrafts: float = 0.0

    @property
    def reserves(self):
        return self.D + self.E_k - self.L

    @property
    def negative_equity(self):
        return self.E_k < 0


@dataclass
class CentralBank:
    rate: float


@dataclass
class FixedRateCentralBank(CentralBank):
    """Central bank that ignores the Taylor rule and always sets `fixed_rate`."""
    fixed_rate: float = 0.0


@dataclass
class Government:
    debt: float
    deficit: float = 0.0
    consumption: float = 0.0
    transfers: float = 0.0
    tax_revenue: float = 0.0
    consumption_budget: float = 0.0
    benefit: float = 0.0
    product_taxes: float = 0.0


@dataclass
class RestOfWorld:
    exports: float
    imports: float
    net_position: float = 0.0
    export_budget: float = 0.0


@dataclass
class Properties:
    T: int
    S: int
    scale: int
    tau_INC: float
    tau_VAT: float
    mu: float
    psi: float
    rho: float
    pi_star: float
    r_star: float
    gamma_pi: float
    gamma_y: float
    theta_dividend: float
    chi: float
    eta: float
    g_star: float
    lambda_: float
    loan_repayment: float
    alpha: np.ndarray
    import_share: float
    intermediate_share: float
    investment_share: float
    consumption_shares: np.ndarray
    investment_shares: np.ndarray
    government_shares: np.ndarray
    export_shares: np.ndarray
    intermediate_shares: np.ndarray
    extra: Dict[str, Any] = field(default_factory=dict)


@dataclass
class Aggregates:
    t: int
    nominal_gdp: float
    real_gdp: float
    gdp_deflator: float
    inflation_rate: float
    expected_inflation: float
    expected_growth: float
    employment_rate: float
    sector_output: np.ndarray
    nominal_household_consumption: float
    real_household_consumption: float
    nominal_government_consumption: float
    real_government_consumption: float
    nominal_capitalformation: float
    real_capitalformation: float
    nominal_exports: float
    real_exports: float
    nominal_imports: float
    real_imports: float
    nominal_intermediate: float
    production_gdp: float
    P_base: np.ndarray
    growth_history: List[float] = field(default_factory=list)
    inflation_history: List[float] = field(default_factory=list)
    wage_income: float = 0.0
    profit_income: float = 0.0

    @property
    def expenditure_gdp(self):
        return (self.nominal_household_consumption + self.nominal_capitalformation
                + self.nominal_government_consumption + self.nominal_exports - self.nominal_imports)
