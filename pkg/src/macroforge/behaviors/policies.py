# -----------------------------------------------------------------------------
# Name:        policies.py
# Purpose:     Default phase functions: monetary policy, bank, firms, government
#
# Created:     05/02/2026
# -----------------------------------------------------------------------------

import math
import functools

import numpy as np

from .. import _consts
from ..model.agents import CentralBank, FixedRateCentralBank
from ..utils.status_exception import ModelValidationError


_POINTS = _consts._BEHAVIOR_POINTS


def taylor_rule(rho, r_prev, r_star, pi_star, gamma_pi, gamma_y, pi_t, gap_t):
    """
    Smoothed Taylor rule with a zero lower bound:

        max(0, rho * r_prev + (1 - rho) * (r_star + pi_star + gamma_pi * (pi_t - pi_star) + gamma_y * gap_t))
    """
    args = dict(rho=rho, r_prev=r_prev, r_star=r_star, pi_star=pi_star,
                gamma_pi=gamma_pi, gamma_y=gamma_y, pi_t=pi_t, gap_t=gap_t)
    bad = [name for name, value in args.items() if not math.isfinite(value)]
    if bad:
        raise ModelValidationError(f'taylor_rule: non-finite input(s) {", ".join(bad)}')
    if not 0.0 <= rho <= 1.0:
        raise ModelValidationError(f'taylor_rule: rho must be in [0, 1], got {rho}')
    if gamma_pi < 0 or gamma_y < 0:
        raise ModelValidationError('taylor_rule: gamma coefficients must be nonnegative')

    target = r_star + pi_star + gamma_pi * (pi_t - pi_star) + gamma_y * gap_t
    return max(0.0, rho * r_prev + (1.0 - rho) * target)


@functools.singledispatch
def central_bank_rule(cb, model):
    """Rate set by a central bank of this type (extend with central_bank_rule.register)."""
    raise TypeError(f'No rate rule for central bank type {type(cb).__name__}')


@central_bank_rule.register
def _(cb: CentralBank, model):
    prop, agg = model.prop, model.agg
    return taylor_rule(
        prop.rho, cb.rate, prop.r_star, prop.pi_star, prop.gamma_pi, prop.gamma_y,
        agg.inflation_rate, agg.expected_growth - prop.g_star,
    )


@central_bank_rule.register
def _(cb: FixedRateCentralBank, model):
    return cb.fixed_rate


def central_bank_rate(cb, model):
    """
    central_bank_rate - registry override first, then the rule of the central bank's type
    """
    override = model.behaviors.get(_POINTS.CENTRAL_BANK_RATE)
    if override is not None:
        return float(override(model))
    return float(central_bank_rule(cb, model))


def bank_profits(bank, model):
    """
    bank_profits - interest income minus interest expense for the quarter
    """
    override = model.behaviors.get(_POINTS.BANK_PROFITS)
    if override is not None:
        return float(override(model))
    rate = model.cb.rate
    return (rate + model.prop.mu) * bank.L - rate * bank.D


def firms_plan(firms, model):
    """
    firms_plan - desired output, labor demand and prices for the quarter.

    Desired output replaces expected sales net of inventories; prices follow
    expected inflation plus a bounded response to last quarter's excess demand.
    """
    override = model.behaviors.get(_POINTS.FIRMS_PLAN)
    if override is not None:
        Y_d, N_d, P = override(model)
        return np.asarray(Y_d, dtype=float), np.asarray(N_d, dtype=np.int64), np.asarray(P, dtype=float)

    agg, prop = model.agg, model.prop
    Y_d = np.maximum(0.0, (1.0 + agg.expected_growth) * firms.sales_i - firms.S_i)
    N_d = np.maximum(0.0, np.ceil(Y_d / firms.alpha_i - _consts._TOLERANCES.LABOR_DEMAND)).astype(np.int64)
    excess = np.clip((firms.sales_i - firms.Y_i) / np.maximum(firms.Y_i, 1.0), -0.25, 0.25)
    P = firms.P_i * (1.0 + agg.expected_inflation) * (1.0 + prop.eta * excess)
    return Y_d, N_d, P


def government_step(gov, model):
    """
    government_step - (consumption, transfers, tax_revenue, deficit) of the quarter.
    Needs agg.wage_income and agg.profit_income for the quarter.
    """
    override = model.behaviors.get(_POINTS.GOVERNMENT_STEP)
    if override is not None:
        consumption, transfers, tax_revenue, deficit = override(model)
        return float(consumption), float(transfers), float(tax_revenue), float(deficit)

    tax_revenue = model.prop.tau_INC * (model.agg.wage_income + model.agg.profit_income)
    recipients = int((~model.w_act.employed).sum()) + len(model.w_inact)
    transfers = gov.benefit * recipients
    consumption = gov.consumption
    deficit = consumption + transfers - tax_revenue
    return consumption, transfers, tax_revenue, deficit


def index_to_expected_inflation(model):
    """
    Wages and per-capita benefits follow expected inflation; public and foreign
    demand budgets follow expected nominal growth.
    """
    agg = model.agg
    inflation = 1.0 + agg.expected_inflation
    model.firms.W_i = model.firms.W_i * inflation
    model.gov.benefit *= inflation
    nominal_growth = (1.0 + agg.expected_growth) * inflation
    model.gov.consumption_budget *= nominal_growth
    model.rotw.export_budget *= nominal_growth
