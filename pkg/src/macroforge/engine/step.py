# -----------------------------------------------------------------------------
# Name:        step.py
# Purpose:     One quarter of the economy as an ordered sequence of phases
#
# Created:     07/02/2026
# -----------------------------------------------------------------------------

import math
from dataclasses import dataclass

import numpy as np

from .. import _consts
from ..cli.module_log import Logger
from ..utils.filesystem import now, total_seconds_from
from ..utils.status_exception import InternalConsistencyFault, StateError
from ..expectations import ar1_fit, ar1_forecast
from ..behaviors.policies import (
    central_bank_rate, bank_profits, firms_plan, government_step, index_to_expected_inflation,
)
from ..markets.credit import credit_market
from ..markets.labor import labor_market
from ..markets.goods import goods_market
from ..markets.outcomes import BuyerLayout
from ..model.initialisation import update_variables_with_totals


_TOL = _consts._TOLERANCES


@dataclass
class StepReport:
    """Relative residuals of the accounting checks for one quarter."""
    quarter: int
    identity_residual: float
    money_residual: float
    market_residual: float

    @property
    def identity_ok(self):
        return self.identity_residual <= _TOL.NATIONAL_INCOME

    @property
    def money_ok(self):
        return self.money_residual <= _TOL.MONEY

    @property
    def market_ok(self):
        return self.market_residual <= _TOL.MARKET

    @property
    def ok(self):
        return self.identity_ok and self.money_ok and self.market_ok


def _money_stocks(model):
    return (
        float(model.w_act.D_h.sum() + model.w_inact.D_h.sum()),
        float(model.firms.D_i.sum()),
        float(model.firms.L_i.sum()),
        float(model.bank.E_k),
    )


def _cover_overdrafts(model):
    """
    Negative firm deposits are turned into loans. The amount is booked in
    bank.overdrafts; lending past the lambda * E_k cap is logged.
    """
    firms, bank = model.firms, model.bank
    overdraft = np.maximum(0.0, -firms.D_i)
    if not overdraft.any():
        return 0.0
    firms.L_i = firms.L_i + overdraft
    firms.D_i = firms.D_i + overdraft
    amount = float(overdraft.sum())
    bank.overdrafts += amount
    loans, cap = float(firms.L_i.sum()), model.prop.lambda_ * bank.E_k
    if loans > cap:
        Logger.warning(
            f'Quarter {model.agg.t}: overdraft loans of {amount:.6g} take lending to {loans:.6g}, '
            f'above the leverage cap {cap:.6g}'
        )
    return amount


def _settle_bank_result(firms, gap):
    """
    Reconcile booked interest with the bank's reported profit. A positive gap
    (profit below net interest) is a loss on loans: loans are written down pro
    rata, and what exceeds them is paid to firm deposits. A negative gap is a
    charge on firm deposits, pro rata to loans. Returns the gain of each firm.
    """
    n = len(firms)
    gain = np.zeros(n)
    if gap == 0.0 or n == 0:
        return gain
    loans = firms.L_i.copy()
    total = float(loans.sum())
    share = loans / total if total > 0 else np.full(n, 1.0 / n)
    if gap > 0:
        writedown = np.minimum(loans, gap * share)
        firms.L_i = loans - writedown
        rest = gap - float(writedown.sum())
        payment = rest * share if rest > 0 else np.zeros(n)
        firms.D_i = firms.D_i + payment
        gain = writedown + payment
    else:
        firms.D_i = firms.D_i + gap * share
        gain = gap * share
    return gain

def update_expectations(model, rng):
    """
    AR(1) forecasts of real growth and inflation; noise N(0, sigma) outside deterministic mode.
    """
    agg = model.agg
    est_g = ar1_fit(agg.growth_history)
    est_pi = ar1_fit(agg.inflation_history)
    expected_growth = ar1_forecast(est_g, agg.growth_history[-1])
    expected_inflation = ar1_forecast(est_pi, agg.inflation_history[-1])
    if not model.deterministic:
        expected_growth += rng.normal(0.0, est_g.sigma)
        expected_inflation += rng.normal(0.0, est_pi.sigma)
    agg.expected_growth = float(expected_growth)
    agg.expected_inflation = float(expected_inflation)


def accounting(model, outcome):
    """
    Settle the quarter: purchases and product taxes, wages, interest and the
    bank result, dividends, income taxes and transfers, loan repayment and the
    external position. Returns the flows.
    """
    firms, w_act, w_inact, bank, gov, prop = model.firms, model.w_act, model.w_inact, model.bank, model.gov, model.prop
    layout = BuyerLayout(len(w_act), len(w_inact), len(firms))
    spent, imports = outcome.buyer_spent, outcome.buyer_imports
    n_f = len(firms)
    bank.overdrafts = 0.0

    # DOC: -- Goods settlement -------------------------------------------------
    basic_act = spent[layout.active] + imports[layout.active]
    basic_inact = spent[layout.inactive] + imports[layout.inactive]
    spend_act = basic_act * (1.0 + prop.tau_VAT)
    spend_inact = basic_inact * (1.0 + prop.tau_VAT)
    product_taxes = float(spend_act.sum() + spend_inact.sum()) - float(basic_act.sum() + basic_inact.sum())
    intermediate = spent[layout.intermediate] + imports[layout.intermediate]
    investment = spent[layout.investment] + imports[layout.investment]
    government = float(spent[layout.government])
    exports = float(spent[layout.rotw])
    total_imports = float(imports.sum())

    w_act.D_h = w_act.D_h - spend_act
    w_inact.D_h = w_inact.D_h - spend_inact
    firms.D_i = firms.D_i + outcome.seller_revenue - intermediate - investment
    firms.sales_i = outcome.seller_sold.copy()

    # DOC: -- Wages ------------------------------------------------------------
    wage_h = np.where(w_act.employed, w_act.wage, 0.0)
    wage_bill = np.bincount(w_act.employer_id[w_act.employed], weights=wage_h[w_act.employed], minlength=n_f)
    firms.D_i = firms.D_i - wage_bill
    w_act.D_h = w_act.D_h + wage_h
    _cover_overdrafts(model)

    # DOC: -- Interest and bank result -----------------------------------------
    update_variables_with_totals(model)
    rate = model.cb.rate
    loan_interest = (rate + prop.mu) * firms.L_i
    deposit_interest_f = rate * firms.D_i
    deposit_interest_a = rate * w_act.D_h
    deposit_interest_i = rate * w_inact.D_h
    net_interest = float(loan_interest.sum()) - float(deposit_interest_f.sum() + deposit_interest_a.sum() + deposit_interest_i.sum())
    bank.Pi_k = bank_profits(bank, model)
    firms.D_i = firms.D_i + deposit_interest_f - loan_interest
    w_act.D_h = w_act.D_h + deposit_interest_a
    w_inact.D_h = w_inact.D_h + deposit_interest_i
    bank_gain = _settle_bank_result(firms, net_interest - bank.Pi_k)
    _cover_overdrafts(model)

    # DOC: -- Profits and dividends --------------------------------------------
    firms.Pi_i = outcome.seller_revenue - wage_bill - intermediate - loan_interest + deposit_interest_f + bank_gain
    dividends_f = prop.theta_dividend * np.maximum(0.0, firms.Pi_i)
    dividends_k = prop.theta_dividend * max(0.0, bank.Pi_k)
    firms.D_i = firms.D_i - dividends_f
    bank.E_k += bank.Pi_k - dividends_k
    if bank.negative_equity:
        Logger.warning(f'Quarter {model.agg.t}: bank equity is negative ({bank.E_k:.6g})')
    dividends = float(dividends_f.sum()) + dividends_k

    income_weights = np.concatenate([w_act.Y_h, w_inact.Y_h]).clip(min=0.0)
    if income_weights.sum() <= 0:
        income_weights = np.ones(income_weights.size)
    dividend_h = dividends * income_weights / income_weights.sum() if income_weights.size else income_weights
    dividend_a, dividend_i = dividend_h[:len(w_act)], dividend_h[len(w_act):]
    w_act.D_h = w_act.D_h + dividend_a
    w_inact.D_h = w_inact.D_h + dividend_i
    _cover_overdrafts(model)

    # DOC: -- Government -------------------------------------------------------
    gov.consumption = government
    model.agg.wage_income = float(wage_h.sum())
    model.agg.profit_income = dividends
    consumption, transfers, tax_revenue, deficit = government_step(gov, model)

    gross_a = wage_h + dividend_a
    gross_i = dividend_i
    gross = float(gross_a.sum() + gross_i.sum())
    tax_a = tax_revenue * gross_a / gross if gross > 0 else np.zeros(len(w_act))
    tax_i = tax_revenue * gross_i / gross if gross > 0 else np.zeros(len(w_inact))
    recipient_a = ~w_act.employed
    n_recipients = int(recipient_a.sum()) + len(w_inact)
    per_capita = transfers / n_recipients if n_recipients else 0.0
    transfer_a = np.where(recipient_a, per_capita, 0.0)
    w_act.D_h = w_act.D_h + transfer_a - tax_a
    w_inact.D_h = w_inact.D_h + per_capita - tax_i

    # product taxes were collected at purchase
    deficit -= product_taxes
    gov.consumption, gov.transfers, gov.tax_revenue, gov.deficit = consumption, transfers, tax_revenue, deficit
    gov.product_taxes = product_taxes
    gov.debt += deficit

    w_act.Y_h = wage_h + dividend_a + deposit_interest_a + transfer_a - tax_a
    w_inact.Y_h = dividend_i + deposit_interest_i + per_capita - tax_i

    # DOC: -- Loan repayment and external position -----------------------------
    repayment = np.minimum(np.maximum(firms.D_i, 0.0), prop.loan_repayment * firms.L_i)
    firms.D_i = firms.D_i - repayment
    firms.L_i = firms.L_i - repayment

    model.rotw.exports = exports
    model.rotw.imports = total_imports
    model.rotw.net_position += exports - total_imports

    update_variables_with_totals(model)

    return dict(
        household_consumption=float(spend_act.sum() + spend_inact.sum()),
        product_taxes=product_taxes,
        intermediate=float(intermediate.sum()),
        investment=float(investment.sum()),
        government=government,
        exports=exports,
        imports=total_imports,
        wages=float(wage_bill.sum()),
        loan_interest=float(loan_interest.sum()),
        bank_result_gap=float(net_interest - bank.Pi_k),
        overdrafts=bank.overdrafts,
        dividends=dividends,
        tax_revenue=tax_revenue,
        transfers=transfers,
        deficit=deficit,
    )


def aggregates(model, flows):
    """
    National accounts of the quarter from the expenditure side and the production
    side. Household consumption is at purchasers' prices, so value added is
    completed by the product taxes.
    Returns the relative gap between the two measures.
    """
    agg, firms = model.agg, model.firms
    P, Y = firms.P_i, firms.Y_i
    gross_output = float(np.dot(P, Y))
    inventory_investment = float(np.dot(P, Y - firms.sales_i))

    consumption = flows['household_consumption']
    capital_formation = flows['investment'] + inventory_investment
    nominal_gdp = consumption + capital_formation + flows['government'] + flows['exports'] - flows['imports']
    production_gdp = gross_output - flows['intermediate'] + flows['product_taxes']

    base = float(np.dot(agg.P_base, Y))
    deflator_prev, real_prev = agg.gdp_deflator, agg.real_gdp
    deflator = gross_output / base if base > 0 and gross_output > 0 else deflator_prev

    agg.nominal_gdp = nominal_gdp
    agg.production_gdp = production_gdp
    agg.gdp_deflator = deflator
    agg.inflation_rate = deflator / deflator_prev - 1.0
    agg.nominal_household_consumption = consumption
    agg.nominal_government_consumption = flows['government']
    agg.nominal_capitalformation = capital_formation
    agg.nominal_exports = flows['exports']
    agg.nominal_imports = flows['imports']
    agg.nominal_intermediate = flows['intermediate']
    agg.real_gdp = nominal_gdp / deflator
    agg.real_household_consumption = consumption / deflator
    agg.real_government_consumption = flows['government'] / deflator
    agg.real_capitalformation = capital_formation / deflator
    agg.real_exports = flows['exports'] / deflator
    agg.real_imports = flows['imports'] / deflator
    agg.sector_output = np.bincount(firms.sector_id, weights=Y, minlength=model.prop.S)

    growth = math.log(agg.real_gdp / real_prev) if agg.real_gdp > 0 and real_prev > 0 else 0.0
    agg.growth_history.append(growth)
    agg.inflation_history.append(math.log(deflator / deflator_prev))

    n_act = len(model.w_act)
    agg.employment_rate = float(model.w_act.employed.sum()) / n_act if n_act else 0.0

    return abs(nominal_gdp - production_gdp) / max(abs(nominal_gdp), abs(production_gdp), 1e-300)


def step(model, rng=None, shock=None, parallel_sectors=False, strict=True):
    """
    step - advance the model by one quarter and return its StepReport.

    Phases, in order: shock, expectations, policy rate, firm plans (and
    indexation), credit, labor, production, goods, accounting, aggregates.

    Args:
        rng: stream for expectation noise and labor matching (default model.rng)
        shock: Shock or callable applied before anything else
        parallel_sectors: run goods-market sectors on threads (bool or thread count)
        strict: raise InternalConsistencyFault when a check fails
    """
    agg = model.agg
    if agg.t > model.prop.T:
        raise StateError(f'Model already reached its horizon T={model.prop.T}')
    rng = model.rng if rng is None else rng
    quarter = agg.t
    t0 = now()

    # DOC: -- (1) Shock --------------------------------------------------------
    if shock is not None:
        getattr(shock, 'apply', shock)(model)
    stocks_before = _money_stocks(model)

    # DOC: -- (2) Expectations, (3) policy rate ---------------------------------
    update_expectations(model, rng)
    model.cb.rate = central_bank_rate(model.cb, model)

    # DOC: -- (4) Plans --------------------------------------------------------
    Y_d, N_d, P = firms_plan(model.firms, model)
    model.firms.Y_d_i, model.firms.N_d_i, model.firms.P_i = Y_d, N_d, P
    index_to_expected_inflation(model)

    # DOC: -- (5) Credit, (6) labor, (7) production -----------------------------
    credit = credit_market(model)
    labor_market(model, rng)
    model.firms.Y_i = model.firms.alpha_i * model.firms.N_i
    model.firms.S_i = model.firms.S_i + model.firms.Y_i
    stock_before_market = float(model.firms.S_i.sum())

    # DOC: -- (8) Goods --------------------------------------------------------
    outcome = goods_market(model, parallel_sectors=parallel_sectors)
    units_sold = float(outcome.seller_sold.sum())
    units_gap = abs(units_sold - (stock_before_market - outcome.unsold_inventory)) / max(units_sold, stock_before_market, 1e-300)
    market_residual = max(outcome.conservation_residual(), units_gap)

    # DOC: -- (9) Accounting, (10) aggregates ----------------------------------
    flows = accounting(model, outcome)
    identity_residual = aggregates(model, flows)

    stocks_after = _money_stocks(model)
    delta = (stocks_after[0] - stocks_before[0]) + (stocks_after[1] - stocks_before[1]) \
        - (stocks_after[2] - stocks_before[2]) + (stocks_after[3] - stocks_before[3])
    expected = flows['deficit'] + flows['exports'] - flows['imports']
    gross = sum(abs(flows[key]) for key in flows) + float(credit.granted.sum())
    money_residual = abs(delta - expected) / max(gross, 1e-300)

    report = StepReport(quarter, identity_residual, money_residual, market_residual)
    agg.t += 1
    Logger.debug(
        f'Quarter {quarter} done in {total_seconds_from(t0):.3f}s: nominal GDP {agg.nominal_gdp:.6g}, '
        f'residuals identity {identity_residual:.1e} money {money_residual:.1e} market {market_residual:.1e}'
    )

    if strict:
        for name, residual, tol in (
            ('national income identity', identity_residual, _TOL.NATIONAL_INCOME),
            ('money conservation', money_residual, _TOL.MONEY),
            ('market conservation', market_residual, _TOL.MARKET),
        ):
            if not residual <= tol:
                raise InternalConsistencyFault(name, quarter, residual, tol)
    return report
