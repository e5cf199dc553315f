# -----------------------------------------------------------------------------
# Name:        goods.py
# Purpose:     Sector-parallel goods market driven by compiled dynamic weighted sampling
#
# Created:     06/02/2026
# -----------------------------------------------------------------------------

import os
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .. import _consts
from ..cli.module_log import Logger
from ..sampling.kernels import match_sector
from ..sampling.streams import sector_stream
from ..utils.status_exception import ModelValidationError
from .outcomes import MarketOutcome, BuyerLayout


def goods_market_weights(model, sector):
    """
    goods_market_weights - seller attractiveness in `sector`; default S_i / P_i
    """
    sl = model.firms.sector_slices(model.prop.S)[sector]
    override = model.behaviors.get(_consts._BEHAVIOR_POINTS.GOODS_MARKET_WEIGHTS)
    if override is not None:
        weights = np.asarray(override(model, sector), dtype=float)
        if weights.shape != (sl.stop - sl.start,):
            raise ModelValidationError(
                f'goods_market_weights override returned shape {weights.shape} for sector {sector} '
                f'with {sl.stop - sl.start} firms'
            )
        return weights
    return model.firms.S_i[sl] / model.firms.P_i[sl]


def buyer_budgets(model):
    """
    buyer_budgets - (domestic budget, imports) per buyer for the quarter.

    Households spend psi times expected nominal income plus chi of their
    deposits, never more than their deposits. That budget is at purchasers'
    prices and reaches the market net of the product tax tau_VAT. Firms buy
    intermediates and investment goods as fixed shares of the value of their
    output. A fixed
    share of household and firm demand goes to imports before domestic matching.
    """
    prop, agg = model.prop, model.agg
    firms = model.firms
    layout = BuyerLayout(len(model.w_act), len(model.w_inact), len(firms))
    nominal_growth = (1.0 + agg.expected_growth) * (1.0 + agg.expected_inflation)

    for households in (model.w_act, model.w_inact):
        households.consumption_budget = np.minimum(
            households.D_h,
            np.maximum(0.0, prop.psi * households.Y_h * nominal_growth + prop.chi * households.D_h),
        )

    total = np.empty(layout.size)
    basic = 1.0 + prop.tau_VAT
    total[layout.active] = model.w_act.consumption_budget / basic
    total[layout.inactive] = model.w_inact.consumption_budget / basic
    output_value = firms.P_i * firms.Y_i
    total[layout.intermediate] = prop.intermediate_share * output_value
    total[layout.investment] = prop.investment_share * output_value
    total[layout.government] = max(0.0, model.gov.consumption_budget)
    total[layout.rotw] = max(0.0, model.rotw.export_budget)

    imports = np.zeros(layout.size)
    imports[:layout.government] = prop.import_share * total[:layout.government]
    domestic = total - imports
    return domestic, imports, layout


def _sector_budgets(domestic, layout, prop, sector):
    out = np.empty(layout.size)
    out[layout.active] = domestic[layout.active] * prop.consumption_shares[sector]
    out[layout.inactive] = domestic[layout.inactive] * prop.consumption_shares[sector]
    out[layout.intermediate] = domestic[layout.intermediate] * prop.intermediate_shares[sector]
    out[layout.investment] = domestic[layout.investment] * prop.investment_shares[sector]
    out[layout.government] = domestic[layout.government] * prop.government_shares[sector]
    out[layout.rotw] = domestic[layout.rotw] * prop.export_shares[sector]
    return out


def trade_sector(prices, stock, weights, budgets, rng, deterministic=False):
    """
    trade_sector - match buyers to the sellers of one sector.

    Each buyer in turn draws a seller and buys min(budget / P, stock) until its
    budget is spent or the sector is sold out. After a purchase the seller's
    weight is rescaled by its remaining share of the initial stock. Buyers come
    in a random order drawn from `rng`, or in index order in deterministic mode,
    where `rng` may be None.

    Returns (buyer indices, amounts spent, units sold per seller, revenue per seller,
    remaining stock per seller, unspent budget).
    """
    budgets = np.asarray(budgets, dtype=float)
    if deterministic:
        order = np.flatnonzero(budgets > 0)
    else:
        order = rng.permutation(budgets.size)
        order = order[budgets[order] > 0]

    spent, sold, revenue, S, unspent = match_sector(order, budgets, prices, stock, weights, rng, deterministic)
    return order.astype(np.int64), spent, sold, revenue, S, unspent


def sector_workers(parallel_sectors, S):
    """
    sector_workers - thread count for a parallel_sectors setting (bool or int)
    """
    if parallel_sectors is True:
        return max(1, min(S, os.cpu_count() or 1))
    if not parallel_sectors:
        return 1
    return max(1, min(S, int(parallel_sectors)))


def goods_market(model, rng=None, parallel_sectors=False):
    """
    goods_market - run every sector's market, optionally on separate threads.

    Sector s draws from its own stream keyed by (master seed, run, quarter, s),
    or from the s-th child spawned from `rng` when one is given; results are
    merged in sector order, so the outcome does not depend on the thread count.
    """
    firms, prop = model.firms, model.prop
    S = prop.S
    domestic, imports, layout = buyer_budgets(model)
    slices = firms.sector_slices(S)
    weights = [goods_market_weights(model, s) for s in range(S)]
    quarter = model.agg.t

    if rng is None:
        streams = [sector_stream(model.master_seed, model.run_index, quarter, s) for s in range(S)]
    else:
        streams = rng.spawn(S)

    def _run_sector(s):
        sl = slices[s]
        return trade_sector(
            firms.P_i[sl], firms.S_i[sl], weights[s],
            _sector_budgets(domestic, layout, prop, s), streams[s], model.deterministic,
        )

    workers = sector_workers(parallel_sectors, S)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run_sector, range(S)))
    else:
        results = [_run_sector(s) for s in range(S)]

    # DOC: -- Fixed-order reduction --------------------------------------------
    buyer_spent = np.zeros(layout.size)
    seller_sold = np.zeros(len(firms))
    seller_revenue = np.zeros(len(firms))
    sector_quantity = np.zeros(S)
    sector_value = np.zeros(S)
    stock_after = firms.S_i.copy()
    unmet = 0.0
    for s, (buyers, spent, sold, revenue, stock, unspent) in enumerate(results):
        sl = slices[s]
        buyer_spent[buyers] += spent
        seller_sold[sl] = sold
        seller_revenue[sl] = revenue
        stock_after[sl] = stock
        sector_quantity[s] = math.fsum(sold.tolist())
        sector_value[s] = math.fsum(revenue.tolist())
        unmet += unspent
    firms.S_i = stock_after

    outcome = MarketOutcome(
        sector_quantity=sector_quantity,
        sector_value=sector_value,
        buyer_spent=buyer_spent,
        seller_sold=seller_sold,
        seller_revenue=seller_revenue,
        unmet_demand=unmet,
        unsold_inventory=float(stock_after.sum()),
        buyer_imports=imports,
    )
    Logger.debug(f'Goods market q{quarter}: value {outcome.total_revenue:.6g}, unmet {unmet:.6g} on {workers} thread(s)')
    return outcome
