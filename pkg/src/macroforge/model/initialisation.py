# -----------------------------------------------------------------------------
# Name:        initialisation.py
# Purpose:     Build a model that reproduces the calibrated base quarter
#
# Created:     04/02/2026
# -----------------------------------------------------------------------------

import numpy as np

from .. import _consts
from ..cli.module_log import Logger
from ..expectations import ar1_fit, ar1_forecast
from ..utils.status_exception import ModelValidationError, ConsistencyError
from .schemas import validate_inputs, parameters_dict
from .agents import (
    ActiveWorkers, InactiveWorkers, Firms, Bank, CentralBank,
    Government, RestOfWorld, Aggregates, Properties,
)
from .model import Model, seed_model


_SECTOR_KEYS = [
    'firm_counts', 'sector_output', 'prices', 'wages', 'inventories',
    'consumption_shares', 'investment_shares', 'government_shares', 'export_shares', 'intermediate_shares',
]
_SHARE_KEYS = [key for key in _SECTOR_KEYS if key.endswith('_shares')]


def _relative_gap(value, target):
    return abs(value - target) / max(abs(target), 1e-300)


def _scaled_count(count, scale):
    """Half-up rounding of count / scale, at least 1 for a nonzero count."""
    if count == 0:
        return 0
    return max(1, (2 * int(count) + scale) // (2 * scale))


def _product_taxes(consumption, tau_VAT):
    """Tax content of consumption measured at purchasers' prices."""
    return consumption * tau_VAT / (1.0 + tau_VAT)


def _largest_remainder(total, weights):
    weights = np.asarray(weights, dtype=float)
    if total <= 0 or weights.size == 0:
        return np.zeros(weights.size, dtype=np.int64)
    if weights.sum() <= 0:
        weights = np.ones(weights.size)
    quotas = total * weights / weights.sum()
    counts = np.floor(quotas).astype(np.int64)
    missing = int(total - counts.sum())
    if missing > 0:
        order = np.argsort(-(quotas - counts), kind='stable')
        counts[order[:missing]] += 1
    return counts


def check_consistency(params, ic):
    """
    check_consistency - counts, lengths and national-accounts sums of (params, ic)
    """
    S = params.S
    bad_lengths = [key for key in _SECTOR_KEYS if len(getattr(ic, key)) != S]
    if len(params.alpha) != S:
        bad_lengths.insert(0, 'alpha')
    if bad_lengths:
        raise ModelValidationError(f'Per-sector arrays must have length S={S}: {", ".join(bad_lengths)}')

    negative = [key for key in ('n_active', 'n_inactive') if getattr(ic, key) < 0]
    if any(c < 0 for c in ic.firm_counts):
        negative.insert(0, 'firm_counts')
    if negative:
        raise ModelValidationError(f'Negative counts in initial conditions: {", ".join(negative)}')
    if any(p <= 0 for p in ic.prices):
        raise ModelValidationError('Initial prices must be positive')
    if any(a <= 0 for a in params.alpha):
        raise ModelValidationError('Labor productivity alpha must be positive in every sector')

    tol = _consts._TOLERANCES.IC_CONSISTENCY
    components = ic.consumption + ic.investment + ic.government + ic.exports - ic.imports
    if _relative_gap(components, ic.nominal_gdp) > tol:
        raise ConsistencyError(
            f'nominal_gdp {ic.nominal_gdp!r} differs from consumption + investment + government + exports - imports = {components!r}'
        )
    value_added = float(np.dot(ic.prices, ic.sector_output)) - ic.intermediate_consumption
    product_taxes = _product_taxes(ic.consumption, params.tau_VAT)
    if _relative_gap(value_added + product_taxes, ic.nominal_gdp) > tol:
        raise ConsistencyError(
            f'nominal_gdp {ic.nominal_gdp!r} differs from gross output minus intermediate consumption '
            f'plus product taxes = {value_added + product_taxes!r}'
        )
    for key in _SHARE_KEYS:
        if abs(sum(getattr(ic, key)) - 1.0) > 1e-9 or any(v < 0 for v in getattr(ic, key)):
            raise ConsistencyError(f'{key} must be nonnegative and sum to 1')
    for s, (n, y) in enumerate(zip(ic.firm_counts, ic.sector_output)):
        if y > 0 and n == 0:
            raise ConsistencyError(f'Sector {s} has output {y!r} but no firms')


# REGION: [ Component initialisers ] =================================================================================

def init_properties(params, ic, T):
    if int(T) < 1:
        raise ModelValidationError(f'Simulation length T must be at least 1, got {T}')
    gross_output_value = float(np.dot(ic.prices, ic.sector_output))
    # imports are bought at basic prices
    demand_base = ic.consumption - _product_taxes(ic.consumption, params.tau_VAT) + ic.investment + ic.intermediate_consumption
    known = set(type(params).model_fields)
    extra = {k: v for k, v in parameters_dict(params).items() if k not in known and k != 'lambda'}
    return Properties(
        T=int(T),
        S=params.S,
        scale=params.scale,
        tau_INC=params.tau_INC,
        tau_VAT=params.tau_VAT,
        mu=params.mu,
        psi=params.psi,
        rho=params.rho,
        pi_star=params.pi_star,
        r_star=params.r_star,
        gamma_pi=params.gamma_pi,
        gamma_y=params.gamma_y,
        theta_dividend=params.theta_dividend,
        chi=params.chi,
        eta=params.eta,
        g_star=params.g_star,
        lambda_=params.lambda_,
        loan_repayment=params.loan_repayment,
        alpha=np.asarray(params.alpha, dtype=float),
        import_share=ic.imports / demand_base if demand_base > 0 else 0.0,
        intermediate_share=ic.intermediate_consumption / gross_output_value if gross_output_value > 0 else 0.0,
        investment_share=ic.investment / gross_output_value if gross_output_value > 0 else 0.0,
        consumption_shares=np.asarray(ic.consumption_shares, dtype=float),
        investment_shares=np.asarray(ic.investment_shares, dtype=float),
        government_shares=np.asarray(ic.government_shares, dtype=float),
        export_shares=np.asarray(ic.export_shares, dtype=float),
        intermediate_shares=np.asarray(ic.intermediate_shares, dtype=float),
        extra=extra,
    )


def init_firms(params, ic):
    """
    Firm sizes in a sector decrease as 1/sqrt(rank) and add up to the sector output.
    """
    S, scale = params.S, params.scale
    counts = np.array([_scaled_count(c, scale) for c in ic.firm_counts], dtype=np.int64)
    n = int(counts.sum())
    sector_id = np.repeat(np.arange(S), counts)

    Y = np.zeros(n)
    S_i = np.zeros(n)
    start = 0
    for s in range(S):
        n_s = int(counts[s])
        if n_s == 0:
            continue
        target = float(ic.sector_output[s])
        raw = 1.0 / np.sqrt(np.arange(1, n_s + 1))
        y = target * raw / raw.sum()
        y[0] += target - y.sum()
        Y[start:start + n_s] = y
        share = y / target if target > 0 else np.full(n_s, 1.0 / n_s)
        S_i[start:start + n_s] = float(ic.inventories[s]) * share
        start += n_s

    total_output = Y.sum()
    weights = Y / total_output if total_output > 0 else np.full(n, 1.0 / max(n, 1))

    return Firms(
        sector_id=sector_id,
        alpha_i=np.asarray(params.alpha, dtype=float)[sector_id] * scale,
        N_i=np.zeros(n, dtype=np.int64),
        N_d_i=np.zeros(n, dtype=np.int64),
        Y_i=Y,
        Y_d_i=Y.copy(),
        S_i=S_i,
        P_i=np.asarray(ic.prices, dtype=float)[sector_id],
        W_i=np.asarray(ic.wages, dtype=float)[sector_id] * scale,
        D_i=ic.deposits_firms * weights,
        L_i=ic.loans * weights,
        Pi_i=np.zeros(n),
        sales_i=Y.copy(),
    )


def init_workers(params, ic, firms):
    """
    Households, with employees spread over firms in proportion to output over
    sector productivity. Sets firms.N_i and calibrates firms.alpha_i = Y_i / N_i.
    """
    scale = params.scale
    n_act = _scaled_count(ic.n_active, scale)
    n_inact = _scaled_count(ic.n_inactive, scale)
    n_emp = min(n_act, int(np.floor(n_act * (1.0 - ic.unemployment_rate) + 0.5)))
    n_f = len(firms)

    need = firms.Y_i / np.asarray(params.alpha, dtype=float)[firms.sector_id]
    if n_f == 0:
        n_emp = 0
        N_i = np.zeros(0, dtype=np.int64)
    elif n_emp >= n_f:
        N_i = 1 + _largest_remainder(n_emp - n_f, need)
    else:
        N_i = _largest_remainder(n_emp, need)

    firms.N_i = N_i.astype(np.int64)
    firms.N_d_i = firms.N_i.copy()
    with np.errstate(divide='ignore', invalid='ignore'):
        firms.alpha_i = np.where(firms.N_i > 0, firms.Y_i / np.maximum(firms.N_i, 1), firms.alpha_i)

    employer = np.full(n_act, -1, dtype=np.int64)
    employer[:n_emp] = np.repeat(np.arange(n_f), firms.N_i)
    employed = employer >= 0
    safe = np.where(employed, employer, 0)

    Y_act, Y_inact = ic.Y_h[0] * scale, ic.Y_h[1] * scale
    income = n_act * Y_act + n_inact * Y_inact
    D_act = ic.deposits_households * Y_act / income if income > 0 else 0.0
    D_inact = ic.deposits_households * Y_inact / income if income > 0 else 0.0

    w_act = ActiveWorkers(
        Y_h=np.full(n_act, Y_act),
        D_h=np.full(n_act, D_act),
        employer_id=employer,
        sector_id=np.where(employed, firms.sector_id[safe] if n_f else -1, -1),
        wage=np.where(employed, firms.W_i[safe] if n_f else 0.0, 0.0),
        employed=employed,
        consumption_budget=np.zeros(n_act),
    )
    w_inact = InactiveWorkers(
        Y_h=np.full(n_inact, Y_inact),
        D_h=np.full(n_inact, D_inact),
        consumption_budget=np.zeros(n_inact),
    )
    return w_act, w_inact


def init_bank(params, ic, firms, w_act, w_inact):
    return Bank(
        E_k=float(ic.bank_equity),
        L=float(firms.L_i.sum()),
        D=float(w_act.D_h.sum() + w_inact.D_h.sum() + firms.D_i.sum()),
    )


def init_central_bank(params, ic):
    return CentralBank(rate=float(ic.policy_rate))


def init_government(params, ic):
    return Government(
        debt=float(ic.government_debt),
        consumption=float(ic.government),
        consumption_budget=float(ic.government),
        benefit=float(ic.transfer_per_capita) * params.scale,
        product_taxes=_product_taxes(float(ic.consumption), params.tau_VAT),
    )


def init_rotw(params, ic):
    return RestOfWorld(
        exports=float(ic.exports),
        imports=float(ic.imports),
        net_position=float(ic.rotw_net_position),
        export_budget=float(ic.exports),
    )


def init_aggregates(params, ic, firms, w_act):
    growth = [float(v) for v in ic.history_growth]
    inflation = [float(v) for v in ic.history_inflation]
    n_act = len(w_act)
    return Aggregates(
        t=1,
        nominal_gdp=float(ic.nominal_gdp),
        real_gdp=float(ic.nominal_gdp),
        gdp_deflator=1.0,
        inflation_rate=inflation[-1],
        expected_inflation=ar1_forecast(ar1_fit(inflation), inflation[-1]),
        expected_growth=ar1_forecast(ar1_fit(growth), growth[-1]),
        employment_rate=float(w_act.employed.sum()) / n_act if n_act else 0.0,
        sector_output=np.asarray(ic.sector_output, dtype=float).copy(),
        nominal_household_consumption=float(ic.consumption),
        real_household_consumption=float(ic.consumption),
        nominal_government_consumption=float(ic.government),
        real_government_consumption=float(ic.government),
        nominal_capitalformation=float(ic.investment),
        real_capitalformation=float(ic.investment),
        nominal_exports=float(ic.exports),
        real_exports=float(ic.exports),
        nominal_imports=float(ic.imports),
        real_imports=float(ic.imports),
        nominal_intermediate=float(ic.intermediate_consumption),
        production_gdp=float(ic.nominal_gdp),
        P_base=firms.P_i.copy(),
        growth_history=growth,
        inflation_history=inflation,
    )


def update_variables_with_totals(model):
    """
    update_variables_with_totals - re-derive bank stocks and employment from agent balances
    """
    model.bank.L = float(model.firms.L_i.sum())
    model.bank.D = float(model.w_act.D_h.sum() + model.w_inact.D_h.sum() + model.firms.D_i.sum())
    n_act = len(model.w_act)
    model.agg.employment_rate = float(model.w_act.employed.sum()) / n_act if n_act else 0.0
    return model

# ENDREGION


def init_model(params, ic, T, seed=None):
    """
    init_model - model at quarter 1 reproducing the ic aggregates exactly

    Args:
        params: ParameterSet or mapping
        ic: InitialConditions or mapping
        T: horizon in quarters
        seed: master seed of the run stream (run 1)
    """
    params, ic = validate_inputs(params, ic)
    check_consistency(params, ic)

    prop = init_properties(params, ic, T)
    firms = init_firms(params, ic)
    w_act, w_inact = init_workers(params, ic, firms)

    model = Model(
        w_act=w_act,
        w_inact=w_inact,
        firms=firms,
        bank=init_bank(params, ic, firms, w_act, w_inact),
        cb=init_central_bank(params, ic),
        gov=init_government(params, ic),
        rotw=init_rotw(params, ic),
        agg=init_aggregates(params, ic, firms, w_act),
        prop=prop,
    )
    seed_model(model, _consts._DEFAULT_MASTER_SEED if seed is None else seed, 1)

    Logger.debug(
        f'Model initialised at scale 1:{params.scale}: {len(firms)} firms, '
        f'{len(w_act)} active and {len(w_inact)} inactive households, T={prop.T}'
    )
    return model
