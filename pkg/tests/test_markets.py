import copy
from types import SimpleNamespace

import numpy as np
import pytest

from macroforge.behaviors import BehaviorRegistry, register_behavior
from macroforge.markets import labor_market, credit_market, goods_market, goods_market_weights, trade_sector
from macroforge.model import ActiveWorkers, Bank, Firms


def make_firms(n, sector_id=None, **columns):
    values = dict(
        sector_id=np.zeros(n, dtype=np.int64) if sector_id is None else np.asarray(sector_id, dtype=np.int64),
        alpha_i=np.ones(n), N_i=np.zeros(n, dtype=np.int64), N_d_i=np.zeros(n, dtype=np.int64),
        Y_i=np.zeros(n), Y_d_i=np.zeros(n), S_i=np.zeros(n), P_i=np.ones(n), W_i=np.ones(n),
        D_i=np.zeros(n), L_i=np.zeros(n), Pi_i=np.zeros(n), sales_i=np.zeros(n),
    )
    values.update({k: np.asarray(v, dtype=values[k].dtype) for k, v in columns.items()})
    return Firms(**values)


def make_workers(employer_id):
    employer_id = np.asarray(employer_id, dtype=np.int64)
    n = employer_id.size
    employed = employer_id >= 0
    return ActiveWorkers(
        Y_h=np.ones(n), D_h=np.ones(n), employer_id=employer_id, sector_id=np.where(employed, 0, -1),
        wage=np.where(employed, 1.0, 0.0), employed=employed, consumption_budget=np.zeros(n),
    )


def labor_model(firms, employer_id, deterministic=False, seed=0):
    return SimpleNamespace(
        firms=firms, w_act=make_workers(employer_id), deterministic=deterministic,
        rng=np.random.default_rng(seed), agg=SimpleNamespace(t=1),
    )


# -- labor market -----------------------------------------------------------------------

def test_labor_no_vacancies():
    firms = make_firms(2, N_d_i=[1, 1], N_i=[1, 1])
    model = labor_model(firms, [0, 1, -1, -1])
    outcome = labor_market(model)
    assert outcome.n_hired == 0 and outcome.n_fired == 0
    assert model.w_act.employed.sum() == 2


def test_labor_exhausts_vacancies():
    firms = make_firms(1, N_d_i=[10], W_i=[2.5])
    model = labor_model(firms, [-1] * 10)
    outcome = labor_market(model)
    assert outcome.n_hired == 10
    assert model.w_act.employed.all()
    assert np.all(model.w_act.wage == 2.5)
    assert firms.N_i.tolist() == [10]


@pytest.mark.parametrize('deterministic', [False, True])
def test_labor_caps_respected(deterministic):
    firms = make_firms(2, N_d_i=[2, 6])
    model = labor_model(firms, [-1] * 8, deterministic=deterministic, seed=3)
    outcome = labor_market(model)
    assert outcome.hired.tolist() == [2, 6]
    assert outcome.unfilled == 0
    model.w_act.validate()


def test_labor_more_workers_than_vacancies():
    firms = make_firms(2, N_d_i=[1, 2])
    model = labor_model(firms, [-1] * 5, seed=8)
    outcome = labor_market(model)
    assert outcome.n_hired == 3
    assert int(model.w_act.employed.sum()) == 3


def test_labor_deterministic_fires_highest_indices():
    firms = make_firms(1, N_d_i=[1], N_i=[3])
    model = labor_model(firms, [0, 0, 0], deterministic=True)
    outcome = labor_market(model)
    assert outcome.fired.tolist() == [2]
    assert model.w_act.employed.tolist() == [True, False, False]
    assert model.w_act.employer_id.tolist() == [0, -1, -1]


def test_labor_stochastic_fires_exactly_the_excess():
    firms = make_firms(2, N_d_i=[1, 2], N_i=[4, 2])
    model = labor_model(firms, [0, 0, 0, 0, 1, 1], seed=11)
    labor_market(model)
    assert firms.N_i.tolist() == [1, 2]
    assert model.w_act.employer_id[4:].tolist() == [1, 1]


# -- credit market ------------------------------------------------------------------------

def credit_model(wages, demand, deposits, equity=1e9, lam=10.0, loans=None):
    n = len(wages)
    firms = make_firms(n, W_i=wages, N_d_i=demand, D_i=deposits, L_i=loans if loans is not None else np.zeros(n))
    return SimpleNamespace(
        firms=firms, bank=Bank(E_k=equity, L=float(firms.L_i.sum()), D=0.0),
        prop=SimpleNamespace(lambda_=lam), agg=SimpleNamespace(t=1),
    )


def test_credit_self_financed():
    model = credit_model([1.0, 2.0], [10, 10], [10.0, 50.0])
    outcome = credit_market(model)
    assert outcome.granted.sum() == 0.0
    assert model.firms.L_i.tolist() == [0.0, 0.0]


def test_credit_full_grant():
    model = credit_model([1.0], [100], [0.0])
    credit_market(model)
    assert model.firms.L_i.tolist() == [100.0]
    assert model.firms.D_i.tolist() == [100.0]
    assert model.bank.L == 100.0


def test_credit_proportional_rationing():
    model = credit_model([1.0, 1.0], [100, 300], [0.0, 0.0], equity=20.0, lam=10.0)
    outcome = credit_market(model)
    assert outcome.granted.tolist() == [50.0, 150.0]
    assert outcome.rationed == 200.0


def test_credit_no_room_under_cap():
    model = credit_model([1.0], [100], [0.0], equity=10.0, lam=10.0, loans=[150.0])
    outcome = credit_market(model)
    assert outcome.capacity == 0.0
    assert outcome.granted.tolist() == [0.0]


# -- goods market ----------------------------------------------------------------------------

def test_trade_single_seller_exhausted():
    buyers, spent, sold, revenue, stock, unspent = trade_sector([1.0], [10.0], [10.0], [12.0], np.random.default_rng(0))
    assert sold.tolist() == [10.0]
    assert spent.tolist() == [10.0]
    assert unspent == 2.0
    assert stock.tolist() == [0.0]


@pytest.mark.parametrize('seed', range(5))
def test_trade_totals_independent_of_draw_order(seed):
    _, spent, sold, revenue, stock, unspent = trade_sector(
        [1.0, 1.0], [10.0, 5.0], [10.0, 5.0], [12.0], np.random.default_rng(seed))
    assert sold.sum() == 12.0
    assert stock.sum() == 3.0
    assert spent.sum() == revenue.sum() == 12.0
    assert unspent == 0.0


def test_trade_zero_budgets():
    _, spent, sold, revenue, stock, unspent = trade_sector(
        [1.0, 2.0], [4.0, 4.0], [4.0, 2.0], [0.0, 0.0, 0.0], np.random.default_rng(0))
    assert spent.size == 0
    assert sold.tolist() == [0.0, 0.0]
    assert stock.tolist() == [4.0, 4.0]
    assert unspent == 0.0


def test_trade_deterministic_picks_heaviest_seller_first():
    _, spent, sold, _, stock, _ = trade_sector(
        [1.0, 1.0, 1.0], [2.0, 6.0, 6.0], [2.0, 6.0, 6.0], [4.0], None, deterministic=True)
    assert sold.tolist() == [0.0, 4.0, 0.0]


def test_trade_budget_and_stock_feasibility():
    rng = np.random.default_rng(21)
    prices = rng.uniform(0.5, 2.0, size=6)
    stock0 = rng.uniform(0.0, 5.0, size=6)
    budgets = rng.uniform(0.0, 4.0, size=9)
    buyers, spent, sold, revenue, stock, unspent = trade_sector(prices, stock0, stock0 / prices, budgets, rng)
    assert np.all(spent <= budgets[buyers] * (1 + 1e-12))
    assert np.all(sold <= stock0 * (1 + 1e-12))
    assert np.all(stock >= 0)
    assert np.allclose(stock0 - sold, stock, rtol=0, atol=1e-12)
    assert spent.sum() == pytest.approx(revenue.sum(), rel=1e-12)


@pytest.mark.slow
def test_first_purchase_follows_weights():
    rng = np.random.default_rng(1234)
    trials = 100_000
    second = 0
    for _ in range(trials):
        _, _, sold, _, _, _ = trade_sector([1.0, 1.0], [1e6, 1e6], [1.0, 3.0], [1.0], rng)
        second += sold[1] > 0
    assert abs(second / trials - 0.75) <= 0.01


def weights_model(stock, prices, sector_id):
    firms = make_firms(len(stock), sector_id=sector_id, S_i=stock, P_i=prices)
    return SimpleNamespace(firms=firms, prop=SimpleNamespace(S=int(max(sector_id)) + 1), behaviors=BehaviorRegistry())


def test_weights_default():
    model = weights_model([4.0, 2.0], [2.0, 1.0], [0, 0])
    assert goods_market_weights(model, 0).tolist() == [2.0, 2.0]


def test_weights_zero_inventory():
    model = weights_model([0.0, 0.0, 3.0], [2.0, 1.0, 1.0], [0, 0, 1])
    assert goods_market_weights(model, 0).tolist() == [0.0, 0.0]
    assert goods_market_weights(model, 1).tolist() == [3.0]


def test_weights_override():
    model = weights_model([4.0, 2.0], [2.0, 1.0], [0, 0])
    register_behavior(model.behaviors, 'goods_market_weights', lambda m, s: [1.0, 9.0])
    assert goods_market_weights(model, 0).tolist() == [1.0, 9.0]


def stocked(model):
    model.firms.S_i = model.firms.Y_i.copy()
    return model


def test_goods_market_conservation(small_model):
    model = stocked(small_model)
    before = model.firms.S_i.copy()
    outcome = goods_market(model)
    assert outcome.conservation_residual() <= 1e-10
    assert np.all(outcome.seller_sold <= before * (1 + 1e-12))
    assert np.allclose(before - outcome.seller_sold, model.firms.S_i, rtol=0, atol=1e-9 * before.max())
    assert outcome.total_spent > 0


def test_goods_market_sector_parallel_is_identical(small_model):
    first = stocked(small_model)
    second = copy.deepcopy(first)
    a = goods_market(first)
    b = goods_market(second, parallel_sectors=4)
    for field in ('sector_quantity', 'sector_value', 'buyer_spent', 'seller_sold', 'seller_revenue'):
        assert np.array_equal(getattr(a, field), getattr(b, field)), field
    assert a.unmet_demand == b.unmet_demand
    assert np.array_equal(first.firms.S_i, second.firms.S_i)


def test_goods_market_spawned_streams(small_model):
    first = stocked(small_model)
    second = copy.deepcopy(first)
    a = goods_market(first, rng=np.random.default_rng(5))
    b = goods_market(second, rng=np.random.default_rng(5), parallel_sectors=True)
    assert np.array_equal(a.seller_revenue, b.seller_revenue)


def test_goods_market_deterministic_ignores_seed(make_model):
    first, second = stocked(make_model(seed=1)), stocked(make_model(seed=2))
    first.deterministic = second.deterministic = True
    assert np.array_equal(goods_market(first).buyer_spent, goods_market(second).buyer_spent)
