import numpy as np
import pytest

from macroforge.model import (
    init_model, inspect, set_deterministic, seed_model, update_variables_with_totals,
    init_properties, init_firms, init_workers, init_bank, init_central_bank, init_government,
    init_rotw, init_aggregates, Model, validate_inputs,
)
from macroforge.engine import step
from macroforge.utils.status_exception import (
    ConsistencyError, InspectionError, ModelValidationError, SchemaError, StateError,
)


def relative(value, target):
    return abs(value - target) / abs(target)


def test_calibration_reproduction(fixture_inputs):
    params, ic = fixture_inputs
    model = init_model(params, ic, 20)
    agg = model.agg
    assert agg.t == 1
    assert agg.gdp_deflator == 1.0
    assert model.cb.rate == ic.policy_rate
    for value, target in (
        (agg.nominal_gdp, ic.nominal_gdp),
        (agg.expenditure_gdp, ic.nominal_gdp),
        (agg.nominal_household_consumption, ic.consumption),
        (agg.nominal_capitalformation, ic.investment),
        (agg.nominal_government_consumption, ic.government),
        (agg.nominal_exports, ic.exports),
        (agg.nominal_imports, ic.imports),
    ):
        assert relative(value, target) <= 1e-10
    by_sector = np.bincount(model.firms.sector_id, weights=model.firms.Y_i, minlength=params.S)
    for s in range(params.S):
        assert relative(by_sector[s], ic.sector_output[s]) <= 1e-10
        assert relative(agg.sector_output[s], ic.sector_output[s]) <= 1e-10


def test_agent_counts_at_scale_1000(fixture_inputs):
    params, ic = fixture_inputs
    model = init_model(params, ic, 20)
    assert len(model.firms) == 300
    assert len(model.w_act) == 4200
    assert len(model.w_inact) == 3500
    assert 7500 <= model.n_agents <= 8500
    assert int(model.w_act.employed.sum()) == 3864


def test_half_up_rounding_with_minimum_one(small_inputs):
    params, ic = small_inputs
    model = init_model(params, ic, 1)
    counts = np.bincount(model.firms.sector_id, minlength=params.S)
    assert counts.tolist() == [1, 3, 2, 4, 6, 3, 2, 5, 3, 2]


def test_initial_production_is_exact(small_model):
    firms = small_model.firms
    assert np.allclose(firms.alpha_i * firms.N_i, firms.Y_i, rtol=1e-12, atol=0)
    assert np.all(firms.N_i >= 1)
    small_model.w_act.validate()
    small_model.firms.validate()


def test_initial_income_scales_with_agents(small_inputs, fixture_inputs):
    small = init_model(*small_inputs, 1)
    full = init_model(*fixture_inputs, 1)
    assert small.gov.benefit == pytest.approx(10 * full.gov.benefit)
    assert small.w_act.Y_h[0] == pytest.approx(10 * full.w_act.Y_h[0])
    total = lambda m: m.w_act.D_h.sum() + m.w_inact.D_h.sum()
    assert relative(total(small), total(full)) <= 0.01


def test_component_initialisers_compose(small_inputs):
    params, ic = validate_inputs(*small_inputs)
    firms = init_firms(params, ic)
    w_act, w_inact = init_workers(params, ic, firms)
    model = Model(
        w_act=w_act, w_inact=w_inact, firms=firms,
        bank=init_bank(params, ic, firms, w_act, w_inact),
        cb=init_central_bank(params, ic), gov=init_government(params, ic), rotw=init_rotw(params, ic),
        agg=init_aggregates(params, ic, firms, w_act), prop=init_properties(params, ic, 3),
    )
    seed_model(model, 7, 2)
    assert model.run_index == 2 and model.master_seed == 7
    reference = init_model(params, ic, 3)
    assert model.bank == reference.bank
    assert np.array_equal(model.firms.Y_i, reference.firms.Y_i)


def test_update_variables_with_totals(small_model):
    small_model.firms.L_i = small_model.firms.L_i * 2
    small_model.w_act.D_h = small_model.w_act.D_h + 1.0
    update_variables_with_totals(small_model)
    assert small_model.bank.L == pytest.approx(small_model.firms.L_i.sum())
    expected_D = small_model.w_act.D_h.sum() + small_model.w_inact.D_h.sum() + small_model.firms.D_i.sum()
    assert small_model.bank.D == pytest.approx(expected_D)


def test_inconsistent_gdp(fixture_inputs):
    params, ic = fixture_inputs
    with pytest.raises(ConsistencyError, match='nominal_gdp'):
        init_model(params, ic.model_copy(update={'nominal_gdp': ic.nominal_gdp + 1.0}), 4)


def test_share_vector_must_sum_to_one(fixture_inputs):
    params, ic = fixture_inputs
    shares = list(ic.export_shares)
    shares[0] += 0.01
    with pytest.raises(ConsistencyError, match='export_shares'):
        init_model(params, ic.model_copy(update={'export_shares': shares}), 4)


def test_negative_count(fixture_inputs):
    params, ic = fixture_inputs
    with pytest.raises(ModelValidationError, match='n_active'):
        init_model(params, ic.model_copy(update={'n_active': -5}), 4)


def test_wrong_sector_length(fixture_inputs):
    params, ic = fixture_inputs
    with pytest.raises(ModelValidationError, match='prices'):
        init_model(params, ic.model_copy(update={'prices': ic.prices[:-1]}), 4)


def test_missing_parameter(fixture_inputs):
    params, ic = fixture_inputs
    document = params.model_dump(by_alias=True)
    del document['tau_INC']
    with pytest.raises(SchemaError) as info:
        init_model(document, ic, 4)
    assert 'parameters.tau_INC' in [path for path, _ in info.value.errors]


def test_invalid_horizon(fixture_inputs):
    with pytest.raises(ModelValidationError):
        init_model(*fixture_inputs, 0)


def test_unknown_parameters_are_kept(small_inputs):
    params, ic = small_inputs
    extended = type(params).model_validate({**params.model_dump(by_alias=True), 'future_knob': 3.0})
    model = init_model(extended, ic, 1)
    assert model.prop.extra == {'future_knob': 3.0}


# -- inspection ----------------------------------------------------------------------------

def test_inspect_paths(small_model, small_inputs):
    _, ic = small_inputs
    assert inspect(small_model, 'cb.rate') == ic.policy_rate
    assert inspect(small_model, 'agg.t') == 1
    assert small_model.inspect('agg.real_gdp') == ic.nominal_gdp


def test_inspect_unknown_path(small_model):
    with pytest.raises(InspectionError, match='w_act, w_inact, firms'):
        inspect(small_model, 'bank.nonexistent')
    with pytest.raises(LookupError):
        inspect(small_model, 'nowhere.rate')


def test_inspect_reads_properties_and_extras(small_model):
    small_model.prop.extra['future_knob'] = 3.0
    assert inspect(small_model, 'prop.extra.future_knob') == 3.0
    assert inspect(small_model, 'bank.reserves') == small_model.bank.reserves
    assert inspect(small_model, 'agg.expenditure_gdp') == small_model.agg.expenditure_gdp


@pytest.mark.parametrize('path', ['firms.validate', 'firms.sector_slices', 'w_act.columns', 'firms.__class__'])
def test_inspect_rejects_methods(small_model, path):
    with pytest.raises(InspectionError):
        inspect(small_model, path)


def test_inspect_returns_copies(small_model):
    prices = inspect(small_model, 'firms.P_i')
    prices[:] = -1.0
    assert np.all(small_model.firms.P_i > 0)
    assert np.array_equal(inspect(small_model, 'firms.P_i'), inspect(small_model, 'firms.P_i'))


# -- deterministic toggle -----------------------------------------------------------------------

def test_set_deterministic_before_first_step(small_model):
    set_deterministic(small_model, True)
    assert small_model.deterministic


def test_set_deterministic_mid_run(small_model):
    step(small_model)
    with pytest.raises(StateError):
        set_deterministic(small_model, True)


def test_bank_balance_sheet(make_model):
    bank = make_model().bank
    assert bank.L + bank.reserves == pytest.approx(bank.D + bank.E_k)
    assert not bank.negative_equity
    bank.E_k = -1.0
    assert bank.negative_equity
