import logging

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from macroforge.io import save_config
from macroforge.main import cli, run_simulation, run_validate
from macroforge.processes import _Validator, save_golden
from macroforge.utils.status_exception import StatusException


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def small_config(small_inputs, tmp_path):
    params, ic = small_inputs
    return save_config(str(tmp_path / 'small.yaml'), params, ic)


def invoke(runner, *args):
    return runner.invoke(cli, [str(a) for a in args], catch_exceptions=False)


def read_bytes(path):
    with open(path, 'rb') as stream:
        return stream.read()


def test_run_writes_one_row_per_quarter(runner, small_config, tmp_path):
    out = tmp_path / 'run.csv'
    result = invoke(runner, 'run', '--config', small_config, '--T', 20, '--seed', 42, '--out', out)
    assert result.exit_code == 0, result.output
    table = pd.read_csv(out)
    assert table.shape == (20, 26)
    assert table['quarter'].tolist() == list(range(1, 21))


def test_run_is_byte_reproducible(runner, small_config, tmp_path):
    first, second = tmp_path / 'a.csv', tmp_path / 'b.csv'
    invoke(runner, 'run', '--config', small_config, '--T', 6, '--seed', 7, '--out', first)
    invoke(runner, 'run', '--config', small_config, '--T', 6, '--seed', 7, '--out', second)
    assert read_bytes(first) == read_bytes(second)


def test_run_structured_and_plot(runner, small_config, tmp_path):
    out, plot = tmp_path / 'run.nc', tmp_path / 'run.svg'
    result = invoke(runner, 'run', '--config', small_config, '--T', 3, '--out', out, '--plot', plot)
    assert result.exit_code == 0, result.output
    assert out.exists() and plot.exists()


def test_run_rejects_bad_config(runner, tmp_path):
    result = invoke(runner, 'run', '--config', 'parameters: {S: 1}\n', '--out', tmp_path / 'x.csv')
    assert result.exit_code != 0
    assert not (tmp_path / 'x.csv').exists()


def test_run_requires_out(runner):
    assert invoke(runner, 'run', '--T', 2).exit_code == 2


def test_run_function_reports_status(small_config, tmp_path):
    output = run_simulation(config=small_config, quarters=2, out=str(tmp_path / 'run.txt'))
    assert output['status'] == StatusException.INVALID
    output = run_simulation(config=small_config, quarters=2, out=str(tmp_path / 'run.csv'))
    assert output['status'] == StatusException.OK
    assert output['quarters'] == 2


def test_ensemble_independent_of_workers(runner, small_config, tmp_path):
    one, two = tmp_path / 'one.csv', tmp_path / 'two.csv'
    common = ['--config', small_config, '--T', 4, '--runs', 3, '--master-seed', 0]
    assert invoke(runner, 'ensemble', *common, '--workers', 1, '--out', one).exit_code == 0
    assert invoke(runner, 'ensemble', *common, '--workers', 2, '--out', two).exit_code == 0
    assert read_bytes(one) == read_bytes(two)
    table = pd.read_csv(one)
    assert table.shape == (12, 27)


@pytest.mark.slow
def test_fixture_ensemble_identical_on_1_2_and_8_workers(runner, tmp_path):
    outputs = []
    for workers in (1, 2, 8):
        out = tmp_path / f'ensemble_{workers}.csv'
        result = invoke(runner, 'ensemble', '--T', 20, '--runs', 8, '--master-seed', 0,
                        '--workers', workers, '--out', out)
        assert result.exit_code == 0, result.output
        outputs.append(read_bytes(out))
    assert outputs[0] == outputs[1] == outputs[2]


def test_ensemble_rejects_zero_runs(runner, tmp_path):
    result = invoke(runner, 'ensemble', '--runs', 0, '--out', tmp_path / 'e.csv')
    assert result.exit_code == 2


def test_neutral_shock_gives_unit_ratio(runner, small_config, tmp_path):
    out = tmp_path / 'shock.csv'
    result = invoke(runner, 'shock', '--config', small_config, '--T', 5, '--type', 'consumption',
                    '--multiplier', 1.0, '--final-time', 3, '--runs', 2, '--workers', 1, '--out', out)
    assert result.exit_code == 0, result.output
    assert (tmp_path / 'shock_baseline.csv').exists()
    ratios = pd.read_csv(tmp_path / 'shock_ratio.csv', float_precision='round_trip')
    assert ratios['ratio'].tolist() == [1.0] * 5
    assert read_bytes(out) == read_bytes(tmp_path / 'shock_baseline.csv')


def test_shock_rejects_unknown_type(runner, small_config, tmp_path):
    result = invoke(runner, 'shock', '--config', small_config, '--type', 'tariff', '--multiplier', 1.02,
                    '--final-time', 4, '--out', tmp_path / 'shock.csv')
    assert result.exit_code == 1
    assert 'Unknown shock type' in result.output


def test_validate_passes(runner, small_config):
    result = invoke(runner, 'validate', '--config', small_config, '--T', 8)
    assert result.exit_code == 0, result.output
    for name in ('national_income_identity', 'money_conservation', 'market_conservation',
                 'deterministic_seed_independence'):
        assert f'PASS     {name}' in result.output
    assert 'SKIPPED  golden' in result.output


def test_validate_single_quarter(small_config):
    assert run_validate(config=small_config, quarters=1)['status'] == StatusException.OK


def test_validate_against_golden(runner, small_config, tmp_path):
    golden = tmp_path / 'golden.csv'
    table = _Validator().deterministic_table(small_config, 6)
    table.to_csv(golden, index=False, float_format='%.17g', lineterminator='\n')
    result = invoke(runner, 'validate', '--config', small_config, '--T', 6, '--golden', golden)
    assert result.exit_code == 0, result.output
    assert 'PASS     golden' in result.output

    table.loc[3, 'real_gdp'] = np.nextafter(table.loc[3, 'real_gdp'], np.inf)
    table.to_csv(golden, index=False, float_format='%.17g', lineterminator='\n')
    result = invoke(runner, 'validate', '--config', small_config, '--T', 6, '--golden', golden)
    assert result.exit_code == 1
    assert 'FAIL     golden (quarters 4)' in result.output
    assert 'PASS     money_conservation' in result.output


def test_validate_writes_golden(runner, small_config, tmp_path):
    golden = tmp_path / 'golden' / 'small_T5.csv'
    result = invoke(runner, 'validate', '--config', small_config, '--T', 5, '--write-golden', golden)
    assert result.exit_code == 0, result.output
    assert len(pd.read_csv(golden)) == 5
    result = invoke(runner, 'validate', '--config', small_config, '--T', 5, '--golden', golden)
    assert 'PASS     golden' in result.output


def test_validate_defaults_to_bundled_golden(runner, small_config, tmp_path, monkeypatch):
    golden = tmp_path / 'bundled.csv'
    save_golden(_Validator().deterministic_table(small_config, 4), golden)
    monkeypatch.setattr('macroforge.processes.validator.bundled_golden', lambda config, T: str(golden))
    result = invoke(runner, 'validate', '--config', small_config, '--T', 4)
    assert result.exit_code == 0, result.output
    assert 'PASS     golden' in result.output

    result = invoke(runner, 'validate', '--config', small_config, '--T', 5)
    assert result.exit_code == 1
    assert 'FAIL     golden' in result.output


def test_validate_missing_golden(small_config, tmp_path):
    output = run_validate(config=small_config, quarters=2, golden=str(tmp_path / 'none.csv'))
    assert output['status'] == StatusException.INVALID


def test_bench(runner, small_config, tmp_path):
    out = tmp_path / 'bench.csv'
    result = invoke(runner, 'bench', '--config', small_config, '--scales', '5000,10000',
                    '--steps', 5, '--workers', '1,2', '--out', out)
    assert result.exit_code == 0, result.output
    rows = pd.read_csv(out)
    assert len(rows) == 4
    assert set(rows['status']) == {'OK'}
    assert 'speedup' in result.output


def test_bench_requires_five_steps(runner):
    assert invoke(runner, 'bench', '--steps', 4).exit_code == 2


def test_bench_rejects_non_integer_scales(runner):
    result = invoke(runner, 'bench', '--scales', '1000,abc', '--steps', 5)
    assert result.exit_code == 1
    assert 'abc' in result.output


def test_parse_int_list():
    from macroforge.utils.strings import parse_int_list
    assert parse_int_list(' 1000, 100,,10 ') == [1000, 100, 10]
    assert parse_int_list([5, 6]) == [5, 6]
    with pytest.raises(ValueError):
        parse_int_list('1.5')


def test_log_level_switch():
    from macroforge.cli.module_log import Logger, set_log_level, set_log_warning
    set_log_level('debug')
    try:
        assert Logger.level == logging.DEBUG
        with pytest.raises(ValueError):
            set_log_level('loud')
    finally:
        set_log_warning()
