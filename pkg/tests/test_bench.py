import os
import math
import time

import pytest

from macroforge.engine import step, run, ensemblerun
from macroforge.model import init_model
from macroforge.processes import _Benchmark, BenchReport, summarize
from macroforge.processes.benchmark import time_steps
from macroforge.utils.status_exception import StatusException


def report(scale, agents, mean, workers=1, status=StatusException.OK):
    return BenchReport(scale, agents, 5, mean, mean / 10, workers, status=status)


def test_report_carries_context():
    row = report(1000, 8000, 0.01)
    assert row.timestamp and row.machine
    assert row.status == StatusException.OK


def test_summarize():
    reports = [
        report(1000, 8000, 0.020, 1), report(1000, 8000, 0.010, 4),
        report(100, 80000, 0.200, 1), report(100, 80000, 0.050, 4),
        report(10, 0, math.nan, 1, status=StatusException.SKIPPED),
    ]
    summary = summarize(reports)
    assert summary['per_agent'][(1000, 1)] == pytest.approx(0.020 / 8000)
    assert summary['ratio_large_small'] == {1: pytest.approx(10.0), 4: pytest.approx(5.0)}
    assert summary['speedup'][100] == {1: pytest.approx(1.0), 4: pytest.approx(4.0)}
    assert (10, 1) not in summary['per_agent']


def test_summarize_single_row():
    summary = summarize([report(1000, 8000, 0.01)])
    assert summary['ratio_large_small'] == {} and summary['speedup'] == {}


def test_time_steps(make_model):
    model = make_model(T=7)
    times = time_steps(model, 5, 1)
    assert len(times) == 5 and (times > 0).all()
    assert model.agg.t == 7


@pytest.mark.parametrize('kwargs, match', [
    ({'steps': 4}, 'steps'),
    ({'scales': [0]}, 'scales'),
    ({'workers': [1, -2]}, 'workers'),
    ({'out': 'bench.nc'}, 'out'),
])
def test_rejects_bad_arguments(kwargs, match):
    with pytest.raises(StatusException, match=match) as info:
        _Benchmark().run(**kwargs)
    assert info.value.status == StatusException.INVALID


def test_skips_when_out_of_memory(monkeypatch):
    def exhausted(*args, **kwargs):
        raise MemoryError()

    monkeypatch.setattr(_Benchmark, 'build_model', exhausted)
    output = _Benchmark().run(scales=[1], steps=5)
    assert output['status'] == StatusException.PARTIAL
    assert output['reports'][0].status == StatusException.SKIPPED


# -- timing bounds on the bundled fixture -------------------------------------------------------

def fixture_model(fixture_inputs, T, scale=None, seed=42):
    params, ic = fixture_inputs
    if scale is not None:
        params = params.model_copy(update={'scale': scale})
    return init_model(params, ic, T, seed=seed)


def physical_memory():
    try:
        return os.sysconf('SC_PAGE_SIZE') * os.sysconf('SC_PHYS_PAGES')
    except (AttributeError, ValueError, OSError):
        return 0


@pytest.mark.slow
def test_fixture_step_under_50ms(fixture_inputs):
    model = fixture_model(fixture_inputs, T=21)
    assert 7_500 <= model.n_agents <= 8_500
    times = time_steps(model, 20, 1)
    assert times.mean() < 0.050


@pytest.mark.slow
def test_twenty_quarter_run_under_5s(fixture_inputs):
    step(fixture_model(fixture_inputs, T=1))
    model = fixture_model(fixture_inputs, T=20)
    t0 = time.perf_counter()
    data = run(model)
    elapsed = time.perf_counter() - t0
    assert all(r.identity_ok for r in data.reports)
    assert elapsed < 5.0


@pytest.mark.slow
@pytest.mark.skipif(physical_memory() < 16 * 2 ** 30, reason='needs about 16 GB of memory')
def test_step_time_scales_with_agents(fixture_inputs):
    small = time_steps(fixture_model(fixture_inputs, T=7), 5, 1).mean()
    large = time_steps(fixture_model(fixture_inputs, T=7, scale=1), 5, 1).mean()
    assert 200 <= large / small <= 5000


@pytest.mark.slow
@pytest.mark.skipif((os.cpu_count() or 1) < 8, reason='needs 8 cores')
def test_ensemble_on_eight_workers_halves_wall_time(fixture_inputs):
    model = fixture_model(fixture_inputs, T=20, scale=250)
    ensemblerun(model, 8, master_seed=1, parallel=True, workers=8)

    t0 = time.perf_counter()
    serial = ensemblerun(model, 8, master_seed=0, parallel=False)
    serial_time = time.perf_counter() - t0
    t0 = time.perf_counter()
    parallel = ensemblerun(model, 8, master_seed=0, parallel=True, workers=8)
    parallel_time = time.perf_counter() - t0

    assert serial == parallel
    assert parallel_time <= 0.5 * serial_time
