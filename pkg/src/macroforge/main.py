# -----------------------------------------------------------------------------
# License:
# Copyright (c) 2026 macroforge developers
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
# EXPRESS OR IMPLIED.
#
#
# Name:        main.py
# Purpose:     Command-line front end: run, ensemble, shock, validate, bench
#
# Created:     11/02/2026
# -----------------------------------------------------------------------------
import sys
import pprint
import traceback

import click

from . import _consts
from .cli.module_log import Logger
from .utils.filesystem import now
from .utils.strings import parse_int_list
from .utils.status_exception import StatusException
from .utils.module_prologo import prologo, epilogo

from .processes import _SimulationRunner, _EnsembleRunner, _ShockRunner, _Validator, _Benchmark


class _ARG_NAMES_COMMON():
    CONFIG = {
        'aliases': ['--config', '--cfg'],
        'help': "Configuration document: a YAML file path, YAML text, or the name of a bundled config.",
        'default': _consts._FIXTURE_NAME,
        'example': '--config austria2010q1_synthetic',
    }
    QUARTERS = {
        'aliases': ['--T', '--quarters', 'quarters'],
        'help': "Number of quarters to simulate.",
        'default': _consts._DEFAULT_T,
        'example': '--T 20',
    }
    SEED = {
        'aliases': ['--seed'],
        'help': "Seed of the run's random stream.",
        'default': _consts._DEFAULT_SEED,
        'example': '--seed 42',
    }
    MASTER_SEED = {
        'aliases': ['--master-seed', '--master_seed'],
        'help': "Master seed of the ensemble; run i draws from the stream keyed (master seed, i).",
        'default': _consts._DEFAULT_MASTER_SEED,
        'example': '--master-seed 0',
    }
    RUNS = {
        'aliases': ['--runs', '-n'],
        'help': "Number of ensemble runs.",
        'default': _consts._DEFAULT_RUNS,
        'example': '--runs 8',
    }
    WORKERS = {
        'aliases': ['--workers', '-w'],
        'help': f"Worker processes for the ensemble. Defaults to ${_consts._ENV_WORKERS} or the CPU count.",
        'default': None,
        'example': '--workers 4',
    }
    OUT = {
        'aliases': ['--out', '-o'],
        'help': "Output file: .csv for a table, .nc for a structured (netCDF) export.",
        'default': None,
        'example': '--out results.csv',
    }


def common_options(func):
    """
    Common options to all macroforge commands
    """
    func = click.option('--verbose', is_flag=True, required=False, default=False,
                        help="Print some words more about what is doing.")(func)
    func = click.option('--debug', is_flag=True, required=False, default=False,
                        help="Debug mode.")(func)
    func = click.option('--version', is_flag=True, required=False, default=False,
                        help="Show the version of the package.")(func)
    return func


def _error_result(e, debug):
    if isinstance(e, StatusException):
        Logger.error(f'StatusException: {e}')
        return {
            'status': e.status,
            'message': str(e),
            ** ({'traceback': traceback.format_exc()} if debug else {})
        }
    error_msg = f'Error: {traceback.format_exc() if debug else str(e)}'
    Logger.error(error_msg)
    return {
        'status': StatusException.ERROR,
        'message': error_msg,
        ** ({'traceback': traceback.format_exc()} if debug else {})
    }


def _exit(output, ok=(StatusException.OK,)):
    Logger.debug(pprint.pformat(output))
    if output['status'] not in ok:
        click.echo(f"{output['status']}: {output.get('message', '')}", err=True)
        sys.exit(1)
    return output


@click.group()
def cli():
    """
    macroforge - macroeconomic agent-based simulations
    """


# REGION: [ RUN ] ====================================================================================================

class _ARG_NAMES_RUN(_ARG_NAMES_COMMON):
    DETERMINISTIC = {
        'aliases': ['--deterministic'],
        'help': "Replace every random draw with its fixed rule (noise-free trace).",
        'default': False,
        'example': '--deterministic',
    }
    SECTOR_PARALLEL = {
        'aliases': ['--sector-parallel', '--sector_parallel'],
        'help': "Run the goods market of each sector on its own thread.",
        'default': False,
        'example': '--sector-parallel',
    }
    PLOT = {
        'aliases': ['--plot'],
        'help': "Also write an SVG with one chart per tracked variable.",
        'default': None,
        'example': '--plot results.svg',
    }

@cli.command('run')
@click.option(*_ARG_NAMES_RUN.CONFIG['aliases'], type=str, default=_ARG_NAMES_RUN.CONFIG['default'], help=_ARG_NAMES_RUN.CONFIG['help'])
@click.option(*_ARG_NAMES_RUN.QUARTERS['aliases'], type=click.IntRange(min=1), default=_ARG_NAMES_RUN.QUARTERS['default'], help=_ARG_NAMES_RUN.QUARTERS['help'])
@click.option(*_ARG_NAMES_RUN.SEED['aliases'], type=click.IntRange(min=0), default=_ARG_NAMES_RUN.SEED['default'], help=_ARG_NAMES_RUN.SEED['help'])
@click.option(*_ARG_NAMES_RUN.OUT['aliases'], type=str, required=True, help=_ARG_NAMES_RUN.OUT['help'])
@click.option(*_ARG_NAMES_RUN.DETERMINISTIC['aliases'], is_flag=True, default=False, help=_ARG_NAMES_RUN.DETERMINISTIC['help'])
@click.option(*_ARG_NAMES_RUN.SECTOR_PARALLEL['aliases'], is_flag=True, default=False, help=_ARG_NAMES_RUN.SECTOR_PARALLEL['help'])
@click.option(*_ARG_NAMES_RUN.PLOT['aliases'], type=str, default=_ARG_NAMES_RUN.PLOT['default'], help=_ARG_NAMES_RUN.PLOT['help'])
@common_options
def cli_run_simulation(**kwargs):
    """
    Run one simulation and export the tracked variables.
    """
    output = run_simulation(**kwargs)
    _exit(output)
    click.echo(f"Wrote {output['quarters']} quarters to {output['out']}")
    return output

def run_simulation(
    # --- Specific options ---
    config = _consts._FIXTURE_NAME,
    quarters = _consts._DEFAULT_T,
    seed = _consts._DEFAULT_SEED,
    out = None,
    deterministic = False,
    sector_parallel = False,
    plot = None,
    # --- Common options ---
    version = False,
    debug = False,
    verbose = False
):
    """
    Main function for a single simulation run
    """
    t0 = now()
    try:
        # DOC: -- Init logger + handle version and debug ----------------------
        t0 = prologo(version, verbose, debug, job='run')

        # DOC: -- Run the simulation ------------------------------------------
        results = _SimulationRunner().run(
            config=config, T=quarters, seed=seed, out=out,
            deterministic=deterministic, sector_parallel=sector_parallel, plot=plot,
        )

        # DOC: -- Close the process with epilogo ------------------------------
        epilogo(t0, job='run')
        return results

    except Exception as e:
        results = _error_result(e, debug)
        epilogo(t0, job='run')
        return results

# ENDREGION

# REGION: [ ENSEMBLE ] ===============================================================================================

class _ARG_NAMES_ENSEMBLE(_ARG_NAMES_COMMON):
    PLOT = _ARG_NAMES_RUN.PLOT

@cli.command('ensemble')
@click.option(*_ARG_NAMES_ENSEMBLE.CONFIG['aliases'], type=str, default=_ARG_NAMES_ENSEMBLE.CONFIG['default'], help=_ARG_NAMES_ENSEMBLE.CONFIG['help'])
@click.option(*_ARG_NAMES_ENSEMBLE.QUARTERS['aliases'], type=click.IntRange(min=1), default=_ARG_NAMES_ENSEMBLE.QUARTERS['default'], help=_ARG_NAMES_ENSEMBLE.QUARTERS['help'])
@click.option(*_ARG_NAMES_ENSEMBLE.RUNS['aliases'], type=click.IntRange(min=1), default=_ARG_NAMES_ENSEMBLE.RUNS['default'], help=_ARG_NAMES_ENSEMBLE.RUNS['help'])
@click.option(*_ARG_NAMES_ENSEMBLE.MASTER_SEED['aliases'], type=click.IntRange(min=0), default=_ARG_NAMES_ENSEMBLE.MASTER_SEED['default'], help=_ARG_NAMES_ENSEMBLE.MASTER_SEED['help'])
@click.option(*_ARG_NAMES_ENSEMBLE.WORKERS['aliases'], type=click.IntRange(min=1), default=_ARG_NAMES_ENSEMBLE.WORKERS['default'], help=_ARG_NAMES_ENSEMBLE.WORKERS['help'])
@click.option(*_ARG_NAMES_ENSEMBLE.OUT['aliases'], type=str, required=True, help=_ARG_NAMES_ENSEMBLE.OUT['help'])
@click.option(*_ARG_NAMES_ENSEMBLE.PLOT['aliases'], type=str, default=_ARG_NAMES_ENSEMBLE.PLOT['default'], help=_ARG_NAMES_ENSEMBLE.PLOT['help'])
@common_options
def cli_run_ensemble(**kwargs):
    """
    Run a Monte Carlo ensemble and export all runs in one table.
    """
    output = run_ensemble(**kwargs)
    _exit(output)
    click.echo(f"Wrote {output['runs']} runs x {output['quarters']} quarters to {output['out']}")
    return output

def run_ensemble(
    # --- Specific options ---
    config = _consts._FIXTURE_NAME,
    quarters = _consts._DEFAULT_T,
    runs = _consts._DEFAULT_RUNS,
    master_seed = _consts._DEFAULT_MASTER_SEED,
    workers = None,
    out = None,
    plot = None,
    # --- Common options ---
    version = False,
    debug = False,
    verbose = False
):
    """
    Main function for an ensemble run
    """
    t0 = now()
    try:
        t0 = prologo(version, verbose, debug, job='ensemble')

        results = _EnsembleRunner().run(
            config=config, T=quarters, runs=runs, master_seed=master_seed,
            workers=workers, out=out, plot=plot,
        )

        epilogo(t0, job='ensemble')
        return results

    except Exception as e:
        results = _error_result(e, debug)
        epilogo(t0, job='ensemble')
        return results

# ENDREGION

# REGION: [ SHOCK ] ==================================================================================================

class _ARG_NAMES_SHOCK(_ARG_NAMES_COMMON):
    TYPE = {
        'aliases': ['--type', 'shock_type'],
        'help': f"Built-in shock. Supported: {', '.join(_consts._SHOCKS_LIST)}.",
        'default': _consts._SHOCKS.CONSUMPTION,
        'example': '--type consumption',
    }
    MULTIPLIER = {
        'aliases': ['--multiplier', '-m'],
        'help': "Factor applied to the propensity to consume while the shock lasts.",
        'default': None,
        'example': '--multiplier 1.02',
    }
    FINAL_TIME = {
        'aliases': ['--final-time', '--final_time'],
        'help': "Quarter at which the original propensity to consume is restored (>= 2).",
        'default': None,
        'example': '--final-time 4',
    }

@cli.command('shock')
@click.option(*_ARG_NAMES_SHOCK.CONFIG['aliases'], type=str, default=_ARG_NAMES_SHOCK.CONFIG['default'], help=_ARG_NAMES_SHOCK.CONFIG['help'])
@click.option(*_ARG_NAMES_SHOCK.QUARTERS['aliases'], type=click.IntRange(min=1), default=_ARG_NAMES_SHOCK.QUARTERS['default'], help=_ARG_NAMES_SHOCK.QUARTERS['help'])
@click.option(*_ARG_NAMES_SHOCK.TYPE['aliases'], type=str, default=_ARG_NAMES_SHOCK.TYPE['default'], help=_ARG_NAMES_SHOCK.TYPE['help'])
@click.option(*_ARG_NAMES_SHOCK.MULTIPLIER['aliases'], type=float, required=True, help=_ARG_NAMES_SHOCK.MULTIPLIER['help'])
@click.option(*_ARG_NAMES_SHOCK.FINAL_TIME['aliases'], type=int, required=True, help=_ARG_NAMES_SHOCK.FINAL_TIME['help'])
@click.option(*_ARG_NAMES_SHOCK.RUNS['aliases'], type=click.IntRange(min=1), default=_ARG_NAMES_SHOCK.RUNS['default'], help=_ARG_NAMES_SHOCK.RUNS['help'])
@click.option(*_ARG_NAMES_SHOCK.MASTER_SEED['aliases'], type=click.IntRange(min=0), default=_ARG_NAMES_SHOCK.MASTER_SEED['default'], help=_ARG_NAMES_SHOCK.MASTER_SEED['help'])
@click.option(*_ARG_NAMES_SHOCK.WORKERS['aliases'], type=click.IntRange(min=1), default=_ARG_NAMES_SHOCK.WORKERS['default'], help=_ARG_NAMES_SHOCK.WORKERS['help'])
@click.option(*_ARG_NAMES_SHOCK.OUT['aliases'], type=str, required=True, help=_ARG_NAMES_SHOCK.OUT['help'])
@common_options
def cli_run_shock(**kwargs):
    """
    Run shocked and baseline ensembles with common random numbers.
    """
    output = run_shock(**kwargs)
    _exit(output)
    click.echo(f"Wrote {output['out']}, {output['baseline']} and {output['ratio']}")
    return output

def run_shock(
    # --- Specific options ---
    config = _consts._FIXTURE_NAME,
    quarters = _consts._DEFAULT_T,
    shock_type = _consts._SHOCKS.CONSUMPTION,
    multiplier = None,
    final_time = None,
    runs = _consts._DEFAULT_RUNS,
    master_seed = _consts._DEFAULT_MASTER_SEED,
    workers = None,
    out = None,
    # --- Common options ---
    version = False,
    debug = False,
    verbose = False
):
    """
    Main function for a shock scenario
    """
    t0 = now()
    try:
        t0 = prologo(version, verbose, debug, job='shock')

        results = _ShockRunner().run(
            config=config, T=quarters, runs=runs, master_seed=master_seed, workers=workers, out=out,
            shock_type=shock_type, multiplier=multiplier, final_time=final_time,
        )

        epilogo(t0, job='shock')
        return results

    except Exception as e:
        results = _error_result(e, debug)
        epilogo(t0, job='shock')
        return results

# ENDREGION

# REGION: [ VALIDATE ] ===============================================================================================

class _ARG_NAMES_VALIDATE(_ARG_NAMES_COMMON):
    GOLDEN = {
        'aliases': ['--golden'],
        'help': "Golden table of the deterministic run to compare against bit for bit. Defaults to the table shipped with a bundled config, if any.",
        'default': None,
        'example': '--golden golden/fixture_T20.csv',
    }
    WRITE_GOLDEN = {
        'aliases': ['--write-golden'],
        'help': "Store the deterministic trace of this run as a golden table at this path.",
        'default': None,
        'example': '--write-golden src/macroforge/data/golden/austria2010q1_synthetic_T20.csv',
    }

@cli.command('validate')
@click.option(*_ARG_NAMES_VALIDATE.CONFIG['aliases'], type=str, default=_ARG_NAMES_VALIDATE.CONFIG['default'], help=_ARG_NAMES_VALIDATE.CONFIG['help'])
@click.option(*_ARG_NAMES_VALIDATE.QUARTERS['aliases'], type=click.IntRange(min=1), default=_ARG_NAMES_VALIDATE.QUARTERS['default'], help=_ARG_NAMES_VALIDATE.QUARTERS['help'])
@click.option(*_ARG_NAMES_VALIDATE.SEED['aliases'], type=click.IntRange(min=0), default=_ARG_NAMES_VALIDATE.SEED['default'], help=_ARG_NAMES_VALIDATE.SEED['help'])
@click.option(*_ARG_NAMES_VALIDATE.GOLDEN['aliases'], type=str, default=_ARG_NAMES_VALIDATE.GOLDEN['default'], help=_ARG_NAMES_VALIDATE.GOLDEN['help'])
@click.option(*_ARG_NAMES_VALIDATE.WRITE_GOLDEN['aliases'], type=str, default=_ARG_NAMES_VALIDATE.WRITE_GOLDEN['default'], help=_ARG_NAMES_VALIDATE.WRITE_GOLDEN['help'])
@common_options
def cli_run_validate(**kwargs):
    """
    Check accounting identities every quarter and the deterministic golden trace.
    """
    output = run_validate(**kwargs)
    for check in output.get('checks', []):
        quarters = f" (quarters {', '.join(map(str, check['quarters']))})" if check['quarters'] else ''
        click.echo(f"{check['status']:<8} {check['name']}{quarters}")
    return _exit(output)

def run_validate(
    # --- Specific options ---
    config = _consts._FIXTURE_NAME,
    quarters = _consts._DEFAULT_T,
    seed = _consts._DEFAULT_SEED,
    golden = None,
    write_golden = None,
    # --- Common options ---
    version = False,
    debug = False,
    verbose = False
):
    """
    Main function for the validation suite
    """
    t0 = now()
    try:
        t0 = prologo(version, verbose, debug, job='validate')

        results = _Validator().run(config=config, T=quarters, seed=seed, golden=golden, write_golden=write_golden)

        epilogo(t0, job='validate')
        return results

    except Exception as e:
        results = _error_result(e, debug)
        epilogo(t0, job='validate')
        return results

# ENDREGION

# REGION: [ BENCH ] ==================================================================================================

class _ARG_NAMES_BENCH(_ARG_NAMES_COMMON):
    SCALES = {
        'aliases': ['--scales'],
        'help': "Comma-separated scales to time (agent counts are divided by the scale).",
        'default': '1000',
        'example': '--scales 1000,100',
    }
    STEPS = {
        'aliases': ['--steps'],
        'help': "Timed steps per configuration, after one warm-up step (>= 5).",
        'default': 10,
        'example': '--steps 10',
    }
    BENCH_WORKERS = {
        'aliases': ['--workers', '-w'],
        'help': "Comma-separated goods-market thread counts to time.",
        'default': '1',
        'example': '--workers 1,4,8',
    }
    OUT = {
        'aliases': ['--out', '-o'],
        'help': "Optional CSV file for the report rows.",
        'default': None,
        'example': '--out bench.csv',
    }

@cli.command('bench')
@click.option(*_ARG_NAMES_BENCH.CONFIG['aliases'], type=str, default=_ARG_NAMES_BENCH.CONFIG['default'], help=_ARG_NAMES_BENCH.CONFIG['help'])
@click.option(*_ARG_NAMES_BENCH.SCALES['aliases'], type=str, default=_ARG_NAMES_BENCH.SCALES['default'], help=_ARG_NAMES_BENCH.SCALES['help'])
@click.option(*_ARG_NAMES_BENCH.STEPS['aliases'], type=click.IntRange(min=5), default=_ARG_NAMES_BENCH.STEPS['default'], help=_ARG_NAMES_BENCH.STEPS['help'])
@click.option(*_ARG_NAMES_BENCH.BENCH_WORKERS['aliases'], type=str, default=_ARG_NAMES_BENCH.BENCH_WORKERS['default'], help=_ARG_NAMES_BENCH.BENCH_WORKERS['help'])
@click.option(*_ARG_NAMES_BENCH.OUT['aliases'], type=str, default=_ARG_NAMES_BENCH.OUT['default'], help=_ARG_NAMES_BENCH.OUT['help'])
@common_options
def cli_run_bench(**kwargs):
    """
    Time one model step across scales and goods-market thread counts.
    """
    output = run_bench(**kwargs)
    _exit(output, ok=(StatusException.OK, StatusException.PARTIAL))
    for r in output['reports']:
        click.echo(f"{r.status:<8} scale={r.scale} agents={r.agents} workers={r.workers} "
                   f"mean={r.mean_step * 1e3:.3f}ms std={r.std_step * 1e3:.3f}ms")
    summary = output['summary']
    for w, ratio in summary['ratio_large_small'].items():
        click.echo(f"workers={w}: largest/smallest step time ratio {ratio:.1f}")
    for s, speedups in summary['speedup'].items():
        click.echo(f"scale={s}: speedup " + ', '.join(f"{w}->{v:.2f}x" for w, v in speedups.items()))
    return output

def run_bench(
    # --- Specific options ---
    config = _consts._FIXTURE_NAME,
    scales = '1000',
    steps = 10,
    workers = '1',
    out = None,
    # --- Common options ---
    version = False,
    debug = False,
    verbose = False
):
    """
    Main function for the scaling benchmark
    """
    t0 = now()
    try:
        t0 = prologo(version, verbose, debug, job='bench')

        # DOC: -- Parse scale and worker lists from strings -------------------
        if isinstance(scales, str):
            scales = parse_int_list(scales)
        if isinstance(workers, str):
            workers = parse_int_list(workers)

        results = _Benchmark().run(config=config, scales=scales, steps=steps, workers=workers, out=out)

        epilogo(t0, job='bench')
        return results

    except Exception as e:
        results = _error_result(e, debug)
        epilogo(t0, job='bench')
        return results

# ENDREGION
