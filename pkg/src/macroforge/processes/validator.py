# -----------------------------------------------------------------------------
# Name:        validator.py
# Purpose:     Accounting identity suite and deterministic golden regression
#
# Created:     10/02/2026
# -----------------------------------------------------------------------------

import os

import numpy as np
import pandas as pd

from .. import _consts
from ..cli.module_log import Logger
from ..engine.runner import run
from ..io.config import bundled_golden
from ..io.export import to_table
from ..utils.status_exception import StatusException
from ._base import _SimulationProcess


def check_result(name, failing_quarters=None, message=None, skipped=False):
    failing_quarters = list(failing_quarters or [])
    if skipped:
        status = StatusException.SKIPPED
    elif failing_quarters or message:
        status = 'FAIL'
    else:
        status = 'PASS'
    return {'name': name, 'status': status, 'quarters': failing_quarters, 'message': message}


def save_golden(table, path):
    """
    save_golden - store `table` as a golden CSV that reads back bit for bit
    """
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    table.to_csv(path, index=False, float_format='%.17g', lineterminator='\n')
    return path


class _Validator(_SimulationProcess):
    """
    Run the fixture and check, quarter by quarter, the national income identity,
    money conservation and market conservation; then compare the deterministic
    trace against a stored golden table.
    """

    name = f'{_consts._PACKAGE_NAME}__Validator'

    def argument_validation(self, **kwargs):
        validated = self.validate_common(config=kwargs.get('config'), T=kwargs.get('T'), seed=kwargs.get('seed'))
        golden = kwargs.get('golden', None)
        if golden is not None and not os.path.isfile(golden):
            raise StatusException(StatusException.INVALID, f'Golden file not found: {golden}')
        if golden is None:
            golden = bundled_golden(validated['config'], validated['T'])
            if golden is not None:
                Logger.debug(f'Comparing against the bundled golden table {golden}')
        validated['golden'] = golden
        validated['write_golden'] = kwargs.get('write_golden', None)
        return validated

    def deterministic_table(self, config, T, seed=_consts._DEFAULT_SEED):
        """
        deterministic_table - table export of a deterministic run (the golden reference)
        """
        model = self.build_model(config, T, seed, deterministic=True)
        return to_table(run(model))

    def identity_checks(self, config, T, seed):
        model = self.build_model(config, T, seed)
        data = run(model, strict=False)
        reports = data.reports
        checks = [
            check_result('national_income_identity', [r.quarter for r in reports if not r.identity_ok]),
            check_result('money_conservation', [r.quarter for r in reports if not r.money_ok]),
            check_result('market_conservation', [r.quarter for r in reports if not r.market_ok]),
        ]
        try:
            for group in (model.w_act, model.w_inact, model.firms):
                group.validate()
            checks.append(check_result('agent_invariants'))
        except StatusException as e:
            checks.append(check_result('agent_invariants', message=str(e)))
        return checks

    def seed_independence_check(self, config, T, seed):
        first = self.deterministic_table(config, T, seed)
        second = self.deterministic_table(config, T, seed + 1)
        if first.equals(second):
            return check_result('deterministic_seed_independence')
        quarters = first['quarter'][~(first == second).all(axis=1)].tolist()
        return check_result('deterministic_seed_independence', quarters, 'deterministic trace depends on the seed')

    def golden_check(self, table, golden):
        if golden is None:
            return check_result('golden', message='no golden table given or bundled for this config and T', skipped=True)
        expected = pd.read_csv(golden, float_precision='round_trip')
        if list(expected.columns) != list(table.columns):
            return check_result('golden', message=f'columns differ from {golden}')
        if len(expected) != len(table):
            return check_result('golden', message=f'{len(table)} quarters simulated, golden has {len(expected)}')
        mismatch = ~np.all(expected.to_numpy(dtype=float) == table.to_numpy(dtype=float), axis=1)
        return check_result('golden', table['quarter'][mismatch].tolist())

    def run(self, config=None, T=None, seed=None, golden=None, write_golden=None, **kwargs):
        """
        Without `golden`, a bundled config run for a T with a shipped table is
        compared against that table. `write_golden` stores the deterministic
        trace of this run as a new golden table.

        Returns:
            dict: status OK when every check passes (or is skipped), INCONSISTENT otherwise;
            'checks' lists name, status and failing quarters of every check
        """
        try:
            args = self.argument_validation(config=config, T=T, seed=seed, golden=golden, write_golden=write_golden)

            checks = self.identity_checks(args['config'], args['T'], args['seed'])
            checks.append(self.seed_independence_check(args['config'], args['T'], args['seed']))
            table = self.deterministic_table(args['config'], args['T'], args['seed'])
            checks.append(self.golden_check(table, args['golden']))
            if args['write_golden']:
                Logger.info(f'Golden table written to {save_golden(table, args["write_golden"])}')

            failed = [c for c in checks if c['status'] == 'FAIL']
            for c in checks:
                Logger.info(f'{c["name"]}: {c["status"]}' + (f' quarters {c["quarters"]}' if c['quarters'] else ''))

            if failed:
                message = '; '.join(
                    f'{c["name"]} failed' + (f' at quarters {c["quarters"]}' if c['quarters'] else '') + (f' ({c["message"]})' if c['message'] else '')
                    for c in failed
                )
                return {'status': StatusException.INCONSISTENT, 'message': message, 'checks': checks}
            return {'status': StatusException.OK, 'checks': checks}

        except StatusException as e:
            Logger.error(f'StatusException during {self.name} run: {e}')
            raise
