# -----------------------------------------------------------------------------
# Name:        shock_runner.py
# Purpose:     Shocked vs baseline ensembles on common random numbers
#
# Created:     10/02/2026
# -----------------------------------------------------------------------------

import numpy as np
import pandas as pd

from .. import _consts
from ..cli.module_log import Logger
from ..engine.runner import ensemblerun
from ..engine.shocks import make_shock
from ..io.export import export_data
from ..utils import filesystem
from ..utils.module_status import set_status
from ..utils.status_exception import StatusException
from .ensemble_runner import _EnsembleRunner


def ratio_table(shocked, baseline, name='real_gdp'):
    """
    ratio_table - per-quarter shocked/baseline ratio of the ensemble mean of `name`,
    with the standard error of the per-run ratios.
    """
    s = np.vstack([np.asarray(data[name], dtype=float) for data in shocked])
    b = np.vstack([np.asarray(data[name], dtype=float) for data in baseline])
    per_run = s / b
    n = per_run.shape[0]
    sem = per_run.std(axis=0, ddof=1) / np.sqrt(n) if n > 1 else np.zeros(per_run.shape[1])
    return pd.DataFrame({
        'quarter': np.arange(1, s.shape[1] + 1, dtype=np.int64),
        f'shocked_{name}': s.mean(axis=0),
        f'baseline_{name}': b.mean(axis=0),
        'ratio': s.mean(axis=0) / b.mean(axis=0),
        'ratio_sem': sem,
    })


class _ShockRunner(_EnsembleRunner):
    """
    Run the same ensemble with and without a shock and derive the GDP ratio table.
    Both ensembles share master seed, so run i draws the same stream in each.
    """

    name = f'{_consts._PACKAGE_NAME}__ShockRunner'

    def argument_validation(self, **kwargs):
        validated = self.validate_common(
            config=kwargs.get('config'), T=kwargs.get('T'), seed=kwargs.get('master_seed'),
            out=kwargs.get('out'), out_required=True,
        )
        validated['runs'], validated['workers'] = self.validate_ensemble(kwargs.get('runs'), kwargs.get('workers'))

        shock_type = kwargs.get('shock_type', _consts._SHOCKS.CONSUMPTION)
        if shock_type not in _consts._SHOCKS_LIST:
            raise StatusException(StatusException.INVALID, f'Unknown shock type "{shock_type}". Valid types are: {", ".join(_consts._SHOCKS_LIST)}')
        multiplier = kwargs.get('multiplier', None)
        if multiplier is None or not np.isfinite(multiplier) or multiplier <= 0:
            raise StatusException(StatusException.INVALID, f'multiplier must be a positive number, got {multiplier!r}')
        final_time = kwargs.get('final_time', None)
        if final_time is None or final_time < 2:
            raise StatusException(StatusException.INVALID, f'final_time must be an integer >= 2, got {final_time!r}')

        validated.update(shock_type=shock_type, multiplier=float(multiplier), final_time=int(final_time))
        return validated

    @staticmethod
    def output_paths(out):
        """
        output_paths - (shocked, baseline, ratio) file names derived from `out`
        """
        root, ext = filesystem.forceext(out, ''), filesystem.justext(out)
        return out, f'{root}_baseline.{ext}', f'{root}_ratio.csv'

    def run(self, config=None, T=None, runs=None, master_seed=None, workers=None, out=None,
            shock_type=_consts._SHOCKS.CONSUMPTION, multiplier=None, final_time=None, **kwargs):
        """
        Returns:
            dict: status, the three output paths and the ratio per quarter
        """
        try:
            args = self.argument_validation(
                config=config, T=T, runs=runs, master_seed=master_seed, workers=workers, out=out,
                shock_type=shock_type, multiplier=multiplier, final_time=final_time,
            )
            model = self.build_model(args['config'], args['T'], args['seed'])
            shock = make_shock(args['shock_type'], args['multiplier'], args['final_time'])
            parallel = args['workers'] > 1

            set_status(10, f'Shocked ensemble: {shock}')
            shocked = ensemblerun(model, args['runs'], master_seed=args['seed'], shock=shock,
                                  parallel=parallel, workers=args['workers'])
            set_status(55, 'Baseline ensemble')
            baseline = ensemblerun(model, args['runs'], master_seed=args['seed'],
                                   parallel=parallel, workers=args['workers'])

            out_shocked, out_baseline, out_ratio = self.output_paths(args['out'])
            export_data(shocked, out_shocked)
            export_data(baseline, out_baseline)
            ratios = ratio_table(shocked, baseline)
            ratios.to_csv(out_ratio, index=False, float_format='%.17g', lineterminator='\n')
            Logger.info(f'Ratio of mean real GDP per quarter: {np.round(ratios["ratio"].to_numpy(), 6).tolist()}')

            return {
                'status': StatusException.OK,
                'out': out_shocked,
                'baseline': out_baseline,
                'ratio': out_ratio,
                'ratios': ratios['ratio'].tolist(),
            }

        except StatusException as e:
            Logger.error(f'StatusException during {self.name} run: {e}')
            raise
