# -----------------------------------------------------------------------------
# Name:        ensemble_runner.py
# Purpose:     Monte Carlo ensemble with export
#
# Created:     09/02/2026
# -----------------------------------------------------------------------------

from .. import _consts
from ..cli.module_log import Logger
from ..engine.runner import ensemblerun, default_workers
from ..io.export import export_data
from ..io.plot import plot_data_vector
from ..utils import filesystem
from ..utils.status_exception import StatusException
from ._base import _SimulationProcess


class _EnsembleRunner(_SimulationProcess):
    """
    Run an ensemble of independent simulations and export them in one table.
    """

    name = f'{_consts._PACKAGE_NAME}__EnsembleRunner'

    def validate_ensemble(self, runs=None, workers=None):
        runs = _consts._DEFAULT_RUNS if runs is None else runs
        if isinstance(runs, bool) or not isinstance(runs, int) or runs < 1:
            raise StatusException(StatusException.INVALID, f'runs must be a positive integer, got {runs!r}')
        workers = default_workers() if workers is None else workers
        if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
            raise StatusException(StatusException.INVALID, f'workers must be a positive integer, got {workers!r}')
        return runs, workers

    def argument_validation(self, **kwargs):
        validated = self.validate_common(
            config=kwargs.get('config'), T=kwargs.get('T'), seed=kwargs.get('master_seed'),
            out=kwargs.get('out'), out_required=True,
        )
        validated['runs'], validated['workers'] = self.validate_ensemble(kwargs.get('runs'), kwargs.get('workers'))
        plot = kwargs.get('plot', None)
        if plot is not None and filesystem.justext(plot) != 'svg':
            raise StatusException(StatusException.INVALID, 'plot must be a path ending with .svg')
        validated['plot'] = plot
        return validated

    def run(self, config=None, T=None, runs=None, master_seed=None, workers=None, out=None, plot=None, **kwargs):
        """
        Returns:
            dict: status, output path, runs and quarters
        """
        try:
            args = self.argument_validation(
                config=config, T=T, runs=runs, master_seed=master_seed, workers=workers, out=out, plot=plot,
            )
            model = self.build_model(args['config'], args['T'], args['seed'])
            Logger.info(f'Ensemble of {args["runs"]} runs x {args["T"]} quarters on {args["workers"]} worker(s)')

            data_vector = ensemblerun(
                model, args['runs'], master_seed=args['seed'],
                parallel=args['workers'] > 1, workers=args['workers'],
            )
            export_data(data_vector, args['out'])
            if args['plot']:
                plot_data_vector(data_vector, args['plot'])

            return {
                'status': StatusException.OK,
                'out': args['out'],
                'plot': args['plot'],
                'runs': len(data_vector),
                'quarters': len(data_vector[0]),
            }

        except StatusException as e:
            Logger.error(f'StatusException during {self.name} run: {e}')
            raise
