# -----------------------------------------------------------------------------
# Name:        simulation_runner.py
# Purpose:     Single simulation run with export and optional plot
#
# Created:     09/02/2026
# -----------------------------------------------------------------------------

from .. import _consts
from ..cli.module_log import Logger
from ..engine.runner import run
from ..io.export import export_data
from ..io.plot import plot_data
from ..utils import filesystem
from ..utils.status_exception import StatusException
from ._base import _SimulationProcess


class _SimulationRunner(_SimulationProcess):
    """
    Run one simulation and export the tracked variables.
    """

    name = f'{_consts._PACKAGE_NAME}__SimulationRunner'

    def argument_validation(self, **kwargs):
        validated = self.validate_common(
            config=kwargs.get('config'), T=kwargs.get('T'), seed=kwargs.get('seed'),
            out=kwargs.get('out'), out_required=True,
        )
        plot = kwargs.get('plot', None)
        if plot is not None and (not isinstance(plot, str) or filesystem.justext(plot) != 'svg'):
            raise StatusException(StatusException.INVALID, 'plot must be a path ending with .svg')
        validated['plot'] = plot
        validated['deterministic'] = bool(kwargs.get('deterministic', False))
        validated['sector_parallel'] = kwargs.get('sector_parallel', False)
        return validated

    def run(self, config=None, T=None, seed=None, out=None, deterministic=False, sector_parallel=False, plot=None, **kwargs):
        """
        Returns:
            dict: status, output paths, quarters simulated and agent count
        """
        try:
            args = self.argument_validation(
                config=config, T=T, seed=seed, out=out, deterministic=deterministic,
                sector_parallel=sector_parallel, plot=plot,
            )
            model = self.build_model(args['config'], args['T'], args['seed'], deterministic=args['deterministic'])
            Logger.info(f'Running {args["T"]} quarters with {model.n_agents} agents (seed {args["seed"]})')

            data = run(model, parallel_sectors=args['sector_parallel'])
            export_data(data, args['out'])
            if args['plot']:
                plot_data(data, args['plot'])

            return {
                'status': StatusException.OK,
                'out': args['out'],
                'plot': args['plot'],
                'quarters': len(data),
                'agents': model.n_agents,
            }

        except StatusException as e:
            Logger.error(f'StatusException during {self.name} run: {e}')
            raise
