# -----------------------------------------------------------------------------
# Name:        _base.py
# Purpose:     Argument checks and model construction shared by the CLI processes
#
# Created:     09/02/2026
# -----------------------------------------------------------------------------

from .. import _consts
from ..cli.module_log import Logger
from ..io.config import load_config
from ..model.initialisation import init_model
from ..model.model import seed_model, set_deterministic
from ..utils import filesystem
from ..utils.status_exception import StatusException


class _SimulationProcess():
    """
    Base of the CLI processes: common validation and model construction.
    """

    name = f'{_consts._PACKAGE_NAME}__Process'

    def validate_common(self, config=None, T=None, seed=None, out=None, out_required=False, out_ext=('csv', 'nc')):
        """
        Validate the arguments every process accepts.

        Returns:
            dict: config, T, seed, out with defaults applied
        """
        Logger.debug(f'[{self.name}] Validating arguments: config={config!r}, T={T!r}, seed={seed!r}, out={out!r}')

        config = config or _consts._FIXTURE_NAME
        if not isinstance(config, str):
            raise StatusException(StatusException.INVALID, 'config must be a path, YAML text or a bundled config name')

        T = _consts._DEFAULT_T if T is None else T
        if isinstance(T, bool) or not isinstance(T, int) or T < 1:
            raise StatusException(StatusException.INVALID, f'T must be a positive integer, got {T!r}')

        seed = _consts._DEFAULT_SEED if seed is None else seed
        if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
            raise StatusException(StatusException.INVALID, f'seed must be a nonnegative integer, got {seed!r}')

        if out is None and out_required:
            raise StatusException(StatusException.INVALID, 'out is required')
        if out is not None:
            if not isinstance(out, str):
                raise StatusException(StatusException.INVALID, 'out must be a file path')
            if filesystem.justext(out) not in out_ext:
                raise StatusException(StatusException.INVALID, f'out must end with one of: {", ".join("." + e for e in out_ext)}')

        return {'config': config, 'T': T, 'seed': seed, 'out': out}

    def build_model(self, config, T, seed, deterministic=False, scale=None):
        params, ic = load_config(config)
        if scale is not None:
            params = params.model_copy(update={'scale': int(scale)})
        model = init_model(params, ic, T)
        seed_model(model, seed, 1)
        if deterministic:
            set_deterministic(model, True)
        return model
