# -----------------------------------------------------------------------------
# Name:        config.py
# Purpose:     YAML configuration documents and the bundled fixture
#
# Created:     08/02/2026
# -----------------------------------------------------------------------------

import os
from importlib import resources

import yaml

from .. import _consts
from ..cli.module_log import Logger
from ..model.schemas import validate_inputs, parameters_dict
from ..utils import filesystem
from ..utils.status_exception import ConfigError, SchemaError


_SECTIONS = ['parameters', 'initial_conditions']


def bundled_configs():
    """
    bundled_configs - names of the configuration documents shipped with the package
    """
    folder = resources.files('macroforge.data')
    return sorted(filesystem.forceext(entry.name, '') for entry in folder.iterdir() if entry.name.endswith('.yaml'))


def _read_source(source):
    name = os.fspath(source) if isinstance(source, os.PathLike) else str(source)
    stem = filesystem.forceext(name, '') if filesystem.justext(name) == 'yaml' else name

    if stem in bundled_configs() and not os.path.isfile(name):
        return resources.files('macroforge.data').joinpath(f'{stem}.yaml').read_text(encoding='utf-8'), stem
    if os.path.isfile(name):
        with open(name, 'r', encoding='utf-8') as stream:
            return stream.read(), name
    if '\n' in name or ':' in name:
        return name, '<text>'
    raise ConfigError(f'Config "{name}" is neither a file, YAML text, nor a bundled config ({", ".join(bundled_configs())})')


def load_config_document(source=_consts._FIXTURE_NAME):
    """
    load_config_document - parsed and validated document as a dict with
    'parameters' (ParameterSet), 'initial_conditions' (InitialConditions) and 'meta'.

    Args:
        source: path, YAML text, or the name of a bundled config
    """
    text, origin = _read_source(source)
    try:
        document = yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark or e.context_mark
        line, column = (mark.line + 1, mark.column + 1) if mark is not None else (None, None)
        raise ConfigError(f'Cannot parse {origin}: {e.problem or e}', line, column)
    except yaml.YAMLError as e:
        raise ConfigError(f'Cannot parse {origin}: {e}')

    if not isinstance(document, dict):
        raise SchemaError([('<document>', 'must be a mapping with sections ' + ', '.join(_SECTIONS))])
    missing = [(section, 'Field required') for section in _SECTIONS if section not in document]
    if missing:
        raise SchemaError(missing)

    params, ic = validate_inputs(document['parameters'], document['initial_conditions'])
    Logger.debug(f'Loaded config {origin}: S={params.S}, scale={params.scale}')
    return {
        'parameters': params,
        'initial_conditions': ic,
        'meta': dict(document.get('meta') or {}),
    }


def load_config(source=_consts._FIXTURE_NAME):
    """
    load_config - (ParameterSet, InitialConditions) from a path, YAML text or bundled name
    """
    document = load_config_document(source)
    return document['parameters'], document['initial_conditions']


def serialize_config(params, ic, meta=None):
    """
    serialize_config - YAML text that load_config reads back to equal structures
    """
    document = {}
    if meta:
        document['meta'] = dict(meta)
    document['parameters'] = parameters_dict(params)
    document['initial_conditions'] = ic.model_dump()
    return yaml.safe_dump(document, sort_keys=False, default_flow_style=None, allow_unicode=True)


def save_config(path, params, ic, meta=None):
    filesystem.mkdirs(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as stream:
        stream.write(serialize_config(params, ic, meta))
    return path


def bundled_golden(source, T):
    """
    bundled_golden - path of the golden table shipped with bundled config `source`
    for a T-quarter deterministic run, or None when there is none
    """
    name = os.fspath(source) if isinstance(source, os.PathLike) else str(source)
    stem = filesystem.forceext(name, '') if filesystem.justext(name) == 'yaml' else name
    if stem not in bundled_configs() or os.path.isfile(name):
        return None
    entry = resources.files('macroforge.data').joinpath(_consts._GOLDEN_FOLDER, f'{stem}_T{int(T)}.csv')
    return str(entry) if entry.is_file() else None
