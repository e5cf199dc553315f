# -----------------------------------------------------------------------------
# Name:        export.py
# Purpose:     Table (CSV) and structured (netCDF) export of simulation data
#
# Created:     08/02/2026
# -----------------------------------------------------------------------------

import numpy as np
import pandas as pd
import xarray as xr

from .. import _consts
from ..cli.module_log import Logger
from ..engine.tracker import SimulationData
from ..utils import filesystem
from ..utils.status_exception import StatusException


_FORMATS = _consts._EXPORT_FORMATS


def _is_ensemble(data):
    return not isinstance(data, SimulationData)


def _format_of(path, format):
    if format is not None:
        if format not in (_FORMATS.TABLE, _FORMATS.STRUCTURED):
            raise StatusException(StatusException.INVALID, f'Unknown export format "{format}"')
        return format
    ext = filesystem.justext(path)
    if ext not in _consts._EXPORT_EXTENSIONS:
        raise StatusException(StatusException.INVALID, f'Cannot infer the export format from extension ".{ext}" (use .csv or .nc)')
    return _consts._EXPORT_EXTENSIONS[ext]


def to_table(data):
    """
    to_table - one row per quarter (and run, for an ensemble), one column per variable
    """
    if not _is_ensemble(data):
        return data.to_dataframe()
    frames = []
    for run_index, member in enumerate(data, start=1):
        df = member.to_dataframe()
        df.insert(0, 'run', np.full(len(df), run_index, dtype=np.int64))
        frames.append(df)
    return pd.concat(frames, ignore_index=True)


def to_structured(data):
    """
    to_structured - xarray Dataset with dims (run, quarter); run has length 1 for a single run
    """
    members = list(data) if _is_ensemble(data) else [data]
    names = members[0].names
    quarters = np.arange(1, len(members[0]) + 1, dtype=np.int64)
    runs = np.arange(1, len(members) + 1, dtype=np.int64)
    ds = xr.Dataset(
        {name: (('run', 'quarter'), np.vstack([member[name] for member in members])) for name in names},
        coords={'run': runs, 'quarter': quarters},
    )
    ds.attrs['ensemble'] = int(_is_ensemble(data))
    return ds


def export_data(data, path, format=None):
    """
    export_data - write a SimulationData (or a sequence of them) to `path`.

    Args:
        format: 'table' (CSV, 17 significant digits, LF line endings) or 'structured'
            (netCDF); inferred from the extension when omitted
    """
    if _is_ensemble(data):
        data = list(data)
        if not data:
            raise StatusException(StatusException.INVALID, 'Nothing to export: empty ensemble')
    elif len(data) == 0:
        raise StatusException(StatusException.INVALID, 'Nothing to export: no quarters simulated')

    format = _format_of(path, format)
    filesystem.mkdirs(path)
    if format == _FORMATS.TABLE:
        to_table(data).to_csv(path, index=False, float_format='%.17g', lineterminator='\n')
    else:
        to_structured(data).to_netcdf(path, engine='netcdf4')
    Logger.debug(f'Exported {format} data to {path}')
    return path


def _members_from_table(df):
    variables = [c for c in df.columns if c not in ('run', 'quarter')]
    if 'run' not in df.columns:
        return SimulationData(series={name: df[name].to_numpy() for name in variables})
    return [
        SimulationData(series={name: group[name].to_numpy() for name in variables})
        for _, group in df.groupby('run', sort=True)
    ]


def load_data(path, format=None):
    """
    load_data - read back an export: a SimulationData for a single run, a list for an ensemble
    """
    format = _format_of(path, format)
    if format == _FORMATS.TABLE:
        df = pd.read_csv(path, float_precision='round_trip')
        return _members_from_table(df)

    with xr.open_dataset(path, engine='netcdf4') as ds:
        ds = ds.load()
    members = [
        SimulationData(series={name: ds[name].sel(run=run).values for name in ds.data_vars})
        for run in ds['run'].values
    ]
    return members if ds.attrs.get('ensemble', 1) else members[0]
