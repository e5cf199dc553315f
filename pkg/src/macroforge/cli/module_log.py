# -----------------------------------------------------------------------------
# License:
# Copyright (c) 2026 macroforge developers
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
# EXPRESS OR IMPLIED.
#
#
# Name:        module_log.py
# Purpose:     Package-wide logger for simulations, ensembles and benchmarks
#
# Created:     03/02/2026
# -----------------------------------------------------------------------------
import logging

logging.basicConfig(format="[%(levelname)-8s] %(message)s")

Logger = logging.getLogger(__package__.split('.')[0])
Logger.setLevel(logging.WARNING)

# numpy RuntimeWarnings raised inside a step end up in the same stream
logging.captureWarnings(True)

_LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
}


def set_log_level(name):
    """
    set_log_level - 'debug', 'info' or 'warning'; returns the previous level name
    """
    if name not in _LEVELS:
        raise ValueError(f'Unknown log level "{name}". Valid levels are: {", ".join(_LEVELS)}')
    previous = logging.getLevelName(Logger.level).lower()
    Logger.setLevel(_LEVELS[name])
    Logger.debug(f'Log level {previous} -> {name}')
    return previous


def set_log_debug():
    return set_log_level('debug')

def set_log_info():
    return set_log_level('info')

def set_log_warning():
    return set_log_level('warning')
