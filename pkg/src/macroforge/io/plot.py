# -----------------------------------------------------------------------------
# Name:        plot.py
# Purpose:     SVG line charts of tracked variables
#
# Created:     08/02/2026
# -----------------------------------------------------------------------------

import math

import numpy as np
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

from .. import _consts
from ..engine.runner import ensemble_mean_and_sem
from ..utils import filesystem


def _figure(names, ncols=5):
    nrows = max(1, math.ceil(len(names) / ncols))
    fig, axes = plt.subplots(nrows, ncols, figsize=(3.2 * ncols, 2.4 * nrows), squeeze=False)
    for ax in axes.ravel()[len(names):]:
        ax.set_visible(False)
    return fig, axes.ravel()


def _save(fig, path):
    filesystem.mkdirs(path)
    with matplotlib.rc_context({'svg.hashsalt': _consts._PACKAGE_NAME, 'svg.fonttype': 'path'}):
        fig.tight_layout()
        fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
    return path


def plot_data(data, path, variables=None):
    """
    plot_data - one panel per variable: quarter on x, value on y, variable name as title
    """
    names = variables or data.names
    fig, axes = _figure(names)
    quarters = np.arange(1, len(data) + 1)
    for ax, name in zip(axes, names):
        ax.plot(quarters, data[name], linewidth=1.2)
        ax.set_title(name, fontsize=8)
        ax.tick_params(labelsize=6)
    return _save(fig, path)


def plot_data_vector(data_vector, path, variables=None):
    """
    plot_data_vector - ensemble mean per quarter with a shaded band of one standard error
    """
    names = variables or data_vector[0].names
    fig, axes = _figure(names)
    quarters = np.arange(1, len(data_vector[0]) + 1)
    for ax, name in zip(axes, names):
        mean, sem = ensemble_mean_and_sem(data_vector, name)
        ax.plot(quarters, mean, linewidth=1.2)
        ax.fill_between(quarters, mean - sem, mean + sem, alpha=0.3, linewidth=0)
        ax.set_title(name, fontsize=8)
        ax.tick_params(labelsize=6)
    return _save(fig, path)
