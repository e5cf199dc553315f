# -----------------------------------------------------------------------------
# Name:        credit.py
# Purpose:     Bank lending to firms under a leverage cap
#
# Created:     06/02/2026
# -----------------------------------------------------------------------------

import numpy as np

from ..cli.module_log import Logger
from .outcomes import CreditOutcome


def credit_market(model):
    """
    credit_market - lend each firm its wage-bill financing gap; when the
    requests exceed the room left under lambda * E_k, every request is
    scaled by the same factor.
    """
    firms, bank = model.firms, model.bank
    requested = np.maximum(0.0, firms.W_i * firms.N_d_i - firms.D_i)
    capacity = max(0.0, model.prop.lambda_ * bank.E_k - float(firms.L_i.sum()))
    total = float(requested.sum())

    if total <= capacity:
        granted = requested.copy()
    else:
        granted = requested * (capacity / total)

    firms.L_i = firms.L_i + granted
    firms.D_i = firms.D_i + granted
    bank.L = float(firms.L_i.sum())
    bank.D += float(granted.sum())

    if total > capacity:
        Logger.debug(f'Credit rationed at q{model.agg.t}: requested {total:.6g}, capacity {capacity:.6g}')
    return CreditOutcome(requested=requested, granted=granted, capacity=capacity)
