# -----------------------------------------------------------------------------
# Name:        labor.py
# Purpose:     Firing, vacancies and search-and-matching of unemployed workers
#
# Created:     06/02/2026
# -----------------------------------------------------------------------------

import numpy as np

from ..cli.module_log import Logger
from ..sampling.sampler import DynamicWeightedSampler
from ..sampling.streams import BufferedUniforms
from .outcomes import LaborOutcome


def _employees_by_firm(w_act, n_firms):
    """Employed household indices grouped by employer, ascending within a firm."""
    employed = np.flatnonzero(w_act.employed)
    order = np.argsort(w_act.employer_id[employed], kind='stable')
    grouped = employed[order]
    bounds = np.searchsorted(w_act.employer_id[grouped], np.arange(n_firms + 1), side='left')
    return grouped, bounds


def labor_market(model, rng=None):
    """
    labor_market - fire down to labor demand, then match unemployed workers to vacancies.

    Stochastic mode fires uniformly at random and draws employers with a sampler
    weighted by open vacancies, unemployed workers in random order.
    Deterministic mode fires the highest household indices first and sends
    unemployed workers, in index order, to the firm with most open vacancies.
    """
    rng = model.rng if rng is None else rng
    firms, w = model.firms, model.w_act
    n_f = len(firms)
    deterministic = model.deterministic

    fired = np.zeros(n_f, dtype=np.int64)
    hired = np.zeros(n_f, dtype=np.int64)
    if n_f == 0:
        return LaborOutcome(vacancies=fired.copy(), hired=hired, fired=fired, unfilled=0)

    # DOC: -- Firing -----------------------------------------------------------
    counts = np.bincount(w.employer_id[w.employed], minlength=n_f)
    excess = counts - firms.N_d_i
    to_fire = np.flatnonzero(excess > 0)
    if to_fire.size:
        grouped, bounds = _employees_by_firm(w, n_f)
        for i in to_fire.tolist():
            k = int(excess[i])
            members = grouped[bounds[i]:bounds[i + 1]]
            out = members[-k:] if deterministic else rng.choice(members, size=k, replace=False)
            w.employed[out] = False
            w.employer_id[out] = -1
            fired[i] = k

    # DOC: -- Matching ---------------------------------------------------------
    vacancies = np.maximum(0, firms.N_d_i - (counts - fired)).astype(np.int64)
    unemployed = np.flatnonzero(~w.employed)
    if vacancies.sum() > 0 and unemployed.size:
        if not deterministic:
            unemployed = rng.permutation(unemployed)
        sampler = DynamicWeightedSampler(vacancies.astype(float))
        uniforms = None if deterministic else BufferedUniforms(rng)
        still_open = vacancies.tolist()
        for h in unemployed.tolist():
            if sampler.total() <= 0:
                break
            i = sampler.argmax() if deterministic else sampler.sample(uniforms)
            w.employer_id[h] = i
            w.employed[h] = True
            still_open[i] -= 1
            hired[i] += 1
            sampler.update(i, still_open[i])

    # DOC: -- Refresh headcounts and wages -------------------------------------
    employed = w.employed
    firms.N_i = np.bincount(w.employer_id[employed], minlength=n_f).astype(np.int64)
    safe = np.where(employed, w.employer_id, 0)
    w.wage = np.where(employed, firms.W_i[safe], 0.0)
    w.sector_id = np.where(employed, firms.sector_id[safe], -1)

    outcome = LaborOutcome(vacancies=vacancies, hired=hired, fired=fired, unfilled=int(vacancies.sum() - hired.sum()))
    Logger.debug(f'Labor market q{model.agg.t}: {outcome.n_fired} fired, {outcome.n_hired} hired, {outcome.unfilled} vacancies unfilled')
    return outcome
