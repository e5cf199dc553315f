# -----------------------------------------------------------------------------
# Name:        kernels.py
# Purpose:     Compiled composition-rejection matching of buyers to sellers
#
# Created:     16/10/2026
# -----------------------------------------------------------------------------

import math

import numpy as np
from numba import njit

from .. import _consts
from ..utils.status_exception import SamplerError


_REMOVE_BELOW = _consts._SAMPLER.REMOVE_BELOW
_RECOMPUTE_EVERY = _consts._SAMPLER.RECOMPUTE_EVERY


@njit(nogil=True, cache=True)
def _level_index(w, kmin, n_levels):
    k = math.frexp(w)[1] - 1 - kmin
    if k < 0:
        return 0
    if k >= n_levels:
        return n_levels - 1
    return k


@njit(nogil=True, cache=True)
def _attach(i, wi, level, pos, members, counts, level_sum, kmin, counters):
    lv = _level_index(wi, kmin, counts.size)
    c = counts[lv]
    members[lv, c] = i
    pos[i] = c
    counts[lv] = c + 1
    level[i] = lv
    level_sum[lv] += wi
    counters[1] += 1


@njit(nogil=True, cache=True)
def _detach(i, wi, level, pos, members, counts, level_sum, counters):
    lv = level[i]
    c = counts[lv] - 1
    last = members[lv, c]
    p = pos[i]
    members[lv, p] = last
    pos[last] = p
    counts[lv] = c
    level[i] = -1
    if c == 0:
        level_sum[lv] = 0.0
    else:
        level_sum[lv] -= wi
    counters[1] -= 1


@njit(nogil=True, cache=True)
def _recompute(w, members, counts, level_sum, acc):
    total = 0.0
    for lv in range(counts.size):
        s = 0.0
        for c in range(counts[lv]):
            s += w[members[lv, c]]
        level_sum[lv] = s
        total += s
    acc[1] = total


@njit(nogil=True, cache=True)
def _set_weight(i, wi, w, level, pos, members, counts, level_sum, kmin, acc, counters):
    old = w[i]
    if old > 0.0:
        lv = level[i]
        if wi > 0.0 and _level_index(wi, kmin, counts.size) == lv:
            level_sum[lv] += wi - old
        else:
            _detach(i, old, level, pos, members, counts, level_sum, counters)
            if wi > 0.0:
                _attach(i, wi, level, pos, members, counts, level_sum, kmin, counters)
    elif wi > 0.0:
        _attach(i, wi, level, pos, members, counts, level_sum, kmin, counters)
    w[i] = wi
    acc[1] += wi - old
    counters[0] += 1
    if counters[0] % _RECOMPUTE_EVERY == 0:
        _recompute(w, members, counts, level_sum, acc)


@njit(nogil=True, cache=True)
def _build_levels(w, kmin, n_levels):
    n = w.size
    level = np.full(n, -1, dtype=np.int64)
    pos = np.zeros(n, dtype=np.int64)
    members = np.zeros((n_levels, n), dtype=np.int64)
    counts = np.zeros(n_levels, dtype=np.int64)
    level_sum = np.zeros(n_levels)
    # acc: unspent budget, total weight; counters: updates, occupied items
    acc = np.zeros(2)
    counters = np.zeros(2, dtype=np.int64)
    for i in range(n):
        if w[i] > 0.0:
            _attach(i, w[i], level, pos, members, counts, level_sum, kmin, counters)
    _recompute(w, members, counts, level_sum, acc)
    return level, pos, members, counts, level_sum, acc, counters


@njit(nogil=True, cache=True)
def _heaviest(w, members, counts):
    lv = counts.size - 1
    while counts[lv] == 0:
        lv -= 1
    best = members[lv, 0]
    for c in range(1, counts[lv]):
        j = members[lv, c]
        if w[j] > w[best] or (w[j] == w[best] and j < best):
            best = j
    return best


@njit(nogil=True, cache=True)
def _draw(w, members, counts, level_sum, kmin, acc, uniforms, cursor):
    """Index drawn with probability w / total, or -1 when `uniforms` runs short."""
    start = cursor
    if cursor >= uniforms.size:
        return -1, start
    u = uniforms[cursor] * acc[1]
    cursor += 1
    lv = -1
    for l in range(counts.size - 1, -1, -1):
        if counts[l] > 0:
            lv = l
            if u < level_sum[l]:
                break
            u -= level_sum[l]
    bound = math.ldexp(1.0, lv + kmin + 1)
    # every member of a level but the lowest weighs at least half the bound
    while True:
        if cursor + 2 > uniforms.size:
            return -1, start
        c = counts[lv]
        j = members[lv, min(int(uniforms[cursor] * c), c - 1)]
        if uniforms[cursor + 1] * bound < w[j]:
            return j, cursor + 2
        cursor += 2


@njit(nogil=True, cache=True)
def _match(order, budgets, P, S0, w0, S, sold, revenue, spent,
           w, level, pos, members, counts, level_sum, kmin, acc, counters,
           uniforms, cursor, k, remaining, deterministic):
    """
    Serve buyers order[k:], the first of them with `remaining` budget left.
    Returns (k, remaining, cursor, done); done is False when `uniforms` ran
    short and the call must be repeated with a fresh block.
    """
    n_buyers = order.size
    while k < n_buyers:
        while remaining > 0.0 and counters[1] > 0:
            if deterministic:
                i = _heaviest(w, members, counts)
            else:
                i, cursor = _draw(w, members, counts, level_sum, kmin, acc, uniforms, cursor)
                if i < 0:
                    return k, remaining, cursor, False
            p = P[i]
            s = S[i]
            cost_all = s * p
            if cost_all > remaining:
                q = min(remaining / p, s)
                value = remaining
                remaining = 0.0
            else:
                q = s
                value = cost_all
                remaining -= value
            S[i] = s - q
            sold[i] += q
            revenue[i] += value
            spent[k] += value
            wi = 0.0
            if S0[i] > 0.0 and S[i] > S0[i] * _REMOVE_BELOW:
                wi = w0[i] * S[i] / S0[i]
            _set_weight(i, wi, w, level, pos, members, counts, level_sum, kmin, acc, counters)
        acc[0] += remaining
        k += 1
        if k < n_buyers:
            remaining = budgets[order[k]]
    return k, remaining, cursor, True


def check_weights(weights):
    """
    check_weights - float64 copy of `weights`; raises SamplerError on a negative or non-finite entry
    """
    w = np.array(weights, dtype=np.float64).ravel()
    bad = np.flatnonzero(~np.isfinite(w) | (w < 0))
    if bad.size:
        i = int(bad[0])
        raise SamplerError(f'Invalid weight {w[i]!r} at index {i}: weights must be finite and nonnegative')
    return w


def level_range(weights):
    """
    level_range - (kmin, n_levels) covering the dyadic levels a weight can reach
    while its seller's stock falls to REMOVE_BELOW of the initial stock.
    Weights below the lowest level share it.
    """
    positive = weights[weights > 0]
    top = math.frexp(float(positive.max()))[1] - 1
    bottom = math.frexp(float(positive.min()))[1] - 1
    depth = -math.frexp(_REMOVE_BELOW)[1] + 2
    n_levels = min(top - bottom + 1 + depth, _consts._SAMPLER.MAX_LEVELS)
    return top - n_levels + 1, n_levels


def match_sector(order, budgets, prices, stock0, weights, rng, deterministic=False):
    """
    match_sector - compiled matching loop of one sector.

    Buyers `order` spend `budgets[order]` in turn. Sellers are drawn with
    probability proportional to weights, or the heaviest (ties to the lowest
    index) in deterministic mode; a seller's weight follows its remaining share
    of `stock0` and drops to zero with the stock.
    Uniforms come from `rng` in blocks of at most _SAMPLER.UNIFORM_BLOCK.

    Returns (spent per buyer in order, units sold, revenue, stock left, unspent).
    """
    P = np.ascontiguousarray(prices, dtype=np.float64)
    S0 = np.ascontiguousarray(stock0, dtype=np.float64)
    w0 = check_weights(weights)
    budgets = np.ascontiguousarray(budgets, dtype=np.float64)
    order = np.ascontiguousarray(order, dtype=np.int64)
    n = P.size

    S = S0.copy()
    sold = np.zeros(n)
    revenue = np.zeros(n)
    spent = np.zeros(order.size)
    if order.size == 0 or not np.any(w0 > 0):
        return spent, sold, revenue, S, float(budgets[order].sum())

    kmin, n_levels = level_range(w0)
    w = w0.copy()
    level, pos, members, counts, level_sum, acc, counters = _build_levels(w, kmin, n_levels)

    # about five uniforms per purchase, one purchase per buyer or exhausted seller
    block = min(_consts._SAMPLER.UNIFORM_BLOCK, 8 * (order.size + n) + 16)
    uniforms = np.empty(0) if deterministic else rng.random(block)
    k, remaining, cursor, done = 0, float(budgets[order[0]]), 0, False
    while not done:
        k, remaining, cursor, done = _match(
            order, budgets, P, S0, w0, S, sold, revenue, spent,
            w, level, pos, members, counts, level_sum, kmin, acc, counters,
            uniforms, cursor, k, remaining, deterministic,
        )
        if not done:
            if cursor == 0:
                # one draw needed more than a whole block
                block *= 2
            uniforms, cursor = rng.random(block), 0
    return spent, sold, revenue, S, float(acc[0])
