# -----------------------------------------------------------------------------
# Name:        sampler.py
# Purpose:     Dynamic weighted sampling by composition and rejection
#
# Created:     05/02/2026
# -----------------------------------------------------------------------------

import math

import numpy as np

from .. import _consts
from ..utils.status_exception import SamplerError, EmptyDistributionError


def _level_of(w):
    """Dyadic level k with 2^k <= w < 2^(k+1)."""
    return math.frexp(w)[1] - 1


class DynamicWeightedSampler():
    """
    Mutable discrete distribution over indices 0..n-1.

    Items with positive weight live in the level of their dyadic range;
    a draw picks a level in proportion to its total, then an item of the
    level by rejection against the level's upper bound 2^(k+1).
    Zero-weight items belong to no level.
    """

    def __init__(self, weights):
        weights = np.asarray(weights, dtype=float).ravel()
        if weights.size == 0:
            raise SamplerError('Sampler needs at least one weight')
        bad = np.flatnonzero(~np.isfinite(weights) | (weights < 0))
        if bad.size:
            i = int(bad[0])
            raise SamplerError(f'Invalid weight {weights[i]!r} at index {i}: weights must be finite and nonnegative')

        self.n = int(weights.size)
        self._w = weights.tolist()
        self._level = [None] * self.n
        self._pos = [0] * self.n
        self._members = {}
        self._level_total = {}
        self._total = 0.0
        self._updates = 0

        for i, w in enumerate(self._w):
            if w > 0:
                self._attach(i, w)
        self._recompute()


    def _attach(self, i, w):
        k = _level_of(w)
        members = self._members.get(k)
        if members is None:
            members = self._members[k] = []
            self._level_total[k] = 0.0
        self._level[i] = k
        self._pos[i] = len(members)
        members.append(i)
        self._level_total[k] += w

    def _detach(self, i, w):
        k = self._level[i]
        members = self._members[k]
        last = members.pop()
        if last != i:
            p = self._pos[i]
            members[p] = last
            self._pos[last] = p
        self._level[i] = None
        if members:
            self._level_total[k] -= w
        else:
            del self._members[k]
            del self._level_total[k]

    def _recompute(self):
        for k, members in self._members.items():
            self._level_total[k] = math.fsum(self._w[i] for i in members)
        self._total = math.fsum(self._level_total.values())


    def total(self):
        """Current total weight; exactly 0.0 when every weight is zero."""
        if not self._members:
            return 0.0
        return self._total

    def weight(self, i):
        return self._w[i]

    def weights(self):
        return np.array(self._w)

    def levels(self):
        """Occupied dyadic levels, ascending."""
        return sorted(self._members)

    def update(self, i, w):
        """
        update - set weights[i] = w in amortized constant time
        """
        if not 0 <= i < self.n:
            raise SamplerError(f'Index {i} out of range for a sampler of {self.n} items')
        w = float(w)
        if not (math.isfinite(w) and w >= 0):
            raise SamplerError(f'Invalid weight {w!r} at index {i}: weights must be finite and nonnegative')

        old = self._w[i]
        if old > 0:
            k_old = self._level[i]
            if w > 0 and _level_of(w) == k_old:
                self._level_total[k_old] += w - old
            else:
                self._detach(i, old)
                if w > 0:
                    self._attach(i, w)
        elif w > 0:
            self._attach(i, w)
        self._w[i] = w
        self._total += w - old

        self._updates += 1
        if self._updates % _consts._SAMPLER.RECOMPUTE_EVERY == 0:
            self._recompute()

    def sample(self, rng):
        """
        sample - index i with probability weights[i] / total.
        `rng` needs only a .random() method returning floats in [0, 1).
        """
        if not self._members:
            raise EmptyDistributionError()

        while True:
            u = rng.random() * self._total
            chosen = None
            for k, level_total in self._level_total.items():
                chosen = k
                if u < level_total:
                    break
                u -= level_total
            members = self._members[chosen]
            bound = math.ldexp(1.0, chosen + 1)
            # within a level every item has at least half the bound: >= 1/2 acceptance
            while True:
                size = len(members)
                j = members[min(int(rng.random() * size), size - 1)]
                if rng.random() * bound < self._w[j]:
                    return j

    def argmax(self):
        """
        argmax - heaviest item, ties to the lowest index (deterministic seller choice)
        """
        if not self._members:
            raise EmptyDistributionError()
        top = max(self._members)
        return min(self._members[top], key=lambda j: (-self._w[j], j))


def sampler_new(weights):
    return DynamicWeightedSampler(weights)
