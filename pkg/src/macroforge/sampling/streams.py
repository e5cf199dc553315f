# -----------------------------------------------------------------------------
# Name:        streams.py
# Purpose:     Counter-based random streams keyed by run, quarter and sector
#
# Created:     05/02/2026
# -----------------------------------------------------------------------------

import numpy as np


def run_stream(master_seed, run):
    """
    run_stream - generator of one ensemble member, independent of any other key
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(master_seed), spawn_key=(int(run),))))


def sector_stream(master_seed, run, quarter, sector):
    """
    sector_stream - generator of one sector's goods market in one quarter.
    Keyed, so the draws do not depend on thread scheduling.
    """
    seq = np.random.SeedSequence(int(master_seed), spawn_key=(int(run), int(quarter), int(sector)))
    return np.random.Generator(np.random.Philox(seq))


class BufferedUniforms():
    """
    Serves rng.random() scalars from blocks drawn in one numpy call.
    Drop-in for Generator where only .random() is used (sampler draws).
    """

    def __init__(self, rng, block=4096):
        self._rng = rng
        self._block = block
        self._buffer = []

    def random(self):
        if not self._buffer:
            self._buffer = self._rng.random(self._block).tolist()
            self._buffer.reverse()
        return self._buffer.pop()
