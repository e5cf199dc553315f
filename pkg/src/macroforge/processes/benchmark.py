# -----------------------------------------------------------------------------
# Name:        benchmark.py
# Purpose:     Per-step wall time across agent counts and sector-parallel workers
#
# Created:     11/02/2026
# -----------------------------------------------------------------------------

import time
from dataclasses import dataclass, asdict, field

import numpy as np
import pandas as pd

from .. import _consts
from ..cli.module_log import Logger
from ..cli.module_version import machine_descriptor
from ..engine.step import step
from ..utils import filesystem
from ..utils.module_status import set_status, progress_of
from ..utils.status_exception import StatusException
from ._base import _SimulationProcess


_MIN_STEPS = 5
_WARMUP_STEPS = 1


@dataclass
class BenchReport:
    """One timed (scale, workers) configuration."""
    scale: int
    agents: int
    quarters: int
    mean_step: float
    std_step: float
    workers: int
    timestamp: str = field(default_factory=lambda: filesystem.now().isoformat(timespec='seconds'))
    machine: str = field(default_factory=machine_descriptor)
    status: str = StatusException.OK


def time_steps(model, steps, workers):
    """
    time_steps - wall time of each of `steps` steps, after the warm-up
    """
    parallel_sectors = workers if workers > 1 else False
    for _ in range(_WARMUP_STEPS):
        step(model, parallel_sectors=parallel_sectors)
    times = []
    for _ in range(steps):
        t0 = time.perf_counter()
        step(model, parallel_sectors=parallel_sectors)
        times.append(time.perf_counter() - t0)
    return np.asarray(times)


def summarize(reports):
    """
    summarize - per-agent step time, time ratio of the largest to the smallest
    configuration at each worker count, and sector-parallel speedup at each scale
    """
    timed = [r for r in reports if r.status == StatusException.OK]
    per_agent = {(r.scale, r.workers): r.mean_step / r.agents for r in timed}

    ratios = {}
    for w in sorted({r.workers for r in timed}):
        rows = sorted((r for r in timed if r.workers == w), key=lambda r: r.agents)
        if len(rows) > 1:
            ratios[w] = rows[-1].mean_step / rows[0].mean_step

    speedups = {}
    for s in sorted({r.scale for r in timed}):
        rows = sorted((r for r in timed if r.scale == s), key=lambda r: r.workers)
        if len(rows) > 1:
            speedups[s] = {r.workers: rows[0].mean_step / r.mean_step for r in rows}

    return {'per_agent': per_agent, 'ratio_large_small': ratios, 'speedup': speedups}


class _Benchmark(_SimulationProcess):
    """
    Time step() for each (scale, workers) pair. Initialization is not timed.
    """

    name = f'{_consts._PACKAGE_NAME}__Benchmark'

    def argument_validation(self, **kwargs):
        validated = self.validate_common(config=kwargs.get('config'), T=1, seed=kwargs.get('seed'),
                                         out=kwargs.get('out'), out_ext=('csv',))

        scales = kwargs.get('scales') or [1000]
        if any(isinstance(s, bool) or not isinstance(s, int) or s < 1 for s in scales):
            raise StatusException(StatusException.INVALID, f'scales must be positive integers, got {scales!r}')
        workers = kwargs.get('workers') or [1]
        if any(isinstance(w, bool) or not isinstance(w, int) or w < 1 for w in workers):
            raise StatusException(StatusException.INVALID, f'workers must be positive integers, got {workers!r}')
        steps = kwargs.get('steps', 10)
        if isinstance(steps, bool) or not isinstance(steps, int) or steps < _MIN_STEPS:
            raise StatusException(StatusException.INVALID, f'steps must be an integer >= {_MIN_STEPS}, got {steps!r}')

        validated.update(scales=list(scales), workers=list(workers), steps=steps)
        return validated

    def bench_one(self, config, scale, steps, workers, seed):
        quarters = steps + _WARMUP_STEPS
        try:
            model = self.build_model(config, quarters, seed, scale=scale)
        except MemoryError:
            Logger.warning(f'Scale {scale}: not enough memory to initialise, skipped')
            return BenchReport(scale, 0, 0, float('nan'), float('nan'), workers, status=StatusException.SKIPPED)
        agents = model.n_agents
        try:
            times = time_steps(model, steps, workers)
        except MemoryError:
            Logger.warning(f'Scale {scale}, workers {workers}: out of memory while stepping, skipped')
            return BenchReport(scale, agents, 0, float('nan'), float('nan'), workers, status=StatusException.SKIPPED)
        report = BenchReport(scale, agents, steps, float(times.mean()), float(times.std(ddof=1)), workers)
        Logger.info(f'Scale {scale} ({agents} agents), {workers} worker(s): {report.mean_step * 1e3:.2f} ms/step')
        return report

    def run(self, config=None, scales=None, steps=10, workers=None, out=None, seed=None, **kwargs):
        """
        Returns:
            dict: status (PARTIAL when some rows were skipped), BenchReport rows and summary
        """
        try:
            args = self.argument_validation(config=config, scales=scales, steps=steps, workers=workers, out=out, seed=seed)

            pairs = [(s, w) for s in args['scales'] for w in args['workers']]
            reports = []
            for i, (scale, w) in enumerate(pairs):
                set_status(progress_of(i, len(pairs)), f'Benchmark scale={scale} workers={w}')
                reports.append(self.bench_one(args['config'], scale, args['steps'], w, args['seed']))

            if args['out']:
                filesystem.mkdirs(args['out'])
                pd.DataFrame([asdict(r) for r in reports]).to_csv(
                    args['out'], index=False, float_format='%.17g', lineterminator='\n')

            skipped = [r for r in reports if r.status != StatusException.OK]
            return {
                'status': StatusException.PARTIAL if skipped else StatusException.OK,
                'reports': reports,
                'summary': summarize(reports),
                'out': args['out'],
                **({'message': f'{len(skipped)} configuration(s) skipped for lack of memory'} if skipped else {}),
            }

        except StatusException as e:
            Logger.error(f'StatusException during {self.name} run: {e}')
            raise
