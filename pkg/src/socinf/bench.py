"""Random instances and the iteration-count benchmark.

Random data uses numpy's ``PCG64`` bit generator (``numpy.random.default_rng``)
and its ziggurat standard-normal sampler.  Every coordinate of every point,
heights included, is an independent standard normal draw.
"""
from __future__ import annotations

import concurrent.futures
import dataclasses
import json
import math
import time
from typing import Iterable

import numpy as np

from .model import Instance
from .oracle import kkt_check
from .solver import SolverConfig, solve


def generate_normal(n: int, m: int, seed) -> Instance:
    if n < 2 or m < 1:
        raise ValueError(f"need n >= 2 and m >= 1, got n={n}, m={m}")
    rng = np.random.default_rng(seed)
    return Instance.from_array(rng.standard_normal((m, n)))


def dataset_seed(seed: int, n: int, m: int, k: int) -> int:
    """Independent per-dataset seed derived from the benchmark seed."""
    return int(np.random.SeedSequence([seed, n, m, k]).generate_state(1, dtype=np.uint64)[0])


@dataclasses.dataclass
class BenchRow:
    n: int
    m: int
    datasets: int
    mean_iters: float
    mean_updates: float
    mean_time_s: float
    failures: int = 0
    kkt_failures: int = 0


def _one(args):
    n, m, seed, k, cfg, check = args
    inst = generate_normal(n, m, dataset_seed(seed, n, m, k))
    t0 = time.perf_counter()
    try:
        res = solve(inst, cfg)
    except Exception as err:  # reported per dataset, excluded from the means
        return None, repr(err)
    elapsed = time.perf_counter() - t0
    ok = True
    if check:
        ok = kkt_check(inst, res.x_star, res.dual, 1e-7).passed
    return (res.stats.major_iterations, res.stats.spair_updates, elapsed, ok), None


def run_bench(
    grid: Iterable,
    datasets: int = 25,
    seed: int = 0,
    cfg: SolverConfig = None,
    workers: int = 1,
    check_kkt: bool = True,
) -> list:
    """Average iteration statistics over ``datasets`` normal instances per ``(n, m)``."""
    cfg = cfg or SolverConfig()
    rows = []
    for n, m in grid:
        jobs = [(n, m, seed, k, cfg, check_kkt) for k in range(datasets)]
        if workers > 1:
            with concurrent.futures.ProcessPoolExecutor(workers) as pool:
                outs = list(pool.map(_one, jobs))
        else:
            outs = [_one(j) for j in jobs]
        good = [o for o, err in outs if o is not None]
        failures = len(outs) - len(good)
        if good:
            it, up, tm, ok = (np.array(col) for col in zip(*good))
            rows.append(BenchRow(n, m, datasets, float(it.mean()), float(up.mean()),
                                 float(tm.mean()), failures, int((~ok.astype(bool)).sum())))
        else:
            rows.append(BenchRow(n, m, datasets, math.nan, math.nan, math.nan, failures, 0))
    return rows


def format_table(rows) -> str:
    lines = [
        f"{'n':>6} {'m':>8} | {'Iters':>8} {'S-pair':>8} {'Time(s)':>9} | {'fail':>4}",
        f"{'':>6} {'':>8} | {'':>8} {'updates':>8} {'':>9} |",
        "-" * 56,
    ]
    for r in rows:
        lines.append(f"{r.n:>6} {r.m:>8} | {r.mean_iters:>8.2f} {r.mean_updates:>8.2f} "
                     f"{r.mean_time_s:>9.4f} | {r.failures + r.kkt_failures:>4}")
    return "\n".join(lines)


def rows_to_json(rows) -> str:
    return json.dumps([dataclasses.asdict(r) for r in rows], indent=1)
