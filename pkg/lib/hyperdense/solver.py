# Copyright (C) 2026 East Asian Observatory.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""
The row equalization solver.

A sweep equalizes every row of the support matrix in ascending edge
order, each row seeing the column sums left by the rows before it.  Each
row update exactly minimizes sum_j w_j s_j^2 over that row, so repeated
sweeps drive the column sums towards the balanced matrix, whose largest
column sum is the maximum subgraph density.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
import json
import logging
import threading
import time

import numpy as np

from hyperdense.certificate import best_certificate, better_certificate
from hyperdense.config import PARALLEL, SolverConfig
from hyperdense.equalize import _sweep_rows
from hyperdense.support import init_support_matrix, s_max

logger = logging.getLogger(__name__)

SweepStats = namedtuple(
    'SweepStats', ('s_max_before', 's_max_after', 'rows_changed'))

SweepRecord = namedtuple(
    'SweepRecord', ('sweep', 's_max', 'density', 'wall_time'))

SolveResult = namedtuple(
    'SolveResult', ('matrix', 'trace', 'certificate', 'stop_reason'))

STOP_CERTIFIED = 'certified'
STOP_STALLED = 'stalled'
STOP_MAX_SWEEPS = 'max_sweeps'

# Row blocks per worker in a parallel sweep.  Each block starts from a
# fresh copy of the shared column sums.
BLOCKS_PER_WORKER = 8


class SolveTrace(object):
    """
    Per-sweep records of a solve.  Record 0 describes the initial matrix.
    density is None for sweeps without a certificate attempt.
    """

    def __init__(self):
        self.records = []

    def append(self, record):
        self.records.append(record)

    @property
    def sweeps(self):
        if not self.records:
            return 0
        return self.records[-1].sweep

    @property
    def wall_time(self):
        if not self.records:
            return 0.0
        return self.records[-1].wall_time

    def write_jsonl(self, file_):
        for record in self.records:
            file_.write(json.dumps(record._asdict()))
            file_.write('\n')


def sweep(matrix, config=None):
    """
    Sequential sweep over all rows in ascending edge order.

    Returns SweepStats(s_max before, s_max after, rows changed), both
    maxima taken from the cached column sums.
    """

    h = matrix.hypergraph
    (before, _) = s_max(matrix)

    changed = _sweep_rows(
        h.edge_ptr, h.edge_vertices, matrix.values,
        h.vertex_weights, h.edge_weights, matrix.column_sums, 0, h.m)

    (after, _) = s_max(matrix)
    return SweepStats(before, after, int(changed))


def _row_blocks(m, workers):
    """
    Contiguous (start, stop) row ranges: one chunk per worker, each cut
    into blocks.
    """

    chunks = np.linspace(0, m, workers + 1).astype(np.int64)
    result = []
    for w in range(workers):
        bounds = np.unique(np.linspace(
            chunks[w], chunks[w + 1], BLOCKS_PER_WORKER + 1).astype(np.int64))
        result.append([(int(lo), int(hi))
                       for (lo, hi) in zip(bounds[:-1], bounds[1:])])
    return result


def parallel_sweep(matrix, config):
    """
    Sweep with the rows split into contiguous chunks, one per worker
    thread.

    Each worker equalizes its rows in blocks against a private copy of
    the shared column sums taken at the start of the block, then adds its
    changes to the shared sums under a lock.  Other workers' updates are
    therefore seen with up to one block of delay.  With several workers
    the column sums are rebuilt from scratch at the end of the sweep.
    """

    h = matrix.hypergraph
    workers = config.workers
    lock = threading.Lock()
    (before, _) = s_max(matrix)

    def run_chunk(blocks):
        changed = 0
        for (lo, hi) in blocks:
            elo = h.edge_ptr[lo]
            ehi = h.edge_ptr[hi]
            with lock:
                local = matrix.column_sums.copy()
            old = matrix.values[elo:ehi].copy()

            changed += _sweep_rows(
                h.edge_ptr, h.edge_vertices, matrix.values,
                h.vertex_weights, h.edge_weights, local, lo, hi)

            delta = matrix.values[elo:ehi] - old
            with lock:
                np.add.at(matrix.column_sums, h.edge_vertices[elo:ehi], delta)
        return changed

    blocks = _row_blocks(h.m, workers)
    if workers == 1:
        changed = run_chunk(blocks[0])
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            changed = sum(executor.map(run_chunk, blocks))
        matrix.recompute_column_sums()

    (after, _) = s_max(matrix)
    return SweepStats(before, after, int(changed))


def _sweep_function(config):
    if config.mode == PARALLEL:
        return parallel_sweep
    return sweep


def solve(hypergraph, config=None):
    """
    Minimize the largest column sum of a support matrix for the
    hypergraph, certifying candidate densest subgraphs along the way.

    Stops when a certificate proves optimality, when s_max improved by
    less than config.stop_gap (relative) over config.stop_window sweeps,
    or after config.max_sweeps sweeps.

    Returns:
    a SolveResult(matrix, trace, certificate, stop_reason).
    """

    if config is None:
        config = SolverConfig()
    run_sweep = _sweep_function(config)

    start = time.time()
    matrix = init_support_matrix(hypergraph)
    trace = SolveTrace()

    best = best_certificate(matrix, config.epsilon_nz)
    (value, _) = s_max(matrix)
    trace.append(SweepRecord(0, value, best.density, 0.0))
    history = [value]
    certified_at = 0

    stop_reason = STOP_CERTIFIED if best.optimal else None
    sweeps = 0

    while stop_reason is None:
        if sweeps >= config.max_sweeps:
            stop_reason = STOP_MAX_SWEEPS
            break

        run_sweep(matrix, config)
        sweeps += 1

        if sweeps % config.cache_refresh_period == 0:
            matrix.recompute_column_sums()

        attempt = None
        if sweeps % config.certify_every == 0:
            attempt = best_certificate(matrix, config.epsilon_nz)
            certified_at = sweeps
            best = better_certificate(best, attempt)
            logger.debug('Sweep %i: s_max=%.15g density=%.15g optimal=%s',
                         sweeps, s_max(matrix)[0], attempt.density,
                         attempt.optimal)
            if attempt.optimal:
                stop_reason = STOP_CERTIFIED

        (value, _) = s_max(matrix)
        trace.append(SweepRecord(
            sweeps, value,
            None if attempt is None else attempt.density,
            time.time() - start))
        history.append(value)

        if stop_reason is None and len(history) > config.stop_window:
            old = history[-1 - config.stop_window]
            if old - value <= config.stop_gap * abs(old):
                stop_reason = STOP_STALLED

    if certified_at != sweeps:
        attempt = best_certificate(matrix, config.epsilon_nz)
        best = better_certificate(best, attempt)
    else:
        matrix.recompute_column_sums()

    logger.info('Solve stopped (%s) after %i sweeps: s_max=%.15g '
                'density=%s optimal=%s', stop_reason, sweeps,
                s_max(matrix)[0],
                best.exact_density if best.exact_density is not None
                else best.density,
                best.optimal)

    return SolveResult(matrix, trace, best, stop_reason)


def refine(matrix, target, gap, max_sweeps, refresh_period=16):
    """
    Continue sequential sweeps on a matrix until it is close to a target.

    Arguments:
    target: either a number, in which case sweeping stops once
        s_max - target <= gap, or an array of per-vertex column sums,
        in which case it stops once every column is within gap of its
        target.
    max_sweeps: limit on the number of sweeps.

    Returns:
    the number of sweeps performed.  Column sums are left fresh.
    """

    per_vertex = np.ndim(target) > 0

    def close_enough():
        if per_vertex:
            return np.max(np.abs(matrix.column_sums - target)) <= gap
        return s_max(matrix)[0] - target <= gap

    matrix.recompute_column_sums()
    sweeps = 0

    while sweeps < max_sweeps and not close_enough():
        sweep(matrix)
        sweeps += 1
        if sweeps % refresh_period == 0:
            matrix.recompute_column_sums()

    matrix.recompute_column_sums()

    if not close_enough():
        logger.warning('Refinement stopped after %i sweeps short of '
                       'the requested gap %.3g', sweeps, gap)
    else:
        logger.debug('Refinement reached gap %.3g in %i sweeps', gap, sweeps)

    return sweeps
