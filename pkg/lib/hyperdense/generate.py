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
Random weighted hypergraphs for tests and benchmarks.
"""

import logging

import numpy as np

from hyperdense.error import InfeasibleParameters
from hyperdense.hypergraph import build_from_csr

logger = logging.getLogger(__name__)

# Rounds of redrawing rows with repeated vertices before falling back
# to sampling those rows one at a time.
REDRAW_ROUNDS = 8


def _check(n, m, edge_size_range, weight_range, integral):
    (size_lo, size_hi) = edge_size_range
    (weight_lo, weight_hi) = weight_range

    if n < 1 or m < 1:
        raise InfeasibleParameters('need at least one vertex and one edge')
    if not 1 <= size_lo <= size_hi:
        raise InfeasibleParameters(
            'edge sizes must satisfy 1 <= low <= high')
    if size_hi > n:
        raise InfeasibleParameters(
            'edges of size {0} need more than {1} vertices'.format(
                size_hi, n))
    if not 0 < weight_lo <= weight_hi:
        raise InfeasibleParameters(
            'weights must satisfy 0 < low <= high')
    if integral and not (weight_lo == int(weight_lo) and
                         weight_hi == int(weight_hi)):
        raise InfeasibleParameters('integral weights need integer bounds')


def _sample_supports(rng, n, sizes, size_hi):
    """
    Matrix of vertex ids, one row per edge; the first sizes[i] entries of
    row i are distinct and the rest are ignored.
    """

    m = len(sizes)
    active = np.arange(size_hi) < sizes[:, None]
    # Distinct negative fillers keep inactive slots out of the duplicate test.
    filler = -1 - np.arange(size_hi)

    vertices = rng.integers(0, n, size=(m, size_hi))
    redraw = np.arange(m)

    for _ in range(REDRAW_ROUNDS):
        rows = np.sort(np.where(active[redraw], vertices[redraw], filler),
                       axis=1)
        duplicate = np.any(rows[:, 1:] == rows[:, :-1], axis=1)
        redraw = redraw[duplicate]
        if not len(redraw):
            return vertices
        vertices[redraw] = rng.integers(0, n, size=(len(redraw), size_hi))

    for i in redraw:
        vertices[i, :sizes[i]] = rng.choice(n, size=sizes[i], replace=False)

    return vertices


def generate_random(n, m, edge_size_range=(2, 4), weight_range=(1, 1),
                    seed=None, integral=True):
    """
    Generate a random weighted hypergraph.

    Edge sizes are drawn uniformly from edge_size_range (inclusive) and
    supports without replacement.  Every vertex left in no edge is then
    attached to a randomly chosen edge.  Weights are uniform in
    weight_range: integers when integral is set, otherwise reals.  The
    result depends only on the arguments, including the seed.
    """

    _check(n, m, edge_size_range, weight_range, integral)
    (size_lo, size_hi) = edge_size_range
    (weight_lo, weight_hi) = weight_range

    rng = np.random.default_rng(seed)

    sizes = rng.integers(size_lo, size_hi + 1, size=m)
    vertices = _sample_supports(rng, n, sizes, size_hi)
    active = np.arange(size_hi) < sizes[:, None]

    entry_edges = np.repeat(np.arange(m, dtype=np.int64), sizes)
    entry_vertices = vertices[active].astype(np.int64)

    isolated = np.flatnonzero(
        np.bincount(entry_vertices, minlength=n) == 0)
    if len(isolated):
        logger.debug('Attaching %i isolated vertices to random edges',
                     len(isolated))
        entry_edges = np.concatenate((
            entry_edges, rng.integers(0, m, size=len(isolated))))
        entry_vertices = np.concatenate((entry_vertices, isolated))

    order = np.argsort(entry_edges, kind='stable')
    edge_ptr = np.concatenate((
        np.zeros(1, dtype=np.int64),
        np.cumsum(np.bincount(entry_edges, minlength=m), dtype=np.int64)))

    if integral:
        vertex_weights = rng.integers(
            int(weight_lo), int(weight_hi) + 1, size=n).astype(np.float64)
        edge_weights = rng.integers(
            int(weight_lo), int(weight_hi) + 1, size=m).astype(np.float64)
    else:
        vertex_weights = rng.uniform(weight_lo, weight_hi, size=n)
        edge_weights = rng.uniform(weight_lo, weight_hi, size=m)

    return build_from_csr(n, vertex_weights, edge_weights,
                          edge_ptr, entry_vertices[order])
