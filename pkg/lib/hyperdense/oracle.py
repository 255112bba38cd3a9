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
Brute force reference answers for small hypergraphs.

Subsets are enumerated as bitmasks held in numpy int64 arrays, so each
oracle evaluates all candidates with a handful of vectorized operations
per edge or incidence.  Densities are compared with exact integer
arithmetic.
"""

from fractions import Fraction
from functools import lru_cache
import logging

import numpy as np

from hyperdense.config import OracleLimits
from hyperdense.decomposition import DMDecomposition, Factor, \
    SpectralDecomposition
from hyperdense.equalize import RowSolution
from hyperdense.error import NonIntegralWeights, NonUnitWeights, TooLarge
from hyperdense.hypergraph import SubgraphSelection, induced_edges, quotient

logger = logging.getLogger(__name__)

# Weight totals are accumulated in int64.
WEIGHT_TOTAL_LIMIT = 2 ** 62

WATERFILL_STEPS = 200
WATERFILL_MAX_GLASSES = 4


def _bits(mask, count):
    return [j for j in range(count) if (mask >> j) & 1]


def brute_force_densest(hypergraph, limits=None):
    """
    Maximum density over all non-empty vertex subsets, each taken with
    its induced edges.

    Returns:
    (density as a Fraction, selection) where the selection is the union
    of all maximizing subsets, the unique maximal densest subgraph.
    """

    if limits is None:
        limits = OracleLimits()
    h = hypergraph

    if not h.integral_weights:
        raise NonIntegralWeights()
    if h.n > limits.max_vertices:
        raise TooLarge('vertices', h.n, limits.max_vertices)

    vertex_weights = h.vertex_weights.astype(np.int64)
    edge_weights = h.edge_weights.astype(np.int64)
    for (what, weights) in (('vertex weight total', vertex_weights),
                            ('edge weight total', edge_weights)):
        total = sum(int(x) for x in weights)
        if total >= WEIGHT_TOTAL_LIMIT:
            raise TooLarge(what, total, WEIGHT_TOTAL_LIMIT)

    masks = np.arange(1, 1 << h.n, dtype=np.int64)

    vertex_total = np.zeros(len(masks), dtype=np.int64)
    for j in range(h.n):
        vertex_total += ((masks >> j) & 1) * vertex_weights[j]

    edge_total = np.zeros(len(masks), dtype=np.int64)
    for i in range(h.m):
        edge_mask = np.int64(np.bitwise_or.reduce(
            np.left_shift(1, h.support(i)).astype(np.int64)))
        edge_total += ((masks & edge_mask) == edge_mask) * edge_weights[i]

    approximate = edge_total / vertex_total
    best_float = np.max(approximate)
    candidates = np.flatnonzero(approximate >= best_float * (1.0 - 1.0e-9))

    best = max(Fraction(int(edge_total[k]), int(vertex_total[k]))
               for k in candidates)
    maximizers = [k for k in candidates
                  if Fraction(int(edge_total[k]), int(vertex_total[k])) ==
                  best]
    union = int(np.bitwise_or.reduce(masks[maximizers]))

    vertices = _bits(union, h.n)
    selection = SubgraphSelection(vertices, induced_edges(h, vertices))

    logger.debug('Oracle densest: %s on %i vertices from %i maximizers',
                 best, len(vertices), len(maximizers))

    return (best, selection)


def brute_force_spectral(hypergraph, limits=None):
    """
    Spectral decomposition by exact peeling with brute_force_densest.
    """

    current = hypergraph
    vertex_map = np.arange(hypergraph.n, dtype=np.int64)
    edge_map = np.arange(hypergraph.m, dtype=np.int64)
    factors = []

    while not current.is_empty:
        (best, selection) = brute_force_densest(current, limits)

        factors.append(Factor(
            vertex_map[selection.sorted_vertices()],
            edge_map[selection.sorted_edges()],
            float(best), best))

        residual = quotient(current, selection)
        vertex_map = vertex_map[residual.vertex_map]
        edge_map = edge_map[residual.edge_map]
        current = residual.hypergraph

    decomposition = SpectralDecomposition(factors, hypergraph.n, hypergraph.m)
    decomposition.validate(hypergraph)
    return decomposition


def brute_force_dm(hypergraph, limits=None):
    """
    Dulmage-Mendelsohn decomposition from all minimum exterior covers.

    A pair (V^, E^) covers the hypergraph when every incidence (e, v) has
    v in V^ or e in E^.  Over the covers of minimum size |V^| + |E^|:
    V+ holds the vertices in every V^, V- those in none; E+ holds the
    edges in no E^, E- those in every E^.
    """

    if limits is None:
        limits = OracleLimits()
    h = hypergraph

    if not h.unit_weights:
        raise NonUnitWeights()
    if h.n + h.m > limits.max_incidence:
        raise TooLarge('vertices plus edges', h.n + h.m,
                       limits.max_incidence)

    # Bits 0..n-1 select vertices, bits n..n+m-1 select edges.
    masks = np.arange(1 << (h.n + h.m), dtype=np.int64)

    covers = np.ones(len(masks), dtype=bool)
    for k in range(h.degree):
        vertex_bit = (masks >> h.edge_vertices[k]) & 1
        edge_bit = (masks >> (h.n + h.entry_edges[k])) & 1
        covers &= (vertex_bit | edge_bit).astype(bool)

    masks = masks[covers]
    sizes = np.zeros(len(masks), dtype=np.int64)
    for b in range(h.n + h.m):
        sizes += (masks >> b) & 1
    minimum = masks[sizes == np.min(sizes)]

    in_all = int(np.bitwise_and.reduce(minimum))
    in_any = int(np.bitwise_or.reduce(minimum))

    logger.debug('Oracle D-M: %i minimum covers of size %i',
                 len(minimum), int(np.min(sizes)))

    v_plus = [j for j in range(h.n) if (in_all >> j) & 1]
    v_minus = [j for j in range(h.n) if not (in_any >> j) & 1]
    e_plus = [i for i in range(h.m) if not (in_any >> (h.n + i)) & 1]
    e_minus = [i for i in range(h.m) if (in_all >> (h.n + i)) & 1]

    v_zero = set(range(h.n)).difference(v_plus, v_minus)
    e_zero = set(range(h.m)).difference(e_plus, e_minus)

    return DMDecomposition(v_plus, v_zero, v_minus, e_plus, e_zero, e_minus)


@lru_cache(maxsize=None)
def _compositions(total, parts):
    """
    All ways to write total as an ordered sum of parts nonnegative
    integers, one per row.
    """

    if parts == 1:
        return np.array([[total]], dtype=np.int64)

    rows = []
    for first in range(total + 1):
        rest = _compositions(total - first, parts - 1)
        rows.append(np.column_stack(
            (np.full(len(rest), first, dtype=np.int64), rest)))
    return np.vstack(rows)


def brute_force_waterfill(problem, steps=WATERFILL_STEPS):
    """
    Grid search for the row allocation minimizing the largest resulting
    column sum.  Glass j receives budget * c_j / (steps * w_j) for
    nonnegative integers c summing to steps.

    Returns the best grid point as a RowSolution whose level is the
    largest stem plus allocation over the row.
    """

    stems = np.array(problem.stems, dtype=np.float64).ravel()
    weights = np.array(problem.glass_weights, dtype=np.float64).ravel()
    budget = float(problem.budget)
    k = len(stems)

    if k > WATERFILL_MAX_GLASSES:
        raise TooLarge('glasses', k, WATERFILL_MAX_GLASSES)

    best_level = np.inf
    best_values = None

    for first in range(steps + 1):
        if k == 1:
            if first != steps:
                continue
            counts = np.array([[steps]], dtype=np.int64)
        else:
            rest = _compositions(steps - first, k - 1)
            counts = np.column_stack(
                (np.full(len(rest), first, dtype=np.int64), rest))

        values = budget * counts / (steps * weights)
        levels = np.max(stems + values, axis=1)
        index = int(np.argmin(levels))
        if levels[index] < best_level:
            best_level = float(levels[index])
            best_values = values[index]

    return RowSolution(best_values, best_level)
