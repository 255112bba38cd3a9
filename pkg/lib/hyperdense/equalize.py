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
Row equalization by waterfilling.

Each glass j stands on a stem of height b_j and has cross section w_j.
Pouring a budget u into the glasses so that all wetted glasses reach a
common level, and leaving dry every glass whose stem reaches the level,
minimizes the largest resulting height over the row.

The compiled kernels here work on the compressed row arrays of a
hypergraph directly; equalize_row() is the checked entry point for a
single row.
"""

from collections import namedtuple
import logging

from numba import njit
import numpy as np

from hyperdense.error import InvalidRowProblem

logger = logging.getLogger(__name__)

RowProblem = namedtuple('RowProblem', ('stems', 'glass_weights', 'budget'))

RowSolution = namedtuple('RowSolution', ('new_values', 'level'))


@njit(nogil=True, cache=True)
def _waterfill(stems, weights, budget, out):
    """
    Fill out with the waterfilling allocation and return the level.

    Stems are visited in ascending order.  A glass joins the wetted set
    only while raising the current set to its stem costs strictly less
    than the budget; a glass whose stem equals the final level stays dry.
    """

    k = len(stems)
    order = np.argsort(stems, kind='mergesort')

    spent = 0.0
    wsum = 0.0
    level = stems[order[0]]
    filled = 0

    for t in range(k):
        j = order[t]
        b = stems[j]
        if t > 0:
            cost = spent + wsum * (b - level)
            if cost >= budget:
                if cost == budget:
                    level = b
                    spent = budget
                break
            spent = cost
        level = b
        wsum += weights[j]
        filled += 1

    level = level + (budget - spent) / wsum

    for t in range(k):
        out[t] = 0.0
    for t in range(filled):
        j = order[t]
        out[j] = level - stems[j]

    return level


@njit(nogil=True, cache=True)
def _sweep_rows(edge_ptr, edge_vertices, values, vertex_weights,
                edge_weights, column_sums, start, stop):
    """
    Equalize rows start..stop-1 in order, updating values and
    column_sums in place.  Returns the number of rows that changed.
    """

    kmax = 0
    for i in range(start, stop):
        k = edge_ptr[i + 1] - edge_ptr[i]
        if k > kmax:
            kmax = k

    stems = np.empty(kmax)
    weights = np.empty(kmax)
    out = np.empty(kmax)
    changed = 0

    for i in range(start, stop):
        lo = edge_ptr[i]
        k = edge_ptr[i + 1] - lo

        for t in range(k):
            j = edge_vertices[lo + t]
            stems[t] = column_sums[j] - values[lo + t]
            weights[t] = vertex_weights[j]

        _waterfill(stems[:k], weights[:k], edge_weights[i], out[:k])

        row_changed = False
        for t in range(k):
            delta = out[t] - values[lo + t]
            if delta != 0.0:
                column_sums[edge_vertices[lo + t]] += delta
                values[lo + t] = out[t]
                row_changed = True

        if row_changed:
            changed += 1

    return changed


def equalize_row(problem):
    """
    Solve one row equalization problem.

    Arguments:
    problem: a RowProblem with k >= 1 finite stems, positive glass
        weights and a positive budget.

    Returns:
    a RowSolution(new_values, level).
    """

    stems = np.array(problem.stems, dtype=np.float64).ravel()
    weights = np.array(problem.glass_weights, dtype=np.float64).ravel()
    budget = float(problem.budget)

    if len(stems) == 0:
        raise InvalidRowProblem('a row needs at least one glass')
    if len(weights) != len(stems):
        raise InvalidRowProblem('{0} stems but {1} glass weights'.format(
            len(stems), len(weights)))
    if not np.all(np.isfinite(stems)):
        raise InvalidRowProblem('stems must be finite')
    if not np.all(np.isfinite(weights) & (weights > 0)):
        raise InvalidRowProblem('glass weights must be positive')
    if not (np.isfinite(budget) and budget > 0):
        raise InvalidRowProblem('budget must be positive')

    out = np.empty(len(stems))
    level = _waterfill(stems, weights, budget, out)

    return RowSolution(out, float(level))
