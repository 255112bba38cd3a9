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
Candidate densest subgraphs read off a support matrix, and certificates
comparing their density with the matrix's upper bound.
"""

from fractions import Fraction
import logging

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import breadth_first_order

from hyperdense.error import InvalidSelection
from hyperdense.hypergraph import SubgraphSelection, \
    check_selection, density, exact_density, induced_edges
from hyperdense.support import EPSILON_NZ

logger = logging.getLogger(__name__)


class Certificate(object):
    """
    A subgraph density paired with a support matrix upper bound.

    density is a float; exact_density is a Fraction when the hypergraph
    has integral weights, otherwise None.  optimal is True only when the
    gap is small enough to rule out any denser subgraph, which needs
    integral weights.
    """

    def __init__(self, selection, density, exact_density, upper_bound,
                 optimal):
        self.selection = selection
        self.density = density
        self.exact_density = exact_density
        self.upper_bound = upper_bound
        self.optimal = optimal

    @property
    def gap(self):
        return self.upper_bound - self.density

    def __repr__(self):
        return ('<Certificate density={0!r} upper_bound={1!r} '
                'optimal={2}>'.format(
                    self.exact_density if self.exact_density is not None
                    else self.density,
                    self.upper_bound, self.optimal))


def upper_bound(matrix):
    """
    Upper bound on the density of every subgraph: s_max computed from
    scratch, scaled by the largest ratio u_i / sum_j w_j a_ij so that
    rounding in the row sums cannot make it unsound.
    """

    sums = matrix.fresh_column_sums()
    row_sums = matrix.row_sums()
    h = matrix.hypergraph
    scale = float(np.max(h.edge_weights / row_sums))
    return float(np.max(sums)) * scale


def certify(hypergraph, selection, matrix):
    """
    Build a Certificate for a selection of the matrix's hypergraph.

    The verdict is optimal when the weights are integral and
    upper_bound - density < 1 / (wt(V') wt(V)): two distinct densities
    with denominators wt(V') and at most wt(V) differ by at least that.
    """

    if not selection.vertex_set:
        raise InvalidSelection('empty vertex set')
    check_selection(hypergraph, selection)

    bound = upper_bound(matrix)

    if hypergraph.integral_weights:
        exact = exact_density(hypergraph, selection)
        value = float(exact)
        threshold = Fraction(
            1,
            hypergraph.vertex_weight(selection.vertex_set, exact=True) *
            hypergraph.vertex_weight(range(hypergraph.n), exact=True))
        optimal = Fraction(bound) - exact < threshold
    else:
        exact = None
        value = density(hypergraph, selection)
        optimal = False

    certificate = Certificate(selection, value, exact, bound, optimal)
    logger.debug('Certificate: %r', certificate)
    return certificate


def extract_densest(matrix, epsilon_nz=EPSILON_NZ):
    """
    Closure from the column of largest sum.

    A selected vertex pulls in every edge whose entry in its column
    carries more than epsilon_nz of the row budget; a selected edge pulls
    in its whole support.  The result is completed with all edges induced
    by the selected vertices.
    """

    h = matrix.hypergraph
    seed = int(np.argmax(matrix.column_sums))

    # Directed graph on vertices 0..n-1 and edges n..n+m-1.
    nonzero = matrix.row_shares() > epsilon_nz
    vertex_nodes = h.edge_vertices
    edge_nodes = h.entry_edges + h.n
    rows = np.concatenate((vertex_nodes[nonzero], edge_nodes))
    cols = np.concatenate((edge_nodes[nonzero], vertex_nodes))
    graph = sparse.csr_matrix(
        (np.ones(len(rows), dtype=np.int8), (rows, cols)),
        shape=(h.n + h.m, h.n + h.m))

    reached = breadth_first_order(
        graph, seed, directed=True, return_predecessors=False)
    vertices = reached[reached < h.n]

    return SubgraphSelection(vertices, induced_edges(h, vertices))


def extract_level_set(matrix):
    """
    Best prefix of the vertices sorted by decreasing column sum, among the
    prefixes that end at a strict drop in column sum.  Ties in density go
    to the longer prefix.
    """

    h = matrix.hypergraph
    sums = matrix.column_sums
    order = np.argsort(-sums, kind='stable')
    rank = np.empty(h.n, dtype=np.int64)
    rank[order] = np.arange(h.n)

    # An edge is induced by a prefix once its last vertex in the order is.
    edge_last = np.maximum.reduceat(rank[h.edge_vertices], h.edge_ptr[:-1])
    edge_total = np.cumsum(np.bincount(
        edge_last, weights=h.edge_weights, minlength=h.n))
    vertex_total = np.cumsum(h.vertex_weights[order])
    densities = edge_total / vertex_total

    sorted_sums = sums[order]
    breaks = np.flatnonzero(np.append(sorted_sums[1:] < sorted_sums[:-1],
                                      True))
    best = np.max(densities[breaks])
    chosen = breaks[densities[breaks] >= best * (1.0 - 1.0e-12)][-1]

    vertices = order[:chosen + 1]
    return SubgraphSelection(vertices, induced_edges(h, vertices))


def _rank(certificate):
    return (certificate.optimal,
            certificate.exact_density if certificate.exact_density
            is not None else certificate.density,
            len(certificate.selection.vertex_set))


def better_certificate(first, second):
    """
    The preferable of two certificates (either may be None): optimal
    before unknown, then higher density, then more vertices.
    """

    if first is None:
        return second
    if second is None:
        return first
    if _rank(second) > _rank(first):
        return second
    return first


def best_certificate(matrix, epsilon_nz=EPSILON_NZ):
    """
    Certify both extraction candidates and keep the better one.
    Column sums are recomputed first.
    """

    matrix.recompute_column_sums()
    h = matrix.hypergraph

    closure = extract_densest(matrix, epsilon_nz)
    level_set = extract_level_set(matrix)

    best = certify(h, closure, matrix)
    if level_set != closure:
        best = better_certificate(best, certify(h, level_set, matrix))

    return best
