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
Support matrices: nonnegative matrices on the incidence pattern of a
hypergraph whose weighted row sums equal the edge weights.

The maximum column sum of any support matrix bounds the density of every
subgraph from above, and the solver minimizes it.
"""

from collections import namedtuple
import logging

import numpy as np
from scipy import sparse

from hyperdense.error import NotBlockStructured
from hyperdense.hypergraph import dual

logger = logging.getLogger(__name__)

ROW_SUM_TOLERANCE = 1.0e-9
CACHE_TOLERANCE = 1.0e-7
EPSILON_NZ = 1.0e-9

EigenResult = namedtuple(
    'EigenResult', ('eigenvalue', 'residual', 'iterations', 'converged'))


class SupportMatrix(object):
    """
    Values a_ij stored one per incidence entry, in the row order of the
    owning hypergraph's edge_vertices array, plus cached column sums s_j.

    The solver updates column_sums incrementally; call
    recompute_column_sums() to remove accumulated rounding drift.
    """

    def __init__(self, hypergraph, values, column_sums=None):
        self.hypergraph = hypergraph
        self.values = np.array(values, dtype=np.float64)

        if len(self.values) != hypergraph.degree:
            raise ValueError('support matrix needs one value per incidence')

        if column_sums is None:
            self.column_sums = self.fresh_column_sums()
        else:
            self.column_sums = np.array(column_sums, dtype=np.float64)

    def fresh_column_sums(self):
        return np.bincount(self.hypergraph.edge_vertices,
                           weights=self.values,
                           minlength=self.hypergraph.n)

    def recompute_column_sums(self):
        self.column_sums = self.fresh_column_sums()

    def row_sums(self):
        """
        Weighted row sums sum_j w_j a_ij.
        """

        h = self.hypergraph
        return np.bincount(
            h.entry_edges,
            weights=self.values * h.vertex_weights[h.edge_vertices],
            minlength=h.m)

    def row(self, edge):
        ptr = self.hypergraph.edge_ptr
        return self.values[ptr[edge]:ptr[edge + 1]]

    def entry(self, edge, vertex):
        """
        Value a_ij, zero outside the incidence pattern.
        """

        support = self.hypergraph.support(edge)
        position = np.searchsorted(support, vertex)
        if position < len(support) and support[position] == vertex:
            return float(self.row(edge)[position])
        return 0.0

    def column_entries(self, vertex):
        """
        (edge ids, values) for the column of the given vertex.
        """

        h = self.hypergraph
        lo = h.vertex_ptr[vertex]
        hi = h.vertex_ptr[vertex + 1]
        return (h.vertex_edges[lo:hi], self.values[h.vertex_entries[lo:hi]])

    def row_shares(self):
        """
        Share of its row budget carried by each entry: a_ij w_j / u_i.
        """

        h = self.hypergraph
        return (self.values * h.vertex_weights[h.edge_vertices] /
                h.edge_weights[h.entry_edges])

    def copy(self):
        return SupportMatrix(self.hypergraph, self.values, self.column_sums)

    def to_sparse(self):
        h = self.hypergraph
        return sparse.csr_matrix(
            (self.values, h.edge_vertices, h.edge_ptr), shape=(h.m, h.n))


def init_support_matrix(hypergraph):
    """
    Initial support matrix: ones on the pattern, each column divided by
    the vertex degree, then each row rescaled to the weighted row sum u_i.
    """

    h = hypergraph
    degrees = np.diff(h.vertex_ptr).astype(np.float64)
    values = 1.0 / degrees[h.edge_vertices]

    row_sums = np.bincount(
        h.entry_edges, weights=values * h.vertex_weights[h.edge_vertices],
        minlength=h.m)
    values *= (h.edge_weights / row_sums)[h.entry_edges]

    return SupportMatrix(h, values)


class ValidationReport(object):
    """
    Result of validate(): lists of the worst violations, each sorted by
    decreasing severity and truncated to `limit` items.

    negative_entries: (edge, vertex, value)
    row_violations: (edge, relative error)
    cache_violations: (vertex, absolute error)
    """

    def __init__(self, negative_entries, row_violations, cache_violations):
        self.negative_entries = negative_entries
        self.row_violations = row_violations
        self.cache_violations = cache_violations

    @property
    def is_valid(self):
        return not (self.negative_entries or self.row_violations or
                    self.cache_violations)

    def __repr__(self):
        return ('<ValidationReport negative={0!r} rows={1!r} '
                'cache={2!r}>'.format(
                    self.negative_entries, self.row_violations,
                    self.cache_violations))


def validate(matrix, limit=10):
    """
    Check the support matrix properties: nonnegative entries, exact
    weighted row sums, and a cache of column sums consistent with the
    values.  Reports violations rather than raising.
    """

    h = matrix.hypergraph

    negative = np.flatnonzero(matrix.values < 0)
    negative = negative[np.argsort(matrix.values[negative], kind='stable')]
    negative_entries = [
        (int(h.entry_edges[k]), int(h.edge_vertices[k]),
         float(matrix.values[k]))
        for k in negative[:limit]]

    relative = np.abs(matrix.row_sums() - h.edge_weights) / h.edge_weights
    bad_rows = np.flatnonzero(~(relative <= ROW_SUM_TOLERANCE))
    bad_rows = bad_rows[np.argsort(-relative[bad_rows], kind='stable')]
    row_violations = [(int(i), float(relative[i])) for i in bad_rows[:limit]]

    drift = np.abs(matrix.fresh_column_sums() - matrix.column_sums)
    bad_columns = np.flatnonzero(~(drift <= CACHE_TOLERANCE))
    bad_columns = bad_columns[np.argsort(-drift[bad_columns], kind='stable')]
    cache_violations = [(int(j), float(drift[j]))
                        for j in bad_columns[:limit]]

    report = ValidationReport(
        negative_entries, row_violations, cache_violations)

    if not report.is_valid:
        logger.debug('Support matrix validation failed: %r', report)

    return report


def s_max(matrix):
    """
    Maximum column sum and its column; ties go to the smallest vertex id.
    """

    argmax = int(np.argmax(matrix.column_sums))
    return (float(matrix.column_sums[argmax]), argmax)


def gram_dominant_eigenvalue(matrix, tol=1.0e-10, max_iters=10000):
    """
    Dominant eigenvalue of B = At^T At with At = U^(-1/2) A W^(1/2),
    by power iteration from the normalized all-ones vector.

    B has nonnegative entries, so its Perron eigenvector is nonnegative and
    cannot be orthogonal to the positive start vector.  B is never formed:
    each step applies At and its transpose through the sparse pattern.

    Returns an EigenResult with the last Rayleigh quotient and the residual
    ||Bx - lambda x|| for the normalized iterate x.  A result with
    converged=False is a flagged estimate, not an error.
    """

    h = matrix.hypergraph
    scaled = (matrix.values *
              np.sqrt(h.vertex_weights[h.edge_vertices]) /
              np.sqrt(h.edge_weights[h.entry_edges]))
    at = sparse.csr_matrix((scaled, h.edge_vertices, h.edge_ptr),
                           shape=(h.m, h.n))
    at_t = at.transpose().tocsr()

    x = np.ones(h.n) / np.sqrt(h.n)
    eigenvalue = 0.0
    residual = np.inf
    iterations = 0

    while iterations < max_iters:
        iterations += 1
        y = at_t.dot(at.dot(x))
        eigenvalue = float(x.dot(y))
        residual = float(np.linalg.norm(y - eigenvalue * x))

        if residual <= tol:
            break

        norm = np.linalg.norm(y)
        if norm == 0.0:
            break
        x = y / norm

    converged = residual <= tol
    if not converged:
        logger.warning('Power iteration did not converge: '
                       'lambda=%.12g residual=%.3g after %i iterations',
                       eigenvalue, residual, iterations)

    return EigenResult(eigenvalue, residual, iterations, converged)


def dual_support_matrix(matrix, decomposition, epsilon_nz=EPSILON_NZ):
    """
    Support matrix for the dual hypergraph built from a block-structured
    support matrix: b_ji = a_ij w_j / (alpha_r u_i) where v_j lies in the
    factor of density alpha_r.

    Entries carrying more than epsilon_nz of their row budget must join a
    vertex and an edge of the same factor, otherwise NotBlockStructured is
    raised.  Smaller off-block entries are dropped, and each dual row is
    rescaled so that sum_i u_i b_ji = w_j holds exactly.  The rescale
    factor alpha_r / s_j is 1 at an optimal matrix.
    """

    h = matrix.hypergraph
    vertex_factor = decomposition.vertex_factors()
    edge_factor = decomposition.edge_factors()
    alphas = np.array([x.density for x in decomposition.factors])

    shares = matrix.row_shares()
    off_block = (vertex_factor[h.edge_vertices] !=
                 edge_factor[h.entry_edges])
    offending = np.flatnonzero(off_block & (shares > epsilon_nz))
    if len(offending):
        k = offending[np.argmax(shares[offending])]
        raise NotBlockStructured(
            int(h.entry_edges[k]), int(h.edge_vertices[k]),
            float(shares[k]), epsilon_nz)

    values = np.where(off_block, 0.0, matrix.values)
    alpha = alphas[vertex_factor[h.edge_vertices]]
    b = values * h.vertex_weights[h.edge_vertices] / (
        alpha * h.edge_weights[h.entry_edges])

    dual_h = dual(h)

    # The dual rows are the columns of A: reorder entries by vertex.
    dual_values = b[h.vertex_entries]

    row_sums = np.bincount(
        dual_h.entry_edges,
        weights=dual_values * dual_h.vertex_weights[dual_h.edge_vertices],
        minlength=dual_h.m)
    correction = np.ones(dual_h.m)
    nonzero = row_sums > 0
    correction[nonzero] = dual_h.edge_weights[nonzero] / row_sums[nonzero]
    worst = float(np.max(np.abs(correction - 1.0))) if h.n else 0.0
    if worst > 1.0e-7:
        logger.warning('Dual support matrix rows rescaled by up to %.3g; '
                       'the primal matrix is not fully converged', worst)
    dual_values *= correction[dual_h.entry_edges]

    return SupportMatrix(dual_h, dual_values)
