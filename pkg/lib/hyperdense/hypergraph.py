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
Immutable weighted hypergraphs stored as compressed sparse incidence arrays.

Edge supports are held in compressed row form (edge_ptr, edge_vertices),
each row sorted by vertex.  The transpose (vertex_ptr, vertex_edges) lists
the edges containing each vertex, and vertex_entries gives, for every
transposed entry, its position in the row-ordered arrays so that values
stored per incidence entry can be read column by column.
"""

from collections import namedtuple
from fractions import Fraction
from itertools import chain
import logging
import math

import numpy as np

from hyperdense.error import \
    DuplicateVertexInSupport, EmptySupport, EmptyVertexSet, \
    HypergraphError, IndexOutOfRange, InvalidSelection, IsolatedVertex, \
    NonIntegralWeights, NonPositiveWeight, \
    QuotientCreatesEmptySupport, QuotientCreatesIsolatedVertex

logger = logging.getLogger(__name__)

# Integral weights must also fit a signed 64-bit integer.
INTEGRAL_LIMIT = 2 ** 63

Quotient = namedtuple('Quotient', ('hypergraph', 'vertex_map', 'edge_map'))


class SubgraphSelection(namedtuple('SubgraphSelection',
                                   ('vertex_set', 'edge_set'))):
    """
    A pair of vertex and edge id sets.  It is a subgraph when the
    support of every selected edge lies inside the selected vertices,
    which check_selection() verifies against a hypergraph.
    """

    __slots__ = ()

    def __new__(cls, vertex_set=(), edge_set=()):
        return super(SubgraphSelection, cls).__new__(
            cls,
            frozenset(int(x) for x in vertex_set),
            frozenset(int(x) for x in edge_set))

    def sorted_vertices(self):
        return sorted(self.vertex_set)

    def sorted_edges(self):
        return sorted(self.edge_set)


def _frozen(array):
    array.flags.writeable = False
    return array


def _is_integral(weights):
    return bool(np.all(np.floor(weights) == weights) and
                np.all(np.abs(weights) < INTEGRAL_LIMIT))


class WeightedHypergraph(object):
    """
    Weighted hypergraph with positive vertex weights w_j and edge weights
    u_i.  Instances are immutable: all arrays are read-only, so a
    hypergraph may be shared between threads.

    Use build() or build_from_csr() to construct a validated instance;
    the constructor itself trusts its arguments.
    """

    def __init__(self, vertex_weights, edge_weights, edge_ptr, edge_vertices):
        self.vertex_weights = _frozen(np.array(
            vertex_weights, dtype=np.float64))
        self.edge_weights = _frozen(np.array(edge_weights, dtype=np.float64))
        self.edge_ptr = _frozen(np.array(edge_ptr, dtype=np.int64))
        self.edge_vertices = _frozen(np.array(edge_vertices, dtype=np.int64))

        self.n = len(self.vertex_weights)
        self.m = len(self.edge_weights)

        self.entry_edges = _frozen(np.repeat(
            np.arange(self.m, dtype=np.int64), np.diff(self.edge_ptr)))

        # Stable sort keeps the edges of each vertex in ascending order.
        order = np.argsort(self.edge_vertices, kind='stable')
        self.vertex_entries = _frozen(order.astype(np.int64))
        self.vertex_edges = _frozen(self.entry_edges[order])
        self.vertex_ptr = _frozen(np.concatenate((
            np.zeros(1, dtype=np.int64),
            np.cumsum(np.bincount(self.edge_vertices, minlength=self.n),
                      dtype=np.int64))))

        self.integral_weights = (_is_integral(self.vertex_weights) and
                                 _is_integral(self.edge_weights))

    @classmethod
    def empty(cls):
        """
        The distinguished empty hypergraph returned when a quotient
        removes everything.  Only the decomposition drivers accept it.
        """

        return cls(np.empty(0), np.empty(0),
                   np.zeros(1, dtype=np.int64), np.empty(0, dtype=np.int64))

    @property
    def is_empty(self):
        return self.n == 0 and self.m == 0

    @property
    def degree(self):
        """Total degree D: the number of incidence entries."""
        return len(self.edge_vertices)

    @property
    def unit_weights(self):
        return bool(np.all(self.vertex_weights == 1.0) and
                    np.all(self.edge_weights == 1.0))

    def support(self, edge):
        return self.edge_vertices[self.edge_ptr[edge]:self.edge_ptr[edge + 1]]

    def incidence(self, vertex):
        return self.vertex_edges[
            self.vertex_ptr[vertex]:self.vertex_ptr[vertex + 1]]

    def supports(self):
        return [self.support(i).tolist() for i in range(self.m)]

    def vertex_weight(self, vertices, exact=False):
        """
        Total weight of the given vertex ids, as a float or, with exact=True,
        as an integer (integral weights only).
        """

        return _weight_sum(self, self.vertex_weights, vertices, exact)

    def edge_weight(self, edges, exact=False):
        return _weight_sum(self, self.edge_weights, edges, exact)

    def __eq__(self, other):
        if not isinstance(other, WeightedHypergraph):
            return NotImplemented

        return (self.n == other.n and self.m == other.m and
                np.array_equal(self.vertex_weights, other.vertex_weights) and
                np.array_equal(self.edge_weights, other.edge_weights) and
                np.array_equal(self.edge_ptr, other.edge_ptr) and
                np.array_equal(self.edge_vertices, other.edge_vertices))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __repr__(self):
        return '<WeightedHypergraph n={0} m={1} D={2} integral={3}>'.format(
            self.n, self.m, self.degree, self.integral_weights)


def _weight_sum(hypergraph, weights, ids, exact):
    ids = np.fromiter(ids, dtype=np.int64) if not isinstance(
        ids, np.ndarray) else ids

    if exact:
        if not hypergraph.integral_weights:
            raise NonIntegralWeights()
        return sum(int(x) for x in weights[ids])

    return math.fsum(weights[ids])


def build(n, m, vertex_weights, edge_weights, supports):
    """
    Build a validated hypergraph from per-edge lists of 0-based vertex ids.

    Supports need not be sorted, but must not repeat a vertex: callers
    deduplicate explicitly, since silently merging repeated vertices would
    change the densities of the hypergraph they wrote.
    """

    if len(supports) != m:
        raise HypergraphError(
            'expected {0} supports but got {1}'.format(m, len(supports)))

    lengths = [len(x) for x in supports]
    edge_ptr = np.concatenate((
        np.zeros(1, dtype=np.int64), np.cumsum(lengths, dtype=np.int64)))
    edge_vertices = np.fromiter(
        chain.from_iterable(supports), dtype=np.int64, count=int(edge_ptr[-1]))

    return build_from_csr(n, vertex_weights, edge_weights,
                          edge_ptr, edge_vertices)


def build_from_csr(n, vertex_weights, edge_weights, edge_ptr, edge_vertices):
    """
    Build a validated hypergraph from compressed row arrays.
    """

    vertex_weights = np.asarray(vertex_weights, dtype=np.float64)
    edge_weights = np.asarray(edge_weights, dtype=np.float64)
    edge_ptr = np.asarray(edge_ptr, dtype=np.int64)
    edge_vertices = np.asarray(edge_vertices, dtype=np.int64)
    m = len(edge_weights)

    if n < 1:
        raise EmptyVertexSet('a hypergraph needs at least one vertex')
    if len(vertex_weights) != n:
        raise HypergraphError('expected {0} vertex weights but got {1}'.format(
            n, len(vertex_weights)))
    if len(edge_ptr) != m + 1:
        raise HypergraphError('edge pointer array does not match edge count')

    for (kind, weights) in (('vertex', vertex_weights),
                            ('edge', edge_weights)):
        bad = np.flatnonzero(~(np.isfinite(weights) & (weights > 0)))
        if len(bad):
            raise NonPositiveWeight(kind, int(bad[0]), float(weights[bad[0]]))

    lengths = np.diff(edge_ptr)
    empty = np.flatnonzero(lengths <= 0)
    if len(empty):
        raise EmptySupport(int(empty[0]))

    out_of_range = np.flatnonzero((edge_vertices < 0) | (edge_vertices >= n))
    if len(out_of_range):
        raise IndexOutOfRange(
            'vertex', int(edge_vertices[out_of_range[0]]), n)

    entry_edges = np.repeat(np.arange(m, dtype=np.int64), lengths)
    order = np.lexsort((edge_vertices, entry_edges))
    edge_vertices = edge_vertices[order]

    repeated = np.flatnonzero((edge_vertices[1:] == edge_vertices[:-1]) &
                              (entry_edges[1:] == entry_edges[:-1]))
    if len(repeated):
        raise DuplicateVertexInSupport(
            int(entry_edges[repeated[0]]), int(edge_vertices[repeated[0]]))

    isolated = np.flatnonzero(np.bincount(edge_vertices, minlength=n) == 0)
    if len(isolated):
        raise IsolatedVertex(int(isolated[0]))

    hypergraph = WeightedHypergraph(
        vertex_weights, edge_weights, edge_ptr, edge_vertices)

    logger.debug('Built hypergraph with n=%i m=%i D=%i integral=%s',
                 hypergraph.n, hypergraph.m, hypergraph.degree,
                 hypergraph.integral_weights)

    return hypergraph


def _edges_inside(hypergraph, vertex_mask):
    """
    Boolean array over edges: True where the whole support lies in the mask.
    """

    if hypergraph.m == 0:
        return np.zeros(0, dtype=bool)

    inside = vertex_mask[hypergraph.edge_vertices].astype(np.int8)
    return np.minimum.reduceat(inside, hypergraph.edge_ptr[:-1]) > 0


def _mask(size, ids, kind):
    mask = np.zeros(size, dtype=bool)
    ids = np.fromiter(ids, dtype=np.int64)
    if len(ids):
        bad = ids[(ids < 0) | (ids >= size)]
        if len(bad):
            raise IndexOutOfRange(kind, int(bad[0]), size)
        mask[ids] = True
    return mask


def check_selection(hypergraph, selection):
    """
    Raise InvalidSelection unless the selection is a subgraph of the
    hypergraph.
    """

    try:
        vertex_mask = _mask(hypergraph.n, selection.vertex_set, 'vertex')
        edges = np.fromiter(selection.edge_set, dtype=np.int64)
        _mask(hypergraph.m, edges, 'edge')
    except IndexOutOfRange as e:
        raise InvalidSelection(str(e))

    if len(edges):
        inside = _edges_inside(hypergraph, vertex_mask)[edges]
        if not np.all(inside):
            raise InvalidSelection(
                'support of edge {0} is not inside the vertex set'.format(
                    int(edges[np.flatnonzero(~inside)[0]])))

    return vertex_mask


def density(hypergraph, selection=None):
    """
    Density wt(E')/wt(V') of a subgraph, or of the whole hypergraph
    when no selection is given.
    """

    if selection is None:
        selection = full_selection(hypergraph)
    if not selection.vertex_set:
        raise EmptyVertexSet()

    check_selection(hypergraph, selection)

    return (hypergraph.edge_weight(selection.edge_set) /
            hypergraph.vertex_weight(selection.vertex_set))


def exact_density(hypergraph, selection=None):
    """
    Density of a subgraph as a Fraction.  Requires integral weights.
    """

    if selection is None:
        selection = full_selection(hypergraph)
    if not selection.vertex_set:
        raise EmptyVertexSet()

    check_selection(hypergraph, selection)

    return Fraction(hypergraph.edge_weight(selection.edge_set, exact=True),
                    hypergraph.vertex_weight(selection.vertex_set, exact=True))


def full_selection(hypergraph):
    return SubgraphSelection(range(hypergraph.n), range(hypergraph.m))


def dual(hypergraph):
    """
    The dual hypergraph: vertices and edges swap roles, and so do their
    weights.  dual(dual(h)) == h.
    """

    return WeightedHypergraph(
        hypergraph.edge_weights, hypergraph.vertex_weights,
        hypergraph.vertex_ptr, hypergraph.vertex_edges)


def induced_edges(hypergraph, vertex_set):
    """
    All edges whose support lies inside vertex_set.
    """

    mask = _mask(hypergraph.n, vertex_set, 'vertex')
    return frozenset(
        np.flatnonzero(_edges_inside(hypergraph, mask)).tolist())


def quotient(hypergraph, selection):
    """
    Remove a subgraph: the quotient keeps V \\ V' and E \\ E', with each
    remaining support intersected with the remaining vertices.

    Returns a Quotient tuple whose vertex_map and edge_map give the
    original id of each new index.  Quotienting by the whole hypergraph
    gives WeightedHypergraph.empty().
    """

    vertex_removed = check_selection(hypergraph, selection)
    edge_removed = _mask(hypergraph.m, selection.edge_set, 'edge')

    vertex_keep = ~vertex_removed
    edge_keep = ~edge_removed
    vertex_map = np.flatnonzero(vertex_keep).astype(np.int64)
    edge_map = np.flatnonzero(edge_keep).astype(np.int64)

    if len(vertex_map) == 0 and len(edge_map) == 0:
        return Quotient(WeightedHypergraph.empty(), vertex_map, edge_map)

    new_index = np.full(hypergraph.n, -1, dtype=np.int64)
    new_index[vertex_map] = np.arange(len(vertex_map), dtype=np.int64)

    entry_keep = (edge_keep[hypergraph.entry_edges] &
                  vertex_keep[hypergraph.edge_vertices])
    counts = np.bincount(hypergraph.entry_edges[entry_keep],
                         minlength=hypergraph.m)[edge_map]

    emptied = np.flatnonzero(counts == 0)
    if len(emptied):
        raise QuotientCreatesEmptySupport(int(edge_map[emptied[0]]))

    edge_vertices = new_index[hypergraph.edge_vertices[entry_keep]]
    isolated = np.flatnonzero(
        np.bincount(edge_vertices, minlength=len(vertex_map)) == 0)
    if len(isolated):
        raise QuotientCreatesIsolatedVertex(int(vertex_map[isolated[0]]))

    edge_ptr = np.concatenate((
        np.zeros(1, dtype=np.int64), np.cumsum(counts, dtype=np.int64)))

    result = WeightedHypergraph(
        hypergraph.vertex_weights[vertex_map],
        hypergraph.edge_weights[edge_map],
        edge_ptr, edge_vertices)

    return Quotient(result, vertex_map, edge_map)
