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
Spectral and Dulmage-Mendelsohn decompositions.

The spectral decomposition peels off the maximal densest subgraph, then
the maximal densest subgraph of what remains, and so on.  Factor
densities strictly decrease.
"""

import logging

import numpy as np

from hyperdense.error import DecompositionInvariantViolation, \
    InvalidSelection, NonUnitWeights
from hyperdense.hypergraph import SubgraphSelection, \
    check_selection, induced_edges, quotient
from hyperdense.solver import solve

logger = logging.getLogger(__name__)

FLOAT_TOLERANCE = 1.0e-9


def same_density(first, second, first_exact=None, second_exact=None):
    """
    Compare densities exactly when both Fractions are given, otherwise
    to a relative tolerance.
    """

    if first_exact is not None and second_exact is not None:
        return first_exact == second_exact
    return abs(first - second) <= FLOAT_TOLERANCE * max(
        abs(first), abs(second))


def _lower(first, second):
    """
    True when the factor or certificate first has a strictly lower density
    than second.
    """

    if first.exact_density is not None and second.exact_density is not None:
        return first.exact_density < second.exact_density
    return first.density < second.density


class Factor(object):
    """
    One factor of a spectral decomposition: vertex and edge ids of the
    original hypergraph, the factor density (float, plus a Fraction when
    exact) and the certificate of the stage that found it, if any.
    """

    def __init__(self, vertex_set, edge_set, density, exact_density=None,
                 certificate=None):
        self.vertex_set = frozenset(int(x) for x in vertex_set)
        self.edge_set = frozenset(int(x) for x in edge_set)
        self.density = density
        self.exact_density = exact_density
        self.certificate = certificate

    @property
    def optimal(self):
        if self.certificate is None:
            return None
        return self.certificate.optimal

    def value(self):
        """Exact density when known, otherwise the float."""
        if self.exact_density is not None:
            return self.exact_density
        return self.density

    def same_as(self, other):
        return (self.vertex_set == other.vertex_set and
                self.edge_set == other.edge_set and
                same_density(self.density, other.density,
                             self.exact_density, other.exact_density))

    def __repr__(self):
        return '<Factor vertices={0!r} edges={1!r} density={2!r}>'.format(
            sorted(self.vertex_set), sorted(self.edge_set), self.value())


class SpectralDecomposition(object):
    """
    Ordered factors of a hypergraph with n vertices and m edges.
    """

    def __init__(self, factors, n, m):
        self.factors = list(factors)
        self.n = n
        self.m = m

    def __len__(self):
        return len(self.factors)

    def densities(self):
        return [x.value() for x in self.factors]

    def vertex_factors(self):
        """Array giving the factor index of every vertex (-1 if none)."""
        result = np.full(self.n, -1, dtype=np.int64)
        for (r, factor) in enumerate(self.factors):
            result[sorted(factor.vertex_set)] = r
        return result

    def edge_factors(self):
        result = np.full(self.m, -1, dtype=np.int64)
        for (r, factor) in enumerate(self.factors):
            result[sorted(factor.edge_set)] = r
        return result

    def matches(self, other):
        """
        True when both decompositions have the same factors in the same
        order with equal densities.
        """

        return (self.n == other.n and self.m == other.m and
                len(self.factors) == len(other.factors) and
                all(x.same_as(y)
                    for (x, y) in zip(self.factors, other.factors)))

    def validate(self, hypergraph):
        """
        Check the factors partition V and E, that densities strictly
        decrease, that every prefix union is a subgraph, and that each
        factor's density is its weight ratio.  Raises
        DecompositionInvariantViolation.
        """

        if hypergraph.n != self.n or hypergraph.m != self.m:
            raise DecompositionInvariantViolation(
                None, 'decomposition does not match hypergraph size')

        for (kind, counts) in (('vertex', self.vertex_factors()),
                               ('edge', self.edge_factors())):
            total = sum(len(x.vertex_set if kind == 'vertex' else x.edge_set)
                        for x in self.factors)
            if np.any(counts < 0) or total != len(counts):
                raise DecompositionInvariantViolation(
                    None, 'factor {0} sets do not partition'.format(kind))

        vertices = set()
        edges = set()
        previous = None

        for (r, factor) in enumerate(self.factors):
            if not factor.vertex_set:
                raise DecompositionInvariantViolation(r, 'empty factor')

            if previous is not None and not _lower(factor, previous):
                raise DecompositionInvariantViolation(
                    r, 'density {0} does not decrease from {1}'.format(
                        factor.value(), previous.value()))

            vertices.update(factor.vertex_set)
            edges.update(factor.edge_set)
            try:
                check_selection(hypergraph, SubgraphSelection(vertices, edges))
            except InvalidSelection as e:
                raise DecompositionInvariantViolation(
                    r, 'prefix union is not a subgraph: {0}'.format(e))

            ratio = (hypergraph.edge_weight(factor.edge_set) /
                     hypergraph.vertex_weight(factor.vertex_set))
            if not same_density(ratio, factor.density):
                raise DecompositionInvariantViolation(
                    r, 'density {0!r} differs from weight ratio {1!r}'.format(
                        factor.density, ratio))

            previous = factor

    def __repr__(self):
        return '<SpectralDecomposition {0!r}>'.format(self.factors)


class DMDecomposition(object):
    """
    The (+, 0, -) classes of vertices and edges.
    """

    def __init__(self, v_plus, v_zero, v_minus, e_plus, e_zero, e_minus):
        self.v_plus = frozenset(v_plus)
        self.v_zero = frozenset(v_zero)
        self.v_minus = frozenset(v_minus)
        self.e_plus = frozenset(e_plus)
        self.e_zero = frozenset(e_zero)
        self.e_minus = frozenset(e_minus)

    def as_tuple(self):
        return (self.v_plus, self.v_zero, self.v_minus,
                self.e_plus, self.e_zero, self.e_minus)

    def __eq__(self, other):
        if not isinstance(other, DMDecomposition):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def validate(self, hypergraph):
        """
        Check the six sets partition V and E, and that (V+, E+) and
        (V+ | V0, E+ | E0) are subgraphs.
        """

        vertex_total = (len(self.v_plus) + len(self.v_zero) +
                        len(self.v_minus))
        if (vertex_total != hypergraph.n or
                (self.v_plus | self.v_zero | self.v_minus) !=
                frozenset(range(hypergraph.n))):
            raise DecompositionInvariantViolation(
                None, 'vertex classes do not partition V')

        edge_total = len(self.e_plus) + len(self.e_zero) + len(self.e_minus)
        if (edge_total != hypergraph.m or
                (self.e_plus | self.e_zero | self.e_minus) !=
                frozenset(range(hypergraph.m))):
            raise DecompositionInvariantViolation(
                None, 'edge classes do not partition E')

        for (vertices, edges) in (
                (self.v_plus, self.e_plus),
                (self.v_plus | self.v_zero, self.e_plus | self.e_zero)):
            try:
                check_selection(hypergraph,
                                SubgraphSelection(vertices, edges))
            except InvalidSelection as e:
                raise DecompositionInvariantViolation(None, str(e))

    def __repr__(self):
        return ('<DMDecomposition V+={0} V0={1} V-={2} '
                'E+={3} E0={4} E-={5}>'.format(
                    *[sorted(x) for x in self.as_tuple()]))


def _map_selection(selection, vertex_map, edge_map):
    return SubgraphSelection(
        vertex_map[sorted(selection.vertex_set)],
        edge_map[sorted(selection.edge_set)])


def spectral_decompose(hypergraph, config=None):
    """
    Spectral decomposition by peeling.

    Each stage solves the current quotient and takes the certified
    densest subgraph.  The residual quotient is then solved in turn;
    while its maximum density equals the stage density its densest
    subgraph is absorbed, which makes the factor the maximal densest
    subgraph.  The first residual whose density is lower starts the
    next stage.
    """

    current = hypergraph
    vertex_map = np.arange(hypergraph.n, dtype=np.int64)
    edge_map = np.arange(hypergraph.m, dtype=np.int64)
    result = solve(current, config) if not current.is_empty else None
    factors = []

    while result is not None:
        stage = len(factors)
        certificate = result.certificate
        selection = certificate.selection

        if not certificate.optimal:
            logger.warning('Stage %i not certified optimal (gap %.3g); '
                           'the factor may not be maximal',
                           stage, certificate.gap)

        if factors and not _lower(certificate, factors[-1]):
            raise DecompositionInvariantViolation(
                stage, 'density {0!r} does not decrease from {1!r}'.format(
                    certificate.density, factors[-1].density))

        while True:
            residual = quotient(current, selection)
            if residual.hypergraph.is_empty:
                result = None
                break

            result = solve(residual.hypergraph, config)
            found = result.certificate

            if not same_density(certificate.density, found.density,
                                certificate.exact_density,
                                found.exact_density):
                break

            logger.debug('Stage %i absorbs %i vertices of equal density',
                         stage, len(found.selection.vertex_set))

            vertices = selection.vertex_set | frozenset(
                residual.vertex_map[sorted(found.selection.vertex_set)]
                .tolist())
            selection = SubgraphSelection(
                vertices, induced_edges(current, vertices))

        original = _map_selection(selection, vertex_map, edge_map)
        factors.append(Factor(
            original.vertex_set, original.edge_set,
            certificate.density, certificate.exact_density, certificate))

        logger.debug('Factor %i: %i vertices, %i edges, density %s',
                     stage, len(original.vertex_set), len(original.edge_set),
                     factors[-1].value())

        if result is not None:
            vertex_map = vertex_map[residual.vertex_map]
            edge_map = edge_map[residual.edge_map]
            current = residual.hypergraph

    decomposition = SpectralDecomposition(factors, hypergraph.n, hypergraph.m)
    decomposition.validate(hypergraph)
    return decomposition


def transport_dual(decomposition):
    """
    The spectral decomposition of the dual hypergraph: factors in reverse
    order with vertices and edges swapped and densities inverted.
    """

    factors = []
    for factor in reversed(decomposition.factors):
        factors.append(Factor(
            factor.edge_set, factor.vertex_set,
            1.0 / factor.density,
            None if factor.exact_density is None
            else 1 / factor.exact_density))

    return SpectralDecomposition(factors, decomposition.m, decomposition.n)


def dm_bucket(decomposition):
    """
    Sort the factors of a unit weight decomposition into the classes of
    density above, equal to and below 1.
    """

    classes = ([set(), set(), set()], [set(), set(), set()])

    for factor in decomposition.factors:
        if factor.exact_density is None and same_density(factor.density, 1.0):
            index = 1
        elif factor.value() > 1:
            index = 0
        elif factor.value() == 1:
            index = 1
        else:
            index = 2
        classes[0][index].update(factor.vertex_set)
        classes[1][index].update(factor.edge_set)

    return DMDecomposition(*(classes[0] + classes[1]))


def dm_decompose(hypergraph, config=None):
    """
    Dulmage-Mendelsohn decomposition of a unit weight hypergraph, read off
    its spectral decomposition.
    """

    if not hypergraph.unit_weights:
        raise NonUnitWeights()

    result = dm_bucket(spectral_decompose(hypergraph, config))
    result.validate(hypergraph)
    return result
