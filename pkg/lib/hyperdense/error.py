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
Exception classes for the hyperdense package.

Every error raised deliberately by the package derives from HypergraphError,
so callers (and the command line interface) can catch one class.  The
subclasses record the offending location as attributes.
"""


class HypergraphError(Exception):
    """
    Base class for errors raised by hyperdense.
    """

    pass


class EmptySupport(HypergraphError):
    def __init__(self, edge):
        self.edge = edge
        HypergraphError.__init__(
            self, 'edge {0} has an empty support'.format(edge))


class IsolatedVertex(HypergraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        HypergraphError.__init__(
            self, 'vertex {0} does not belong to any edge'.format(vertex))


class NonPositiveWeight(HypergraphError):
    def __init__(self, kind, index, value):
        self.kind = kind
        self.index = index
        self.value = value
        HypergraphError.__init__(
            self, '{0} {1} has weight {2!r}: weights must be finite and '
            'strictly positive'.format(kind, index, value))


class DuplicateVertexInSupport(HypergraphError):
    def __init__(self, edge, vertex):
        self.edge = edge
        self.vertex = vertex
        HypergraphError.__init__(
            self, 'vertex {0} appears more than once in the support of '
            'edge {1}'.format(vertex, edge))


class IndexOutOfRange(HypergraphError):
    def __init__(self, kind, index, limit):
        self.kind = kind
        self.index = index
        self.limit = limit
        HypergraphError.__init__(
            self, '{0} index {1} is out of range [0, {2})'.format(
                kind, index, limit))


class EmptyVertexSet(HypergraphError):
    def __init__(self, message='the vertex set is empty'):
        HypergraphError.__init__(self, message)


class InvalidSelection(HypergraphError):
    def __init__(self, reason):
        self.reason = reason
        HypergraphError.__init__(self, 'invalid selection: ' + reason)


class QuotientCreatesEmptySupport(HypergraphError):
    def __init__(self, edge):
        self.edge = edge
        HypergraphError.__init__(
            self, 'quotient leaves edge {0} with an empty support'.format(
                edge))


class QuotientCreatesIsolatedVertex(HypergraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        HypergraphError.__init__(
            self, 'quotient leaves vertex {0} without edges'.format(vertex))


class InvalidRowProblem(HypergraphError):
    def __init__(self, reason):
        HypergraphError.__init__(self, 'invalid row problem: ' + reason)


class NotBlockStructured(HypergraphError):
    def __init__(self, edge, vertex, share, tolerance):
        self.edge = edge
        self.vertex = vertex
        self.share = share
        self.tolerance = tolerance
        HypergraphError.__init__(
            self, 'entry (edge {0}, vertex {1}) carries {2:.3e} of its row '
            'across factors (tolerance {3:.1e})'.format(
                edge, vertex, share, tolerance))


class DecompositionInvariantViolation(HypergraphError):
    def __init__(self, stage, reason):
        self.stage = stage
        self.reason = reason
        HypergraphError.__init__(
            self, 'decomposition stage {0}: {1}'.format(stage, reason))


class NonUnitWeights(HypergraphError):
    def __init__(self):
        HypergraphError.__init__(
            self, 'all vertex and edge weights must be equal to 1')


class NonIntegralWeights(HypergraphError):
    def __init__(self):
        HypergraphError.__init__(
            self, 'all vertex and edge weights must be integers')


class TooLarge(HypergraphError):
    def __init__(self, what, size, limit):
        self.what = what
        self.size = size
        self.limit = limit
        HypergraphError.__init__(
            self, '{0} {1} exceeds the limit {2}'.format(what, size, limit))


class ParseError(HypergraphError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        if line is None:
            HypergraphError.__init__(self, reason)
        else:
            HypergraphError.__init__(
                self, 'line {0}: {1}'.format(line, reason))


class InfeasibleParameters(HypergraphError):
    def __init__(self, reason):
        HypergraphError.__init__(self, 'infeasible parameters: ' + reason)


class UsageError(HypergraphError):
    pass
