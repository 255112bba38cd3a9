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
JSON reports written by the command line interface.

Each function returns plain dictionaries and lists ready for json.dumps.
Ids are 0-based and sorted.  The layout is described in REPORT_SCHEMA.md.
"""

from collections import OrderedDict
import json

SCHEMA = 'hyperdense-report/1'


def exact_section(value):
    if value is None:
        return None
    return OrderedDict((('num', value.numerator), ('den', value.denominator)))


def instance_section(hypergraph):
    return OrderedDict((
        ('n', hypergraph.n),
        ('m', hypergraph.m),
        ('D', hypergraph.degree),
        ('integral', hypergraph.integral_weights),
    ))


def selection_section(density, exact_density, selection):
    return OrderedDict((
        ('density', float(density)),
        ('exact', exact_section(exact_density)),
        ('vertex_ids', selection.sorted_vertices()),
        ('edge_ids', selection.sorted_edges()),
    ))


def certificate_section(certificate):
    return OrderedDict((
        ('upper_bound', certificate.upper_bound),
        ('gap', max(0.0, certificate.gap)),
        ('optimal', bool(certificate.optimal)),
    ))


def trace_section(result):
    return OrderedDict((
        ('sweeps', result.trace.sweeps),
        ('wall_ms', round(1000.0 * result.trace.wall_time, 3)),
        ('stop_reason', result.stop_reason),
    ))


def factor_section(factor):
    section = OrderedDict((
        ('density', float(factor.density)),
        ('exact', exact_section(factor.exact_density)),
        ('vertex_ids', sorted(factor.vertex_set)),
        ('edge_ids', sorted(factor.edge_set)),
    ))
    if factor.certificate is not None:
        section['optimal'] = bool(factor.certificate.optimal)
    return section


def decomposition_section(decomposition):
    return [factor_section(x) for x in decomposition.factors]


def dm_section(dm):
    return OrderedDict((
        ('v_plus', sorted(dm.v_plus)),
        ('v_zero', sorted(dm.v_zero)),
        ('v_minus', sorted(dm.v_minus)),
        ('e_plus', sorted(dm.e_plus)),
        ('e_zero', sorted(dm.e_zero)),
        ('e_minus', sorted(dm.e_minus)),
    ))


def eigen_section(eigen, density, refine_sweeps):
    return OrderedDict((
        ('eigenvalue', eigen.eigenvalue),
        ('residual', eigen.residual),
        ('iterations', eigen.iterations),
        ('converged', bool(eigen.converged)),
        ('density', float(density)),
        ('difference', eigen.eigenvalue - float(density)),
        ('refine_sweeps', refine_sweeps),
    ))


def support_matrix_section(matrix):
    """
    Diagnostic layout of a support matrix: [edge, vertex, value] triplets
    in row order and the column sums.
    """

    h = matrix.hypergraph
    return OrderedDict((
        ('entries', [[int(i), int(j), float(a)] for (i, j, a) in zip(
            h.entry_edges, h.edge_vertices, matrix.values)]),
        ('column_sums', [float(x) for x in matrix.column_sums]),
    ))


def report(command, hypergraph, **sections):
    """
    Assemble a report: schema and command, the instance summary, then the
    given sections in sorted key order.
    """

    result = OrderedDict((
        ('schema', SCHEMA),
        ('command', command),
        ('instance', instance_section(hypergraph)),
    ))
    for key in sorted(sections):
        if sections[key] is not None:
            result[key] = sections[key]
    return result


def solve_report(hypergraph, result):
    certificate = result.certificate
    return report(
        'solve', hypergraph,
        result=selection_section(
            certificate.density, certificate.exact_density,
            certificate.selection),
        certificate=certificate_section(certificate),
        trace=trace_section(result))


def dumps(data):
    return json.dumps(data, indent=2)
