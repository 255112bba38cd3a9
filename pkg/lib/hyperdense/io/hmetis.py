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
hMETIS style hypergraph text files.

The header line holds "m n [fmt]".  Each of the next m lines describes an
edge: its weight first when fmt is 1 or 11, then the 1-based ids of its
vertices.  With fmt 10 or 11, n further lines hold one vertex weight each.
Lines starting with % are comments.  Blank lines are significant inside
the edge section, where they denote an edge with an empty support.

See FORMAT.md for the full description.
"""

from collections import namedtuple
import io
import logging

import numpy as np

from hyperdense.error import DuplicateVertexInSupport, EmptySupport, \
    HypergraphError, IsolatedVertex, NonPositiveWeight, ParseError
from hyperdense.hypergraph import build

logger = logging.getLogger(__name__)

FMT_EDGE_WEIGHTS = 1
FMT_VERTEX_WEIGHTS = 10
FORMATS = (0, FMT_EDGE_WEIGHTS, FMT_VERTEX_WEIGHTS,
           FMT_EDGE_WEIGHTS + FMT_VERTEX_WEIGHTS)

RawHypergraph = namedtuple('RawHypergraph', (
    'n', 'm', 'vertex_weights', 'edge_weights', 'supports',
    'edge_lines', 'vertex_lines'))


def _content_lines(text):
    """
    Iterate over (line number, text) skipping comment lines.
    """

    for (number, line) in enumerate(text.splitlines(), 1):
        if line.lstrip().startswith('%'):
            continue
        yield (number, line)


def _weight(token, number):
    try:
        return float(token)
    except ValueError:
        raise ParseError(number, 'invalid weight "{0}"'.format(token))


def read_hypergraph_text(text):
    """
    Split a hypergraph file into its parts without validating the
    hypergraph itself.

    Returns:
    a RawHypergraph with 0-based vertex ids and, for error messages,
    the line number of each edge and vertex weight (None when the
    weight was implicit).
    """

    lines = _content_lines(text)

    for (number, line) in lines:
        header = line.split()
        if header:
            break
    else:
        raise ParseError(None, 'missing header line')

    if len(header) not in (2, 3):
        raise ParseError(number, 'header must be "m n [fmt]"')
    try:
        values = [int(x) for x in header]
    except ValueError:
        raise ParseError(number, 'header must contain integers')

    (m, n) = values[:2]
    fmt = values[2] if len(values) == 3 else 0
    if fmt not in FORMATS:
        raise ParseError(number, 'unknown fmt code {0}'.format(header[2]))
    if m < 0 or n < 0:
        raise ParseError(number, 'negative edge or vertex count')

    edge_weighted = fmt in (FMT_EDGE_WEIGHTS,
                            FMT_EDGE_WEIGHTS + FMT_VERTEX_WEIGHTS)
    vertex_weighted = fmt >= FMT_VERTEX_WEIGHTS

    edge_weights = np.ones(m)
    supports = []
    edge_lines = []

    for i in range(m):
        try:
            (number, line) = next(lines)
        except StopIteration:
            raise ParseError(None, 'expected {0} edge lines but found '
                             '{1}'.format(m, i))

        tokens = line.split()
        edge_lines.append(number)

        if edge_weighted:
            if not tokens:
                raise ParseError(number, 'missing edge weight')
            edge_weights[i] = _weight(tokens[0], number)
            tokens = tokens[1:]

        try:
            support = [int(x) - 1 for x in tokens]
        except ValueError:
            raise ParseError(number, 'vertex ids must be integers')

        for j in support:
            if not 0 <= j < n:
                raise ParseError(number, 'vertex id {0} is out of range '
                                 '1..{1}'.format(j + 1, n))

        supports.append(support)

    vertex_weights = np.ones(n)
    vertex_lines = [None] * n

    if vertex_weighted:
        for j in range(n):
            for (number, line) in lines:
                tokens = line.split()
                if tokens:
                    break
            else:
                raise ParseError(None, 'expected {0} vertex weight lines '
                                 'but found {1}'.format(n, j))

            if len(tokens) != 1:
                raise ParseError(number, 'expected a single vertex weight')
            vertex_weights[j] = _weight(tokens[0], number)
            vertex_lines[j] = number

    for (number, line) in lines:
        if line.strip():
            raise ParseError(number, 'unexpected content after the last '
                             'expected line')

    return RawHypergraph(n, m, vertex_weights, edge_weights, supports,
                         edge_lines, vertex_lines)


def strip_degenerate(raw):
    """
    Remove edges with empty supports, then vertices in no edge, renumbering
    the vertices that remain.

    Returns:
    (RawHypergraph, stripped edge ids, stripped vertex ids), the ids
    being 0-based in the input numbering.
    """

    keep_edges = [i for i in range(raw.m) if raw.supports[i]]
    stripped_edges = [i for i in range(raw.m) if not raw.supports[i]]

    used = np.zeros(raw.n, dtype=bool)
    for i in keep_edges:
        used[raw.supports[i]] = True
    keep_vertices = np.flatnonzero(used)
    stripped_vertices = np.flatnonzero(~used).tolist()

    new_index = np.full(raw.n, -1, dtype=np.int64)
    new_index[keep_vertices] = np.arange(len(keep_vertices))

    result = RawHypergraph(
        len(keep_vertices), len(keep_edges),
        raw.vertex_weights[keep_vertices],
        raw.edge_weights[keep_edges],
        [new_index[raw.supports[i]].tolist() for i in keep_edges],
        [raw.edge_lines[i] for i in keep_edges],
        [raw.vertex_lines[j] for j in keep_vertices])

    return (result, stripped_edges, stripped_vertices)


def build_raw(raw):
    """
    Build a WeightedHypergraph from a RawHypergraph, reporting build
    errors against the line they came from.
    """

    try:
        return build(raw.n, raw.m, raw.vertex_weights, raw.edge_weights,
                     raw.supports)

    except (EmptySupport, DuplicateVertexInSupport) as e:
        raise ParseError(raw.edge_lines[e.edge], str(e))

    except NonPositiveWeight as e:
        if e.kind == 'edge':
            line = raw.edge_lines[e.index]
        else:
            line = raw.vertex_lines[e.index]
        raise ParseError(line, str(e))

    except IsolatedVertex as e:
        raise ParseError(None, '{0} (vertex id {1} in the file)'.format(
            e, e.vertex + 1))

    except HypergraphError as e:
        raise ParseError(None, str(e))


def parse_hypergraph(text, strip=False):
    """
    Parse hypergraph file text into a validated WeightedHypergraph.

    With strip=True, empty supports and isolated vertices are removed
    (and logged) instead of being errors.
    """

    raw = read_hypergraph_text(text)

    if strip:
        (raw, edges, vertices) = strip_degenerate(raw)
        if edges:
            logger.warning('Stripped %i edges with empty supports: %s',
                           len(edges), ' '.join(str(x + 1) for x in edges))
        if vertices:
            logger.warning('Stripped %i isolated vertices: %s',
                           len(vertices),
                           ' '.join(str(x + 1) for x in vertices))

    return build_raw(raw)


def _format_weight(value):
    if value == int(value):
        return '{0:d}'.format(int(value))
    return repr(float(value))


def serialize_hypergraph(hypergraph):
    """
    Write a hypergraph in file format, using the smallest fmt code that
    carries its weights.
    """

    h = hypergraph
    edge_weighted = not np.all(h.edge_weights == 1.0)
    vertex_weighted = not np.all(h.vertex_weights == 1.0)
    fmt = ((FMT_EDGE_WEIGHTS if edge_weighted else 0) +
           (FMT_VERTEX_WEIGHTS if vertex_weighted else 0))

    out = io.StringIO()
    if fmt:
        out.write('{0} {1} {2}\n'.format(h.m, h.n, fmt))
    else:
        out.write('{0} {1}\n'.format(h.m, h.n))

    for i in range(h.m):
        tokens = [str(j + 1) for j in h.support(i)]
        if edge_weighted:
            tokens.insert(0, _format_weight(h.edge_weights[i]))
        out.write(' '.join(tokens))
        out.write('\n')

    if vertex_weighted:
        for weight in h.vertex_weights:
            out.write(_format_weight(weight))
            out.write('\n')

    return out.getvalue()


def read_hypergraph(filename, strip=False):
    logger.debug('Reading hypergraph file %s', filename)
    with open(filename, 'r') as f:
        return parse_hypergraph(f.read(), strip=strip)


def write_hypergraph(filename, hypergraph):
    logger.debug('Writing hypergraph file %s', filename)
    with open(filename, 'w') as f:
        f.write(serialize_hypergraph(hypergraph))
