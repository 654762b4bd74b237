#-------------------------------------------------------------------------------
#
# Generalized Bratteli diagrams - levels, paths, heights and witnesses.
#
# Authors: Martin Paces <martin.paces@eox.at>
#
#-------------------------------------------------------------------------------
# Copyright (C) 2016 EOX IT Services GmbH
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies of this Software or works derived from this Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
# THE SOFTWARE.
#-------------------------------------------------------------------------------
# pylint: disable=too-many-arguments,too-many-locals

from collections import namedtuple, OrderedDict
from logging import getLogger
from bratteli.util.config import CONFIG
from bratteli.errors import InvalidPath, NoWitnessWithinHorizon
from bratteli.matrix_core import (
    BandSpec, IncidenceSequence, Window, backward_counts, telescope,
)

LOGGER = getLogger(__name__)

Edge = namedtuple("Edge", ["level", "source", "target", "copy"])
HeightVector = namedtuple("HeightVector", ["level", "values", "exact"])
ConeBounds = namedtuple("ConeBounds", ["window", "count_bound"])
ConsistentThroughDepth = namedtuple("ConsistentThroughDepth", ["depth"])
Violated = namedtuple("Violated", ["level"])
VerifiedToDepth = namedtuple("VerifiedToDepth", ["depth"])
Violation = namedtuple("Violation", ["level", "witness"])
InvarianceReplay = namedtuple("InvarianceReplay", ["prefixes", "verdict"])

ANCESTORS = "ancestors"
DESCENDANTS = "descendants"
PLUS = "+"
MINUS = "-"


class FinitePath(namedtuple("FinitePath", ["level", "vertex", "edges"])):
    """ Finite path starting at the vertex of the given level.
    The path defines the cylinder set of its infinite extensions.
    """
    __slots__ = ()

    def __new__(cls, level, vertex, edges=()):
        return super(FinitePath, cls).__new__(cls, level, vertex, tuple(edges))

    @classmethod
    def from_edges(cls, edges):
        """ Path made of a non-empty edge sequence. """
        edges = tuple(edges)
        if not edges:
            raise InvalidPath("Empty edge sequence!")
        return cls(edges[0].level, edges[0].source, edges)

    def __len__(self):
        return len(self.edges)

    @property
    def end_level(self):
        """ Level of the last vertex. """
        return self.level + len(self.edges)

    @property
    def end(self):
        """ Last vertex (the range of the path). """
        return self.edges[-1].target if self.edges else self.vertex

    def vertices(self):
        """ Visited vertices, one per level. """
        return [self.vertex] + [edge.target for edge in self.edges]

    def extend(self, edges):
        """ Path continued by further edges. """
        return FinitePath(self.level, self.vertex, self.edges + tuple(edges))


class Diagram(object):
    """ Generalized Bratteli diagram defined by its incidence sequence.

    The level n matrix A_n = F_n^T has the entry a(w, v) equal to the
    number of edges between w of the level n and v of the level n+1.
    An optional band holds the bounded-size parameters.
    """

    def __init__(self, sequence, band=None, name=None):
        self.sequence = sequence
        self.band = band
        self.name = name

    @classmethod
    def stationary(cls, matrix, band=None, name=None):
        """ Stationary diagram of a single matrix. """
        return cls(IncidenceSequence.constant(matrix), band, name)

    @property
    def index_set(self):
        """ Vertex index set of all levels. """
        return self.sequence.index_set

    @property
    def is_stationary(self):
        """ True if all levels share one matrix. """
        return self.sequence.stationary

    def matrix(self, level):
        """ Incidence matrix A_n between the levels n and n+1. """
        return self.sequence.matrix(level)

    def edges_into(self, level, vertex):
        """ Edges between the level and the vertex of the next level,
        in ascending (source, copy) order.
        """
        return [
            Edge(level, source, vertex, copy)
            for source, count in self.matrix(level).column(vertex)
            for copy in range(count)
        ]

    def edges_from(self, level, vertex, window=None):
        """ Edges leaving the vertex, restricted to targets in the window. """
        entries, _ = self.matrix(level).row(vertex, window)
        return [
            Edge(level, vertex, target, copy)
            for target, count in entries for copy in range(count)
        ]

    def multiplicity(self, level, source, target):
        """ Number of edges between the two vertices. """
        return self.matrix(level).entry(source, target)

    def check_path(self, path):
        """ Raise InvalidPath unless the path is a path of the diagram. """
        vertex, level = path.vertex, path.level
        if not self.index_set.contains(vertex):
            raise InvalidPath("Vertex %s is not in the index set!" % vertex)
        for edge in path.edges:
            if edge.level != level or edge.source != vertex:
                raise InvalidPath("Edge %s does not continue the path!" % (
                    edge,
                ))
            count = self.multiplicity(level, edge.source, edge.target)
            if not 0 <= edge.copy < count:
                raise InvalidPath("Edge %s does not exist (%d copies)!" % (
                    edge, count
                ))
            vertex, level = edge.target, level + 1
        return path

    def telescope(self, cuts):
        """ Telescoped diagram (see matrix_core.telescope). Bands are
        carried over for uniform integer steps.
        """
        band = None
        if self.band is not None and isinstance(cuts, int):
            step, origin = cuts, self.band
            band = BandSpec(
                lambda level: origin.width(level * step, (level + 1) * step),
                lambda level: origin.count_bound(
                    level * step, (level + 1) * step
                ),
            )
        return Diagram(telescope(self.sequence, cuts), band, self.name)

    def paths_into(self, level, vertex, start=0):
        """ Generate all paths from the start level into the vertex,
        in ascending (source, copy) order level by level from the top.
        """
        if level == start:
            yield FinitePath(start, vertex)
            return
        for edge in self.edges_into(level - 1, vertex):
            for prefix in self.paths_into(level - 1, edge.source, start):
                yield prefix.extend([edge])


def count_paths(diagram, source, target):
    """ Number of paths between (level m, w) and (level n, v), m <= n. """
    (start, vertex), (stop, end) = source, target
    if stop < start:
        raise ValueError("Target level precedes the source level!")
    if stop == start:
        return int(vertex == end)
    factors = diagram.sequence.factors(start, stop)
    return backward_counts(factors, end).get(vertex, 0)


def _needed_sets(diagram, level, window):
    """ Vertices of the levels 0..level the heights of the window need. """
    needed = [None] * (level + 1)
    needed[level] = set(window.vertices())
    for current in range(level, 0, -1):
        matrix = diagram.matrix(current - 1)
        sources = set(
            row for col in needed[current] for row, _ in matrix.column(col)
        )
        needed[current - 1] = sources | set(window.vertices())
    return needed


def height_vectors(diagram, level, window, seed=None):
    """ Height vectors H^(0) .. H^(level) on the window.

    H^(0) defaults to 1 (or the seed function), H^(n+1)_v is the sum of
    a(w, v) H^(n)_w over the finite column of v. The values are exact
    big integers because the columns are complete.
    """
    needed = _needed_sets(diagram, level, window)
    heights = dict(
        (vertex, 1 if seed is None else seed(vertex)) for vertex in needed[0]
    )
    result = [_restrict(heights, 0, window)]
    for current in range(level):
        matrix = diagram.matrix(current)
        heights = dict(
            (vertex, sum(
                value * heights[row] for row, value in matrix.column(vertex)
            )) for vertex in needed[current + 1]
        )
        result.append(_restrict(heights, current + 1, window))
    return result


def _restrict(heights, level, window):
    values = OrderedDict(
        (vertex, heights[vertex]) for vertex in window.vertices()
        if vertex in heights
    )
    return HeightVector(level, values, True)


def height_vector(diagram, level, window, seed=None):
    """ Height vector H^(n) on the window. """
    return height_vectors(diagram, level, window, seed)[-1]


def cone_bounds(diagram, vertex, level, direction=ANCESTORS, steps=None):
    """ Interval of a bounded-size diagram containing all ancestors in V_0
    of the vertex of level n, or all its descendants after m steps,
    with the bound on the number of paths into a single vertex.
    """
    band = diagram.band
    if band is None:
        raise ValueError("Cone bounds require a bounded-size diagram!")
    if direction == ANCESTORS:
        start, stop = 0, level
    elif direction == DESCENDANTS:
        start, stop = level, level + (steps or 0)
    else:
        raise ValueError("Invalid cone direction %r!" % direction)
    width = band.width(start, stop)
    window = Window(vertex - width, vertex + width)
    lower = diagram.index_set.lower
    if lower is not None and window.lo < lower:
        window = Window(lower, max(lower, window.hi))
    return ConeBounds(window, band.count_bound(start, stop))


def _backward_layers(diagram, start, stop, target):
    """ layers[r] maps the vertices of the level stop - r to the number
    of their paths into the target at the level stop.
    """
    layers = [{target: 1}]
    for level in range(stop - 1, start - 1, -1):
        layers.append(_pull(diagram.matrix(level), layers[-1]))
    return layers


def _pull(matrix, layer):
    result = {}
    for col, count in layer.items():
        for row, value in matrix.column(col):
            result[row] = result.get(row, 0) + value * count
    return result


def transitive_witness(diagram, cylinder, vertical_vertex, return_length,
                       horizon=None, logger=None):
    """ Path from the range j of the cylinder (level N) to the vertical
    vertex i at a level s*k > N, for the least such s with a path.

    The construction prefers the vertical edges whenever the remaining
    length allows it. Raises NoWitnessWithinHorizon if no connecting
    path of length at most the horizon exists.
    """
    logger = logger or LOGGER
    horizon = CONFIG.horizon if horizon is None else horizon
    start, source = cylinder.end_level, cylinder.end
    step = return_length
    if count_paths(diagram, (0, vertical_vertex), (step, vertical_vertex)) < 1:
        raise InvalidPath("No return of length %d at vertex %s!" % (
            step, vertical_vertex
        ))
    multiple = start // step + 1
    while multiple * step - start <= horizon:
        stop = multiple * step
        layers = _backward_layers(diagram, start, stop, vertical_vertex)
        if layers[-1].get(source, 0) > 0:
            edges, vertex = [], source
            for level in range(start, stop):
                candidates = layers[stop - level - 1]
                matrix = diagram.matrix(level)
                options = sorted(
                    target for target in candidates
                    if matrix.entry(vertex, target) > 0
                )
                target = (
                    vertical_vertex if vertical_vertex in options
                    else options[0]
                )
                edges.append(Edge(level, vertex, target, 0))
                vertex = target
            logger.info(
                "Transitivity witness from %s (level %d) to %s (level %d).",
                source, start, vertical_vertex, stop
            )
            return FinitePath(start, source, edges)
        multiple += 1
    raise NoWitnessWithinHorizon(horizon)


def _slant_bound(diagram, vertex, level, sign):
    offset = diagram.band.width(0, level + 1)
    return vertex + offset if sign == PLUS else vertex - offset


def slanting_membership(diagram, path, vertex, sign):
    """ Check the slanting set inequalities of a path prefix from V_0:
    r(x_i) >= w + t_0 + ... + t_i for the '+' set and
    r(x_i) <= w - (t_0 + ... + t_i) for the '-' set.
    """
    if diagram.band is None:
        raise ValueError("Slanting sets require a bounded-size diagram!")
    for edge in path.edges:
        bound = _slant_bound(diagram, vertex, edge.level, sign)
        if (sign == PLUS and edge.target < bound) or (
                sign == MINUS and edge.target > bound):
            return Violated(edge.level)
    return ConsistentThroughDepth(len(path))


def slanting_boundary_path(diagram, vertex, sign, depth):
    """ Extremely slanted path from the vertex of V_0 (the boundary of
    the slanting set).
    """
    edges, current = [], vertex
    for level in range(depth):
        width = diagram.band.t(level)
        target = current + width if sign == PLUS else current - width
        if diagram.multiplicity(level, current, target) < 1:
            raise InvalidPath("No edge %s -> %s at level %d!" % (
                current, target, level
            ))
        edges.append(Edge(level, current, target, 0))
        current = target
    return FinitePath(0, vertex, edges)


def slanting_invariance_replay(diagram, path, level, vertex, sign):
    """ Replace the first edges of a member path by every path into the
    vertex it visits at the given level and check that the membership
    is kept (tail invariance of the slanting sets).
    """
    tail = path.edges[level:]
    verdict = ConsistentThroughDepth(len(path))
    count = 0
    for prefix in diagram.paths_into(level, path.vertices()[level]):
        count += 1
        result = slanting_membership(diagram, prefix.extend(tail), vertex, sign)
        if isinstance(result, Violated):
            verdict = result
            break
    return InvarianceReplay(count, verdict)


def verify_isomorphism(diagram_a, diagram_b, vertex_map, edge_map, depth,
                       window, target_window=None, orders=None,
                       order_mode="preserve"):
    """ Check the vertex maps g_n and edge maps h_n level by level.

    vertex_map(n, v) and edge_map(n, edge) are the rules. For every
    level the vertex map must be injective on the window and cover the
    target window; the edges into every window vertex must be mapped
    bijectively onto the edges into its image with s'(h e) = g(s e) and
    r'(h e) = g(r e). With a pair of orders the incoming orders must be
    preserved (or reversed).
    """
    for level in range(depth + 1):
        images = OrderedDict()
        for vertex in window.vertices():
            image = vertex_map(level, vertex)
            if image in images:
                return Violation(level, ("not injective", images[image], vertex))
            if not diagram_b.index_set.contains(image):
                return Violation(level, ("out of range", vertex, image))
            images[image] = vertex
        if target_window is not None:
            for image in target_window.vertices():
                if image not in images:
                    return Violation(level, ("not surjective", image))
        if level == depth:
            break
        for vertex in window.vertices():
            edges = diagram_a.edges_into(level, vertex)
            expected = set(diagram_b.edges_into(
                level, vertex_map(level + 1, vertex)
            ))
            mapped = [edge_map(level, edge) for edge in edges]
            for edge, image in zip(edges, mapped):
                if (image.source != vertex_map(level, edge.source)
                        or image.target != vertex_map(level + 1, edge.target)):
                    return Violation(level, ("not intertwining", edge, image))
            if len(set(mapped)) != len(mapped) or set(mapped) != expected:
                return Violation(level, ("not bijective", vertex))
            if orders is not None:
                order_a, order_b = orders
                ranks = [order_b.rank(image) for image in mapped]
                ranks_a = [order_a.rank(edge) for edge in edges]
                ranks = [rank for _, rank in sorted(zip(ranks_a, ranks))]
                monotone = sorted(ranks) if order_mode == "preserve" else (
                    sorted(ranks, reverse=True)
                )
                if ranks != monotone:
                    return Violation(level, ("order not %sd" % order_mode,
                                             vertex))
    return VerifiedToDepth(depth)
