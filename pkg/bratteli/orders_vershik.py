#-------------------------------------------------------------------------------
#
# Edge orders, Vershik maps and (dis)continuity witnesses.
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
# pylint: disable=too-many-arguments,too-many-locals,too-few-public-methods

from collections import namedtuple, defaultdict
from fractions import Fraction
from math import ceil, log2
from logging import getLogger
import numpy as np
from bratteli.util.config import CONFIG
from bratteli.errors import (
    InvalidDiagram, InvalidPath, ConditionFails, NoExtremeContinuation,
)
from bratteli.matrix_core import Window, local_reach
from bratteli.diagram import Edge, FinitePath

LOGGER = getLogger(__name__)

Next = namedtuple("Next", ["edge"])
IsMaximal = namedtuple("IsMaximal", ["edge"])
Previous = namedtuple("Previous", ["edge"])
IsMinimal = namedtuple("IsMinimal", ["edge"])
Image = namedtuple("Image", ["path"])
MaximalThroughDepth = namedtuple("MaximalThroughDepth", ["depth"])
Preimage = namedtuple("Preimage", ["path"])
MinimalThroughDepth = namedtuple("MinimalThroughDepth", ["depth"])

ExtremePathReport = namedtuple("ExtremePathReport", [
    "minimal", "maximal", "terminated", "decreasing", "certificate", "depth",
])
DiscontinuityWitness = namedtuple("DiscontinuityWitness", [
    "extreme", "first", "second", "first_image", "second_image",
    "distance", "level", "gap",
])
ContinuitySample = namedtuple("ContinuitySample", [
    "level", "path", "distance", "bound", "flagged",
])
ContinuityTable = namedtuple("ContinuityTable", ["kind", "samples", "flagged"])
CompressibilityReport = namedtuple("CompressibilityReport", [
    "steps", "restarts", "entries",
])

MINIMAL = "minimal"
MAXIMAL = "maximal"


class EdgeOrder(object):
    """ Total orders of the edges ending at each vertex. """

    def __init__(self, diagram):
        self.diagram = diagram
        self._ordered = {}
        self._ranks = {}

    def _order(self, level, vertex):
        raise NotImplementedError

    def ordered(self, level, vertex):
        """ Edges between the level and the vertex in ascending order. """
        key = (level, vertex)
        try:
            return self._ordered[key]
        except KeyError:
            pass
        edges = self._order(level, vertex)
        if not edges:
            raise InvalidDiagram("No edges end at vertex %s of level %d!" % (
                vertex, level + 1
            ))
        self._ordered[key] = edges
        self._ranks[key] = dict((edge, idx) for idx, edge in enumerate(edges))
        return edges

    def rank(self, edge):
        """ Position of the edge among the edges with the same range. """
        self.ordered(edge.level, edge.target)
        try:
            return self._ranks[(edge.level, edge.target)][edge]
        except KeyError:
            raise InvalidPath("Edge %s does not exist!" % (edge,))

    def minimal_edge(self, level, vertex):
        """ Minimal edge ending at the vertex. """
        return self.ordered(level, vertex)[0]

    def maximal_edge(self, level, vertex):
        """ Maximal edge ending at the vertex. """
        return self.ordered(level, vertex)[-1]

    def is_minimal(self, edge):
        """ True for the minimal edge of its range. """
        return self.rank(edge) == 0

    def is_maximal(self, edge):
        """ True for the maximal edge of its range. """
        return self.rank(edge) == len(self.ordered(edge.level, edge.target)) - 1


class LeftToRight(EdgeOrder):
    """ Edges ordered by their source, copies in ascending order. """

    def _order(self, level, vertex):
        return self.diagram.edges_into(level, vertex)


class SlantedExtremes(EdgeOrder):
    """ Order with right-to-left slanted extreme edges.

    From the given level on, the minimal and the maximal edge ending at v
    are the two leftmost edges with a source greater than v; the other
    edges follow left-to-right in between. Lower levels are ordered
    left-to-right.
    """

    def __init__(self, diagram, level=0):
        super(SlantedExtremes, self).__init__(diagram)
        self.level = level

    def _order(self, level, vertex):
        edges = self.diagram.edges_into(level, vertex)
        if level < self.level:
            return edges
        right = [edge for edge in edges if edge.source > vertex]
        if len(right) < 2:
            raise InvalidDiagram(
                "Vertex %s of level %d has fewer than two edges from the "
                "right!" % (vertex, level + 1)
            )
        minimal, maximal = right[0], right[1]
        middle = [edge for edge in edges if edge not in (minimal, maximal)]
        return [minimal] + middle + [maximal]


class LabelOrder(EdgeOrder):
    """ Order read from incoming edge tables; the level n uses the table
    n modulo the number of tables.
    """

    def __init__(self, diagram, tables):
        super(LabelOrder, self).__init__(diagram)
        self.tables = list(tables)

    def _order(self, level, vertex):
        table = self.tables[level % len(self.tables)]
        return [
            Edge(level, source, vertex, copy)
            for source, copy in table.incoming(vertex)
        ]


class TelescopedOrder(EdgeOrder):
    """ Lexicographic order of the telescoped diagram.

    An edge of the telescoped level k stands for a path between the
    levels k*step and (k+1)*step; paths are compared by their top edge
    first. Copy indices number the paths of the same source in order.
    """

    def __init__(self, order, step):
        super(TelescopedOrder, self).__init__(order.diagram.telescope(step))
        self.base = order
        self.step = step
        self._segments = {}

    def _order(self, level, vertex):
        start, stop = level * self.step, (level + 1) * self.step
        segments = sorted(
            self.base.diagram.paths_into(stop, vertex, start),
            key=lambda path: tuple(
                self.base.rank(edge) for edge in reversed(path.edges)
            ),
        )
        edges, counts = [], defaultdict(int)
        for segment in segments:
            edge = Edge(level, segment.vertex, vertex, counts[segment.vertex])
            counts[segment.vertex] += 1
            self._segments[edge] = segment
            edges.append(edge)
        return edges

    def expand(self, edge):
        """ Path of the original diagram the telescoped edge stands for. """
        self.ordered(edge.level, edge.target)
        return self._segments[edge]


class VerticalTail(object):
    """ Continue along the edge from each vertex to itself. """

    def __init__(self, diagram, copy=0):
        self.diagram = diagram
        self.copy = copy

    def edge(self, level, vertex):
        """ Tail edge leaving the vertex. """
        if self.diagram.multiplicity(level, vertex, vertex) <= self.copy:
            raise InvalidPath("No vertical edge at vertex %s of level %d!" % (
                vertex, level
            ))
        return Edge(level, vertex, vertex, self.copy)


class _ExtremeTail(object):
    kind = None

    def __init__(self, order, reach=None):
        self.order = order
        self.reach = reach

    def edge(self, level, vertex):
        """ Extreme edge leaving the vertex with the smallest range. """
        matrix = self.order.diagram.matrix(level)
        reach = local_reach(matrix) if self.reach is None else self.reach
        index_set = matrix.index_set
        for target in range(vertex - reach, vertex + reach + 1):
            if not index_set.contains(target):
                continue
            edge = extreme_edge(self.order, level, target, self.kind)
            if edge.source == vertex:
                return edge
        raise NoExtremeContinuation(level, vertex)


class MinimalTail(_ExtremeTail):
    """ Continue along minimal edges. """
    kind = MINIMAL


class MaximalTail(_ExtremeTail):
    """ Continue along maximal edges. """
    kind = MAXIMAL


class FirstEdgeTail(object):
    """ Continue along the edge with the smallest range. """

    def __init__(self, diagram, window=None):
        self.diagram = diagram
        self.window = window

    def edge(self, level, vertex):
        """ First edge leaving the vertex. """
        edges = self.diagram.edges_from(level, vertex, self.window)
        if not edges:
            raise InvalidPath("No edge leaves vertex %s of level %d!" % (
                vertex, level
            ))
        return edges[0]


class ExplicitTail(object):
    """ Tail given by a rule (level, vertex) -> Edge. """

    def __init__(self, rule):
        self.rule = rule

    def edge(self, level, vertex):
        """ Tail edge leaving the vertex. """
        return self.rule(level, vertex)


class OrderedPath(object):
    """ Infinite path represented by a finite prefix from V_0 continued
    by a tail rule. Edges beyond the prefix are produced on demand.
    """

    def __init__(self, prefix, tail):
        if prefix.level != 0:
            raise InvalidPath("The prefix must start at the level 0!")
        self.prefix = prefix
        self.tail = tail
        self._edges = list(prefix.edges)

    @property
    def start(self):
        """ Starting vertex in V_0. """
        return self.prefix.vertex

    def edge(self, level):
        """ Edge between the levels n and n+1. """
        while len(self._edges) <= level:
            vertex = self._edges[-1].target if self._edges else self.start
            self._edges.append(self.tail.edge(len(self._edges), vertex))
        return self._edges[level]

    def edges(self, depth):
        """ First depth edges. """
        if depth > 0:
            self.edge(depth - 1)
        return tuple(self._edges[:depth])

    def vertex(self, level):
        """ Vertex visited at the level. """
        return self.start if level == 0 else self.edge(level - 1).target

    def replace_prefix(self, edges):
        """ Path with a new prefix and the same tail rule. """
        edges = tuple(edges)
        start = edges[0].source if edges else self.start
        return OrderedPath(FinitePath(0, start, edges), self.tail)

    def __repr__(self):
        return "OrderedPath(%s, %d edges, %s)" % (
            self.start, len(self.prefix), type(self.tail).__name__
        )


def extreme_edge(order, level, vertex, kind):
    """ Minimal or maximal edge ending at the vertex. """
    if kind == MINIMAL:
        return order.minimal_edge(level, vertex)
    return order.maximal_edge(level, vertex)


def successor_edge(order, edge):
    """ Next edge with the same range or IsMaximal. """
    edges = order.ordered(edge.level, edge.target)
    rank = order.rank(edge)
    if rank + 1 < len(edges):
        return Next(edges[rank + 1])
    return IsMaximal(edge)


def predecessor_edge(order, edge):
    """ Previous edge with the same range or IsMinimal. """
    rank = order.rank(edge)
    if rank > 0:
        return Previous(order.ordered(edge.level, edge.target)[rank - 1])
    return IsMinimal(edge)


def _extreme_path_into(order, vertex, level, kind):
    edges, current = [], vertex
    for current_level in range(level - 1, -1, -1):
        edge = extreme_edge(order, current_level, current, kind)
        edges.append(edge)
        current = edge.source
    edges.reverse()
    return FinitePath(0, current, edges)


def minimal_path_into(order, vertex, level):
    """ Unique path from V_0 into the vertex made of minimal edges. """
    return _extreme_path_into(order, vertex, level, MINIMAL)


def maximal_path_into(order, vertex, level):
    """ Unique path from V_0 into the vertex made of maximal edges. """
    return _extreme_path_into(order, vertex, level, MAXIMAL)


def vershik_step(order, path, depth_limit=None):
    """ Apply the Vershik map.

    The least non-maximal edge x_m is replaced by its successor and the
    edges below it by the minimal path into the successor's source.
    The edges from the level m+1 on are kept.
    """
    depth_limit = CONFIG.max_depth if depth_limit is None else depth_limit
    for level in range(depth_limit):
        step = successor_edge(order, path.edge(level))
        if isinstance(step, Next):
            head = minimal_path_into(order, step.edge.source, level)
            rest = path.edges(max(len(path.prefix), level + 1))[level + 1:]
            return Image(path.replace_prefix(
                head.edges + (step.edge,) + tuple(rest)
            ))
    return MaximalThroughDepth(depth_limit)


def vershik_inverse_step(order, path, depth_limit=None):
    """ Apply the inverse Vershik map (predecessors, maximal prefixes). """
    depth_limit = CONFIG.max_depth if depth_limit is None else depth_limit
    for level in range(depth_limit):
        step = predecessor_edge(order, path.edge(level))
        if isinstance(step, Previous):
            head = maximal_path_into(order, step.edge.source, level)
            rest = path.edges(max(len(path.prefix), level + 1))[level + 1:]
            return Preimage(path.replace_prefix(
                head.edges + (step.edge,) + tuple(rest)
            ))
    return MinimalThroughDepth(depth_limit)


def enumerate_paths_into(order, vertex, level):
    """ All paths from V_0 into the vertex in ascending lexicographic
    order (the edge of the highest level is the most significant).
    """
    if level == 0:
        yield FinitePath(0, vertex)
        return
    for edge in order.ordered(level - 1, vertex):
        for prefix in enumerate_paths_into(order, edge.source, level - 1):
            yield prefix.extend([edge])


def path_distance(first, second, depth):
    """ 2^-N for the first disagreement at the edge N, 0 if the paths
    agree through the depth.
    """
    def _edges(path):
        if isinstance(path, OrderedPath):
            return path.edges(depth)
        return path.edges[:depth]

    for level, (edge_a, edge_b) in enumerate(zip(_edges(first), _edges(second))):
        if edge_a != edge_b:
            return Fraction(1, 2 ** level)
    return Fraction(0)


def extreme_paths(order, depth, window, target_window=None, logger=None):
    """ Follow all minimal (maximal) edges from the V_0 window down to the
    depth. Stubs reaching the depth are infinite candidates. When no stub
    survives and every extreme edge met points to a smaller vertex, the
    report carries the 'decreasing-ranges' emptiness certificate.
    """
    logger = logger or LOGGER
    diagram = order.diagram
    if target_window is None:
        target_window = window.pad(
            depth * local_reach(diagram.matrix(0)), diagram.index_set
        )
    candidates = {MINIMAL: [], MAXIMAL: []}
    terminated = {MINIMAL: 0, MAXIMAL: 0}
    decreasing = True
    for kind in (MINIMAL, MAXIMAL):
        test = order.is_minimal if kind == MINIMAL else order.is_maximal
        stack = [
            FinitePath(0, vertex) for vertex in reversed(window.vertices())
        ]
        while stack:
            path = stack.pop()
            if len(path) == depth:
                candidates[kind].append(path)
                continue
            edges = [
                edge for edge in diagram.edges_from(
                    path.end_level, path.end, target_window
                ) if test(edge)
            ]
            if not edges:
                terminated[kind] += 1
            for edge in reversed(edges):
                decreasing = decreasing and edge.target < edge.source
                stack.append(path.extend([edge]))
    certificate = None
    if decreasing and not candidates[MINIMAL] and not candidates[MAXIMAL]:
        certificate = "decreasing-ranges"
    logger.info(
        "Extreme paths through depth %d: %d minimal, %d maximal candidates.",
        depth, len(candidates[MINIMAL]), len(candidates[MAXIMAL])
    )
    return ExtremePathReport(
        candidates[MINIMAL], candidates[MAXIMAL], terminated, decreasing,
        certificate, depth,
    )


def discontinuity_gap(band, level, horizon):
    """ Least k with t(N+k) < t(N) + ... + t(N+k-1) or None. """
    for gap in range(1, horizon + 1):
        if band.t(level + gap) < band.width(level, level + gap):
            return gap
    return None


def discontinuity_witness(order, vertex, level, epsilon=None, horizon=None,
                          logger=None):
    """ Two paths in the epsilon ball of the maximal path from the vertex
    whose Vershik images start at different vertices.

    The maximal path is followed through the level n (n >= N chosen so
    that 2^-n <= epsilon); the first path leaves it at the level n and the
    second at the level n+k by the minimal edge out of the visited
    vertex, k being the least gap with t(n+k) < t(n) + ... + t(n+k-1).
    Raises ConditionFails if no such gap exists within the horizon.
    """
    logger = logger or LOGGER
    diagram = order.diagram
    horizon = CONFIG.horizon if horizon is None else horizon
    if epsilon is not None:
        level = max(level, int(ceil(-log2(epsilon))))
    gap = discontinuity_gap(diagram.band, level, horizon)
    if gap is None:
        raise ConditionFails(level, horizon)

    extreme = OrderedPath(FinitePath(0, vertex), MaximalTail(order))

    def _leave(at_level):
        head = extreme.edges(at_level)
        source = extreme.vertex(at_level)
        edge = order.minimal_edge(
            at_level, source + diagram.band.t(at_level)
        )
        if edge.source != source:
            raise InvalidDiagram("Vertex %s lacks the rightmost edge!" % (
                source,
            ))
        return OrderedPath(
            FinitePath(0, vertex, head + (edge,)), MinimalTail(order)
        )

    first, second = _leave(level), _leave(level + gap)
    depth = level + gap + 2
    first_image = vershik_step(order, first, depth).path
    second_image = vershik_step(order, second, depth).path
    distance = path_distance(first_image, second_image, depth)
    logger.info(
        "Discontinuity witness at the level %d (gap %d): image distance %s",
        level, gap, distance
    )
    return DiscontinuityWitness(
        extreme, first, second, first_image, second_image, distance,
        level, gap,
    )


def _deviations(order, extreme, level, window, kind):
    """ Sample paths following the extreme path through the level and
    leaving it there, continued by every edge of the next level.
    """
    diagram = order.diagram
    head = extreme.edges(level)
    source = extreme.vertex(level)
    forbidden = extreme.edge(level)
    tail = FirstEdgeTail(diagram, window)
    samples = []
    for edge in diagram.edges_from(level, source, window):
        if edge == forbidden:
            continue
        for following in diagram.edges_from(level + 1, edge.target, window):
            samples.append(OrderedPath(
                FinitePath(0, extreme.start, head + (edge, following)), tail
            ))
    return samples


def continuity_probe(order, pairing_rule, extremes, levels, kind="forward",
                     slack=0, depth_extra=4, window=None, logger=None):
    """ Modulus of continuity of the Vershik map at extreme paths.

    For every extreme path x (maximal paths for the forward map, minimal
    ones for the inverse) and every level M, sample paths at distance
    2^-M from x are mapped and their distance from the paired extreme
    path is measured. Samples farther than 2^-(M - slack) are flagged.
    """
    logger = logger or LOGGER
    step = vershik_step if kind == "forward" else vershik_inverse_step
    samples, flagged = [], 0
    for extreme in extremes:
        paired = pairing_rule(extreme)
        for level in levels:
            depth = level + depth_extra
            bound = Fraction(1, 2 ** max(level - slack, 0))
            for sample in _deviations(order, extreme, level, window, kind):
                result = step(order, sample, depth)
                if not isinstance(result, (Image, Preimage)):
                    continue
                distance = path_distance(result.path, paired, depth)
                is_flagged = distance > bound
                flagged += is_flagged
                samples.append(ContinuitySample(
                    level, sample, distance, bound, is_flagged
                ))
    if flagged:
        logger.warning(
            "%s continuity probe flagged %d of %d samples.",
            kind.capitalize(), flagged, len(samples)
        )
    return ContinuityTable(kind, samples, flagged)


def _random_path(order, window, depth, rng):
    diagram = order.diagram
    vertex = int(rng.integers(window.lo, window.hi + 1))
    edges, current = [], vertex
    for level in range(depth):
        options = diagram.edges_from(level, current, None)
        edge = options[int(rng.integers(len(options)))]
        edges.append(edge)
        current = edge.target
    return OrderedPath(
        FinitePath(0, vertex, edges), FirstEdgeTail(diagram)
    )


def compressibility_probe(order, cylinder_vertex, steps, window, depth=8,
                          orbit_length=100, seed=None, logger=None):
    """ Iterate the Vershik map from random paths and count the images
    starting at the cylinder vertex of V_0.
    """
    logger = logger or LOGGER
    rng = np.random.default_rng(CONFIG.seed if seed is None else seed)
    done, restarts, entries = 0, 0, 0
    path, orbit = _random_path(order, window, depth, rng), 0
    while done < steps:
        result = vershik_step(order, path)
        if not isinstance(result, Image) or orbit >= orbit_length:
            restarts += 1
            path, orbit = _random_path(order, window, depth, rng), 0
            continue
        path, orbit, done = result.path, orbit + 1, done + 1
        if path.start == cylinder_vertex:
            entries += 1
    logger.info(
        "Compressibility probe: %d steps, %d restarts, %d entries.",
        done, restarts, entries
    )
    return CompressibilityReport(done, restarts, entries)


def window_of(vertices):
    """ Smallest window containing the vertices. """
    vertices = list(vertices)
    return Window(min(vertices), max(vertices))
