#-------------------------------------------------------------------------------
#
# Truncated diagram export (DOT and JSON adjacency).
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
# pylint: disable=invalid-name

from collections import OrderedDict
from logging import getLogger
import graphviz

LOGGER = getLogger(__name__)


def _node(level, vertex):
    return "n%d_%s" % (level, str(vertex).replace("-", "m"))


def truncated_edges(diagram, levels, window, order=None):
    """ Edges between the window vertices of the levels 0 .. levels with
    their multiplicities (and the ranks of the copies when ordered).
    """
    edges = []
    for level in range(levels):
        matrix = diagram.matrix(level)
        for target in window.vertices():
            for source, count in matrix.column(target):
                if not window.contains(source):
                    continue
                item = OrderedDict([
                    ("level", level), ("source", source), ("target", target),
                    ("multiplicity", count),
                ])
                if order is not None:
                    item["ranks"] = [
                        order.rank(edge)
                        for edge in diagram.edges_into(level, target)
                        if edge.source == source
                    ]
                edges.append(item)
    return edges


def to_json(diagram, levels, window, order=None):
    """ JSON adjacency with multiplicities. """
    return OrderedDict([
        ("name", diagram.name),
        ("index_set", diagram.index_set.name),
        ("levels", levels),
        ("window", [window.lo, window.hi]),
        ("vertices", list(window.vertices())),
        ("edges", truncated_edges(diagram, levels, window, order)),
    ])


def to_dot(diagram, levels, window, order=None, logger=None):
    """ Graphviz digraph of the truncated diagram; level n is drawn as
    one rank with the vertices left to right.
    """
    logger = logger or LOGGER
    graph = graphviz.Digraph(
        name=diagram.name or "bratteli",
        graph_attr={"rankdir": "TB", "splines": "line"},
        node_attr={"shape": "circle", "fontsize": "10"},
    )
    for level in range(levels + 1):
        with graph.subgraph(name="level_%d" % level) as layer:
            layer.attr(rank="same")
            for vertex in window.vertices():
                layer.node(_node(level, vertex), label=str(vertex))
    edges = truncated_edges(diagram, levels, window, order)
    for item in edges:
        labels = item.get("ranks") or [None] * item["multiplicity"]
        for label in labels:
            graph.edge(
                _node(item["level"], item["source"]),
                _node(item["level"] + 1, item["target"]),
                label=None if label is None else str(label),
            )
    logger.info(
        "Rendered %d levels on %s (%d edge groups).", levels, window, len(edges)
    )
    return graph.source
