#-------------------------------------------------------------------------------
#
# JSON descriptors of matrices, diagrams, order tables and paths.
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
# pylint: disable=missing-docstring

import sys
import json
from collections import OrderedDict, namedtuple
from bratteli.errors import InvalidDiagram
from bratteli.util.imports import import_rule
from bratteli.util.object_parser import (
    Object, Array, Mapping, Int, String, Bool, Choice, AnyObject, Null,
)
from bratteli.matrix_core import (
    INDEX_SETS, BandSpec, BandedMatrix, PatternMatrix, ColumnRuleMatrix,
    IncomingTable, LabelTableMatrix, ProductMatrix, TransposedMatrix,
    IncidenceSequence,
)
from bratteli.diagram import Diagram, Edge, FinitePath

LabelDiagram = namedtuple("LabelDiagram", [
    "name", "description", "diagram", "order", "tables",
])

INDEX_SET_PARSER = Choice(*INDEX_SETS)

PIECEWISE_RULE = Object((
    ("rows", Mapping(Int(), Int(0))),
    ("negative", Int(0)),
    ("even", Int(0)),
    ("odd", Int(0)),
    ("linear", Array(Int(), 2)),
    ("default", Int(0)),
))

CALLABLE_RULE = Object((("rule", String, True),))

INCOMING_ITEM = Object((
    ("source", Int()),
    ("offset", Int()),
    ("copy", Int(0)),
))

INCOMING_RULE = Object((
    ("vertex", Int()),
    ("from", Int()),
    ("incoming", Array(INCOMING_ITEM, 1), True),
))

SEGMENT = Object((
    ("row", Int()),
    ("column", Int()),
    ("offset", Int()),
    ("entry", Array(Int(), 2)),
    ("from", Int()),
    ("step", Int(1)),
    ("value", Int(0)),
    ("values", Array(Int(0))),
    ("tail", Int(0)),
))

BAND = Object((
    ("t", Int(1), True),
    ("L", Int(1), True),
))


def _parse(parser, data, what):
    try:
        return parser.parse(data)
    except ValueError as exc:
        raise InvalidDiagram("Invalid %s! %s" % (what, exc))


def _rule(data):
    if isinstance(data, int) and not isinstance(data, bool):
        if data < 0:
            raise InvalidDiagram("Negative entry rule %d!" % data)
        return data
    if isinstance(data, dict) and "rule" in data:
        return import_rule(_parse(CALLABLE_RULE, data, "rule")["rule"])
    rule = _parse(PIECEWISE_RULE, data, "entry rule")
    if "linear" in rule and len(rule["linear"]) != 2:
        raise InvalidDiagram("Linear rule needs [slope, intercept]!")
    return rule


def _banded(data):
    obj = _parse(Object((
        ("index_set", INDEX_SET_PARSER, False, "integers"),
        ("entries", AnyObject, True),
    )), data, "banded matrix")
    try:
        entries = OrderedDict(
            (int(offset), _rule(rule))
            for offset, rule in obj["entries"].items()
        )
    except ValueError:
        raise InvalidDiagram("Banded matrix offsets must be integers!")
    return BandedMatrix(entries, INDEX_SETS[obj["index_set"]])


def _segments(data):
    obj = _parse(Object((
        ("index_set", INDEX_SET_PARSER, False, "naturals"),
        ("segments", Array(SEGMENT, 1), True),
    )), data, "pattern matrix")
    segments = []
    for segment in obj["segments"]:
        if "entry" in segment:
            if len(segment["entry"]) != 2:
                raise InvalidDiagram("Entry segment needs [row, column]!")
            segment["entry"] = tuple(segment["entry"])
        segments.append(segment)
    return PatternMatrix(segments, INDEX_SETS[obj["index_set"]])


def _columns(data):
    obj = _parse(Object((
        ("index_set", INDEX_SET_PARSER, False, "naturals"),
        ("reach", (Int(0), Null), False, None),
        ("rule", String, True),
    )), data, "column rule matrix")
    return ColumnRuleMatrix(
        import_rule(obj["rule"], "column rule"),
        INDEX_SETS[obj["index_set"]], obj["reach"],
    )


def _labels(data):
    obj = _parse(Object((
        ("index_set", INDEX_SET_PARSER, False, "naturals"),
        ("table", Array(INCOMING_RULE, 1), True),
    )), data, "label matrix")
    return LabelTableMatrix(
        IncomingTable(obj["table"], INDEX_SETS[obj["index_set"]])
    )


def _product(data):
    obj = _parse(Object((
        ("factors", Array(AnyObject, 1), True),
    )), data, "matrix product")
    return ProductMatrix([parse_matrix(item) for item in obj["factors"]])


def _transpose(data):
    obj = _parse(Object((
        ("matrix", AnyObject, True),
    )), data, "transposed matrix")
    return TransposedMatrix(parse_matrix(obj["matrix"]))


def _catalog(data):
    from bratteli import catalog
    obj = _parse(Object((
        ("entry", String, True),
        ("params", AnyObject, False, {}),
    )), data, "catalog reference")
    return catalog.get(obj["entry"], obj["params"]).matrix


MATRIX_PARSERS = OrderedDict([
    ("banded", _banded),
    ("rows", _segments),
    ("columns", _columns),
    ("labels", _labels),
    ("product", _product),
    ("transpose", _transpose),
    ("catalog", _catalog),
])


def parse_matrix(data):
    """ Build a matrix from its JSON descriptor. """
    kind = _parse(Object((
        ("kind", Choice(*MATRIX_PARSERS), True),
    )), data, "matrix descriptor")["kind"]
    return MATRIX_PARSERS[kind](data)


def dump_matrix(matrix):
    """ JSON descriptor of a matrix. """
    descriptor = matrix.descriptor
    if descriptor is None:
        raise InvalidDiagram(
            "The matrix %s has no JSON descriptor!" % type(matrix).__name__
        )
    return descriptor


def parse_diagram(data):
    """ Build a diagram and its optional edge order from a descriptor.

    {"name": ..., "matrix": {...}} describes a stationary diagram,
    {"levels": [{...}, ...]} cycles through the listed matrices.
    An optional "band" holds uniform bounded-size parameters and an
    optional "order" lists incoming edge tables (one per level, cycled)
    or requests the left-to-right order.
    """
    from bratteli.orders_vershik import LeftToRight, LabelOrder
    obj = _parse(Object((
        ("name", String, False, None),
        ("matrix", AnyObject),
        ("levels", Array(AnyObject, 1)),
        ("band", BAND),
        ("order", AnyObject),
    )), data, "diagram descriptor")
    if ("matrix" in obj) == ("levels" in obj):
        raise InvalidDiagram("Either 'matrix' or 'levels' must be given!")
    band = None
    if "band" in obj:
        band = BandSpec.uniform(obj["band"]["t"], obj["band"]["L"])
    if "matrix" in obj:
        diagram = Diagram.stationary(parse_matrix(obj["matrix"]), band,
                                     obj["name"])
    else:
        matrices = [parse_matrix(item) for item in obj["levels"]]
        sequence = IncidenceSequence(
            rule=lambda level: matrices[level % len(matrices)],
            stationary=len(matrices) == 1,
        )
        diagram = Diagram(sequence, band, obj["name"])
    order = None
    if "order" in obj:
        spec = _parse(Object((
            ("kind", Choice("left-to-right", "labels"), True),
            ("tables", Array(Array(INCOMING_RULE, 1), 1)),
        )), obj["order"], "order")
        if spec["kind"] == "left-to-right":
            order = LeftToRight(diagram)
        else:
            if "tables" not in spec:
                raise InvalidDiagram("Label order without tables!")
            order = LabelOrder(diagram, [
                IncomingTable(table, diagram.index_set)
                for table in spec["tables"]
            ])
    return diagram, order


def dump_diagram(diagram):
    """ JSON descriptor of a stationary diagram. """
    if not diagram.is_stationary:
        raise InvalidDiagram("Only stationary diagrams can be exported!")
    descriptor = OrderedDict()
    if diagram.name:
        descriptor["name"] = diagram.name
    descriptor["matrix"] = dump_matrix(diagram.matrix(0))
    return descriptor


def parse_label_diagram(data):
    """ Diagram defined by per-level incoming edge tables; the table
    order is also the edge order of the diagram.
    """
    from bratteli.orders_vershik import LabelOrder
    obj = _parse(Object((
        ("name", String, True),
        ("description", String, False, ""),
        ("index_set", INDEX_SET_PARSER, False, "naturals"),
        ("stationary", Bool, False, True),
        ("tables", Array(Array(INCOMING_RULE, 1), 1), True),
    )), data, "label diagram")
    index_set = INDEX_SETS[obj["index_set"]]
    tables = [IncomingTable(table, index_set) for table in obj["tables"]]
    matrices = [LabelTableMatrix(table) for table in tables]
    sequence = IncidenceSequence(
        rule=lambda level: matrices[level % len(matrices)],
        stationary=obj["stationary"] and len(matrices) == 1,
    )
    diagram = Diagram(sequence, name=obj["name"])
    return LabelDiagram(
        obj["name"], obj["description"], diagram,
        LabelOrder(diagram, tables), tables,
    )


def load_json(path):
    """ Load a JSON document from a file ('-' reads the standard input). """
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as source:
            return json.load(source)
    except (IOError, ValueError) as exc:
        raise InvalidDiagram("Cannot read %s! %s" % (path, exc))


def parse_path(data, diagram=None):
    """ Finite path {"level": n, "vertex": v, "edges": [[s, t, c], ...]}. """
    obj = _parse(Object((
        ("level", Int(0), False, 0),
        ("vertex", Int(), True),
        ("edges", Array(Array(Int(), 3)), False, []),
    )), data, "path")
    edges, level = [], obj["level"]
    for idx, (source, target, copy) in enumerate(obj["edges"]):
        edges.append(Edge(level + idx, source, target, copy))
    path = FinitePath(obj["level"], obj["vertex"], edges)
    if diagram is not None:
        diagram.check_path(path)
    return path


def dump_path(path):
    """ JSON form of a finite path. """
    return OrderedDict([
        ("level", path.level),
        ("vertex", path.vertex),
        ("edges", [[edge.source, edge.target, edge.copy]
                   for edge in path.edges]),
    ])
