#-------------------------------------------------------------------------------
#
# JSON descriptor tests.
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

import json
import pytest
from bratteli import catalog
from bratteli.errors import InvalidDiagram, InvalidPath
from bratteli.descriptors import (
    parse_matrix, dump_matrix, parse_diagram, dump_diagram,
    parse_label_diagram, load_json, parse_path, dump_path,
)
from bratteli.diagram import Edge

WALK = {
    "kind": "banded", "index_set": "integers",
    "entries": {"-1": 1, "0": 2, "1": 1},
}

RENEWAL = {
    "kind": "rows", "index_set": "naturals",
    "segments": [
        {"row": 1, "from": 1, "step": 1, "value": 1},
        {"offset": -1, "from": 2, "value": 1},
    ],
}


def test_banded():
    matrix = parse_matrix(WALK)
    assert matrix.column(0) == [(-1, 1), (0, 2), (1, 1)]
    assert parse_matrix(dump_matrix(matrix)).column(5) == matrix.column(5)


def test_piecewise_rule():
    matrix = parse_matrix({
        "kind": "banded", "entries": {"0": {"rows": {"0": 5}, "default": 1}},
    })
    assert matrix.entry(0, 0) == 5
    assert matrix.entry(3, 3) == 1


def test_callable_rule():
    matrix = parse_matrix({
        "kind": "banded",
        "entries": {"0": {"rule": "bratteli.catalog:self_power_diagonal"}},
    })
    assert matrix.entry(3, 3) == 27
    assert dump_matrix(matrix)["entries"]["0"] == {
        "rule": "bratteli.catalog:self_power_diagonal",
    }


@pytest.mark.parametrize("data", [
    {"kind": "banded", "entries": {"0": -1}},
    {"kind": "banded", "entries": {"x": 1}},
    {"kind": "banded", "entries": {"0": {"rule": "bratteli.nothing:rule"}}},
    {"kind": "banded", "entries": {"0": {"linear": [1]}}},
    {"kind": "sparse", "entries": {}},
    {"entries": {"0": 1}},
    {"kind": "rows", "segments": []},
    {"kind": "product", "factors": []},
])
def test_invalid_matrix(data):
    with pytest.raises(InvalidDiagram):
        parse_matrix(data)


def test_pattern():
    matrix = parse_matrix(RENEWAL)
    assert matrix.column(3) == [(1, 1), (4, 1)]
    assert not matrix.finite_rows
    assert parse_matrix(dump_matrix(matrix)).column(7) == matrix.column(7)


def test_product_and_transpose():
    step = {"kind": "banded", "entries": {"1": 1}}
    product = parse_matrix({"kind": "product", "factors": [step, step]})
    assert product.column(0) == [(-2, 1)]
    transposed = parse_matrix({"kind": "transpose", "matrix": step})
    assert transposed.column(0) == [(1, 1)]
    assert dump_matrix(transposed)["kind"] == "transpose"


def test_catalog_matrix():
    matrix = parse_matrix({"kind": "catalog", "entry": "A1",
                           "params": {"a": 2}})
    expected = catalog.get("A1", {"a": 2}).matrix
    assert matrix.column_sum(0) == expected.column_sum(0)


def test_diagram():
    diagram, order = parse_diagram({"name": "walk", "matrix": WALK})
    assert diagram.is_stationary
    assert order is None
    assert dump_diagram(diagram) == {"name": "walk", "matrix": WALK}
    diagram, order = parse_diagram({
        "levels": [WALK, {"kind": "banded", "entries": {"-1": 1, "1": 1}}],
        "order": {"kind": "left-to-right"},
        "band": {"t": 1, "L": 4},
    })
    assert not diagram.is_stationary
    assert diagram.matrix(3).column_sum(0) == 2
    assert diagram.band.count_bound(0, 2) == 16
    assert order.minimal_edge(1, 0) == Edge(1, -1, 0, 0)
    with pytest.raises(InvalidDiagram):
        dump_diagram(diagram)


@pytest.mark.parametrize("data", [
    {"matrix": WALK, "levels": [WALK]},
    {"name": "empty"},
    {"matrix": WALK, "order": {"kind": "labels"}},
    {"matrix": WALK, "order": {"kind": "random"}},
    {"matrix": WALK, "band": {"t": 0, "L": 1}},
])
def test_invalid_diagram(data):
    with pytest.raises(InvalidDiagram):
        parse_diagram(data)


def test_label_diagram():
    label = parse_label_diagram(
        load_json(catalog.DATA_DIR + "/pinned.json")
    )
    assert label.name == "pinned"
    assert len(label.tables) == 1
    assert label.diagram.multiplicity(0, 1, 1) == 2
    assert label.order.maximal_edge(0, 1) == Edge(0, 1, 1, 1)


@pytest.mark.parametrize("name,figure", [
    ("slanted_three_band", "Example 4.2"),
    ("alternating", "Fig. 4.2"),
    ("pinned", "Fig. 4.4"),
    ("forward_continuous", "Fig. 4.6"),
])
def test_label_diagram_description(name, figure):
    label = parse_label_diagram(
        load_json("%s/%s.json" % (catalog.DATA_DIR, name))
    )
    assert label.description.endswith("See %s." % figure)


def test_load_json(tmpdir):
    path = tmpdir.join("broken.json")
    path.write("{")
    with pytest.raises(InvalidDiagram):
        load_json(str(path))
    with pytest.raises(InvalidDiagram):
        load_json(str(tmpdir.join("missing.json")))
    path = tmpdir.join("walk.json")
    path.write(json.dumps(WALK))
    assert load_json(str(path)) == WALK


def test_path():
    diagram = catalog.get("A1").diagram
    data = {"vertex": 0, "edges": [[0, 1, 1], [1, 0, 0]]}
    path = parse_path(data, diagram)
    assert path.edges == (Edge(0, 0, 1, 1), Edge(1, 1, 0, 0))
    assert dump_path(path) == {"level": 0, "vertex": 0,
                               "edges": [[0, 1, 1], [1, 0, 0]]}
    with pytest.raises(InvalidPath):
        parse_path({"vertex": 0, "edges": [[0, 1, 2]]}, diagram)
    with pytest.raises(InvalidDiagram):
        parse_path({"edges": []})
