#-------------------------------------------------------------------------------
#
# Catalog tests.
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

from math import sqrt
import pytest
from hypothesis import given, strategies as st
from bratteli import catalog
from bratteli.errors import InvalidDiagram, ParamOutOfRange
from bratteli.matrix_core import Window, INTEGERS, NATURALS0
from bratteli.spectral import FiniteSum, eigen_residual


@pytest.mark.parametrize("ident", list(catalog.ENTRIES))
def test_entries_build(ident):
    item = catalog.get(ident)
    assert item.ident == ident
    assert item.order is not None
    assert item.order.diagram is item.diagram
    summary = item.summary()
    assert summary["id"] == ident
    assert summary["reference"].startswith("catalog:%s" % ident)
    assert summary["index_set"] == item.diagram.index_set.name


def test_unknown_entry():
    with pytest.raises(InvalidDiagram):
        catalog.get("A8")


@pytest.mark.parametrize("ident, params", [
    ("A1", {"a": 0}),
    ("A1", {"c": 1}),
    ("A3", {"alpha": "x"}),
    ("A7", {"c": "1,-1"}),
    ("A7", {"c": "0", "tail": 0}),
    ("UniformBand", {"index_set": "reals"}),
])
def test_parameters_rejected(ident, params):
    with pytest.raises(ParamOutOfRange):
        catalog.get(ident, params)


def test_parameter_rejection_details():
    with pytest.raises(ParamOutOfRange) as exc:
        catalog.get("A3", {"alpha": 1})
    assert exc.value.name == "alpha"
    assert exc.value.value == 1
    assert exc.value.reason == "alpha > 1 required"


def test_reference():
    item = catalog.get("A1", {"a": "2"})
    assert item.params == {"a": 2, "b": 1}
    assert item.reference == "catalog:A1?a=2&b=1"
    again = catalog.resolve(item.reference)
    assert again.params == item.params
    assert catalog.get("A5").reference == "catalog:A5"
    assert catalog.resolve("catalog:A7?c=1,0,2&tail=0").params["c"] == [
        1, 0, 2,
    ]


@pytest.mark.parametrize("reference", ["A1", "entry:A1", "catalog"])
def test_invalid_reference(reference):
    with pytest.raises(InvalidDiagram):
        catalog.parse_reference(reference)


def test_summary():
    summary = catalog.get("A1").summary()
    assert summary["lambda"] == 3
    assert summary["stationary"]
    assert summary["period"] == 1
    assert summary["recurrence"] == "PositiveRecurrent"
    summary = catalog.get("A6").summary()
    assert summary["lambda_exact"] == "1 + sqrt(2)"
    assert not catalog.get("Compressible").summary()["stationary"]


def test_first_column_golden_ratio():
    item = catalog.get("A7", {"c": "1,1", "tail": 0})
    pair = item.eigenpair()
    assert pair.lam == pytest.approx((1 + sqrt(5)) / 2, rel=1e-12)
    residual = eigen_residual(item.matrix, pair.xi, pair.lam, Window(1, 20))
    assert residual < 1e-12
    assert isinstance(pair.xi_sum, FiniteSum)
    assert isinstance(pair.pairing, FiniteSum)


def test_compressible_levels():
    matrix = catalog.compressible_matrix(2)
    assert matrix.column(3) == [(2, 1), (5, 1)]
    assert matrix.column(9) == [(5, 2), (6, 1)]
    assert matrix.column(11) == [(6, 1), (7, 2), (8, 1)]
    entries, exceeds = matrix.row(5)
    assert not exceeds
    assert [col for col, _ in entries][:8] == list(range(1, 9))
    for vertex in range(1, 20):
        assert matrix.column_sum(vertex) >= 2


@given(st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_fold_vertex(first, second):
    assert NATURALS0.contains(catalog.fold_vertex(first))
    assert (catalog.fold_vertex(first) == catalog.fold_vertex(second)) == (
        first == second
    )


def test_isomorphism_pair_maps():
    item = catalog.get("IsomorphismPair")
    partner = item.extras["partner"]
    assert item.diagram.index_set == INTEGERS
    assert partner.index_set == NATURALS0
    for vertex in range(-5, 6):
        folded = item.extras["vertex_map"](0, vertex)
        assert partner.matrix(0).column_sum(folded) == (
            item.matrix.column_sum(vertex)
        )
