#-------------------------------------------------------------------------------
#
# Infinite matrix primitives tests.
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

import pytest
from hypothesis import given, settings, strategies as st
from bratteli import catalog
from bratteli.util.config import CONFIG
from bratteli.errors import (
    ConfigError, InvalidDiagram, ColumnSupportUnbounded, RowSupportUnbounded,
)
from bratteli.matrix_core import (
    INTEGERS, NATURALS, Window, BandSpec, BandedMatrix, PatternMatrix,
    IncidenceSequence, IrreducibleOnWindow, NotConnected, evaluate_rule,
    power_entry, return_sequence, truncate, telescope, period,
    irreducible_on_window, band_violations, zero_lines, backward_counts,
    forward_counts, local_reach,
)


def test_window_parse():
    window = Window.parse("-3:4")
    assert window == Window(-3, 4)
    assert window.size == 8
    assert list(window.vertices()) == list(range(-3, 5))
    assert str(window) == "-3:4"


@pytest.mark.parametrize("text", ["3", "a:b", "4:1", ""])
def test_window_parse_invalid(text):
    with pytest.raises(ConfigError):
        Window.parse(text)


def test_window_pad_and_interior():
    assert Window(1, 5).pad(3, NATURALS) == Window(1, 8)
    assert Window(-2, 2).pad(1) == Window(-3, 3)
    assert Window(1, 10).interior(2, NATURALS) == Window(1, 8)
    assert Window(-10, 10).interior(2) == Window(-8, 8)
    assert Window(0, 1).interior(2) is None


def test_default_windows():
    assert INTEGERS.default_window(5) == Window(-5, 5)
    assert NATURALS.default_window(5) == Window(1, 11)
    with pytest.raises(ConfigError):
        NATURALS.window(0, 4)


def test_evaluate_rule_precedence():
    rule = {
        "rows": {2: 7}, "negative": 3, "even": 5, "linear": [1, 1],
        "default": 9,
    }
    assert evaluate_rule(rule, 2) == 7
    assert evaluate_rule(rule, -4) == 3
    assert evaluate_rule(rule, 4) == 5
    assert evaluate_rule(rule, 3) == 4
    assert evaluate_rule({"default": 9}, 3) == 9
    assert evaluate_rule(6, 3) == 6
    assert evaluate_rule(lambda index: index * index, 3) == 9


def test_negative_entry_rejected():
    matrix = BandedMatrix({0: {"linear": [-1, 0]}}, NATURALS)
    with pytest.raises(InvalidDiagram):
        matrix.entry(2, 2)


def test_two_sided_walk_columns(entry):
    matrix = entry("A1").matrix
    assert matrix.column(0) == [(-1, 1), (0, 1), (1, 1)]
    assert matrix.column(3) == [(2, 2), (4, 1)]
    assert matrix.column(-3) == [(-4, 1), (-2, 2)]
    assert all(matrix.column_sum(col) == 3 for col in range(-20, 21))


def test_pattern_matrix_infinite_row(entry):
    matrix = entry("A5").matrix
    assert matrix.finite_columns and not matrix.finite_rows
    assert matrix.column(3) == [(1, 1), (4, 1)]
    assert matrix.column(1) == [(1, 1), (2, 1)]
    entries, exceeds = matrix.row(1, Window(1, 5))
    assert [col for col, _ in entries] == [1, 2, 3, 4, 5]
    assert exceeds
    assert matrix.row(4, Window(1, 5)) == ([(3, 1)], False)
    with pytest.raises(RowSupportUnbounded):
        matrix.row(1)
    assert matrix.reach is None
    assert local_reach(matrix) == CONFIG.window


def test_pattern_matrix_infinite_column(entry):
    matrix = entry("A7", c="1", tail=1).matrix
    assert matrix.finite_rows and not matrix.finite_columns
    with pytest.raises(ColumnSupportUnbounded):
        matrix.column(1)
    assert matrix.row(3) == ([(1, 1), (4, 1)], False)
    assert matrix.column(2) == [(1, 1)]
    assert matrix.reach is None


def test_pattern_matrix_reach(entry):
    assert entry("A6").matrix.reach is None
    matrix = PatternMatrix([
        {"offset": -1, "from": 2, "value": 1},
        {"entry": [1, 4], "value": 2},
        {"column": 2, "from": 1, "values": [1, 0, 1]},
    ], NATURALS)
    assert matrix.finite_rows and matrix.finite_columns
    assert matrix.reach == 3
    assert matrix.row(1) == ([(2, 1), (4, 2)], False)


def test_ambiguous_segment():
    with pytest.raises(InvalidDiagram):
        PatternMatrix([{"row": 1, "offset": 1, "value": 1}])


def test_return_sequences(entry):
    # renewal: the returns to 1 are the compositions of n
    assert return_sequence(entry("A5").matrix, 1, 6) == [1, 2, 4, 8, 16, 32]
    # infinite column: evaluated source-forward through the finite rows
    assert return_sequence(
        entry("A7", c="1", tail=1).matrix, 1, 5
    ) == [1, 2, 4, 8, 16]
    # plain walk: central binomial coefficients
    walk = entry("A2").matrix
    assert return_sequence(walk, 0, 6) == [0, 2, 0, 6, 0, 20]


def test_power_entry(entry):
    matrix = entry("A1").matrix
    assert power_entry(matrix, 0, 2, 2) == 1
    assert power_entry(matrix, 0, 2, 3) == 0
    assert power_entry(matrix, 1, 0, 1) == 2
    assert power_entry(matrix, 2, 0, 0) == 4
    with pytest.raises(ValueError):
        power_entry(matrix, -1, 0, 0)


@settings(max_examples=30, deadline=None)
@given(
    a=st.integers(1, 3), b=st.integers(1, 3), m=st.integers(0, 4),
    k=st.integers(0, 4), i=st.integers(-3, 3), j=st.integers(-3, 3),
)
def test_power_additivity(a, b, m, k, i, j):
    matrix = catalog.get("A1", {"a": a, "b": b}).matrix
    width = m + k + 1
    middle = range(min(i, j) - width, max(i, j) + width + 1)
    assert power_entry(matrix, m + k, i, j) == sum(
        power_entry(matrix, m, i, l) * power_entry(matrix, k, l, j)
        for l in middle
    )


@settings(max_examples=20, deadline=None)
@given(n=st.integers(1, 6), source=st.integers(-4, 4))
def test_forward_backward_counts(n, source):
    matrix = catalog.get("A1", {"a": 2, "b": 1}).matrix
    forward = forward_counts([matrix] * n, source)
    for target, count in forward.items():
        assert backward_counts([matrix] * n, target)[source] == count
    assert sum(forward.values()) == sum(
        backward_counts([matrix] * n, target).get(source, 0)
        for target in range(source - n, source + n + 1)
    )


def test_truncate(entry):
    dense = truncate(entry("A1").matrix, Window(-1, 1))
    assert dense.tolist() == [[1, 1, 0], [1, 1, 2], [0, 1, 0]]


def test_telescope(entry):
    sequence = IncidenceSequence.constant(entry("A5").matrix)
    assert telescope(sequence, 1) is sequence
    assert telescope(sequence, [0, 1, 2]) is sequence
    product = telescope(sequence, 2).matrix(0)
    assert all(product.column_sum(col) == 4 for col in range(1, 10))
    with pytest.raises(InvalidDiagram):
        telescope(sequence, [1, 3])
    with pytest.raises(InvalidDiagram):
        telescope(sequence, 0)
    cut = telescope(sequence, [0, 2, 5])
    assert cut.matrix(1).column_sum(1) == 8
    with pytest.raises(InvalidDiagram):
        cut.matrix(2)


def test_period(entry):
    assert period(entry("A2").matrix, 0, 10) == 2
    assert period(entry("A1").matrix, 0, 10) == 1


def test_irreducible_on_window(entry):
    result = irreducible_on_window(entry("A1").matrix, Window(-3, 3), 6)
    assert isinstance(result, IrreducibleOnWindow)
    result = irreducible_on_window(entry("NoMeasure").matrix, Window(1, 4), 3)
    assert result == NotConnected(1, 2)


def test_band_violations(entry):
    band_entry = entry("UniformBand", t=2)
    matrix = band_entry.matrix
    assert band_violations(
        matrix, band_entry.diagram.band, 0, Window(-5, 5)
    ) == []
    violations = band_violations(matrix, BandSpec.uniform(1, 5), 0,
                                 Window(0, 0))
    assert (0, "source outside of the band") in violations
    violations = band_violations(matrix, BandSpec.uniform(2, 4), 0,
                                 Window(0, 0))
    assert violations == [(0, "more than 4 incoming edges")]


def test_zero_lines():
    matrix = BandedMatrix({1: 1}, NATURALS)
    assert zero_lines(matrix, Window(1, 3)) == [("column", 1)]
