#-------------------------------------------------------------------------------
#
# Diagram, path and structural witness tests.
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
from bratteli.errors import InvalidPath, NoWitnessWithinHorizon
from bratteli.matrix_core import Window
from bratteli.diagram import (
    Edge, FinitePath, ConsistentThroughDepth, Violated, VerifiedToDepth,
    Violation, ANCESTORS, DESCENDANTS, PLUS, MINUS, count_paths,
    height_vectors, cone_bounds, transitive_witness, slanting_membership,
    slanting_boundary_path, slanting_invariance_replay, verify_isomorphism,
)


def test_edges_into_and_from(entry):
    diagram = entry("A1").diagram
    assert diagram.edges_into(0, 0) == [
        Edge(0, -1, 0, 0), Edge(0, 0, 0, 0), Edge(0, 1, 0, 0),
    ]
    assert diagram.edges_into(0, 1) == [
        Edge(0, 0, 1, 0), Edge(0, 0, 1, 1), Edge(0, 2, 1, 0),
    ]
    assert len(diagram.edges_from(0, 0)) == 4
    assert diagram.multiplicity(0, 0, 1) == 2


def test_finite_path():
    path = FinitePath(2, 5, [Edge(2, 5, 4, 0), Edge(3, 4, 4, 1)])
    assert len(path) == 2
    assert path.end_level == 4
    assert path.end == 4
    assert path.vertices() == [5, 4, 4]
    assert FinitePath(0, 3).end == 3
    assert FinitePath.from_edges(path.edges) == path
    with pytest.raises(InvalidPath):
        FinitePath.from_edges([])


@pytest.mark.parametrize("edges", [
    [Edge(0, 0, 3, 0)],
    [Edge(0, 0, 0, 1)],
    [Edge(0, 0, 1, 0), Edge(2, 1, 0, 0)],
    [Edge(0, 0, 1, 0), Edge(1, 2, 1, 0)],
])
def test_check_path_invalid(entry, edges):
    with pytest.raises(InvalidPath):
        entry("A1").diagram.check_path(FinitePath(0, 0, edges))


def test_check_path_valid(entry):
    path = FinitePath(0, 0, [Edge(0, 0, 1, 1), Edge(1, 1, 0, 0)])
    assert entry("A1").diagram.check_path(path) is path


def test_count_paths(entry):
    diagram = entry("A1").diagram
    assert count_paths(diagram, (0, 0), (2, 0)) == 4
    assert count_paths(diagram, (1, 3), (1, 3)) == 1
    assert count_paths(diagram, (1, 3), (1, 2)) == 0
    with pytest.raises(ValueError):
        count_paths(diagram, (2, 0), (1, 0))
    paths = list(diagram.paths_into(2, 0))
    assert len(paths) == 9
    assert all(diagram.check_path(path).end == 0 for path in paths)


def test_height_vectors(entry):
    heights = height_vectors(entry("A5").diagram, 3, Window(1, 4))
    assert [item.level for item in heights] == [0, 1, 2, 3]
    for item in heights:
        assert item.exact
        assert list(item.values.values()) == [2 ** item.level] * 4
    heights = height_vectors(entry("A1").diagram, 4, Window(-3, 3))
    assert all(value == 81 for value in heights[-1].values.values())


def test_telescoped_diagram(entry):
    diagram = entry("A5").diagram.telescope(2)
    assert diagram.matrix(0).column_sum(1) == 4
    heights = height_vectors(diagram, 2, Window(1, 3))
    assert list(heights[-1].values.values()) == [16, 16, 16]
    band = entry("UniformBand", t=2).diagram.telescope(2).band
    assert band.t(0) == 4
    assert band.L(0) == 25


def test_cone_bounds(entry):
    diagram = entry("UniformBand", t=2).diagram
    cone = cone_bounds(diagram, 0, 3, ANCESTORS)
    assert cone.window == Window(-6, 6)
    assert cone.count_bound == 125
    cone = cone_bounds(diagram, 0, 0, DESCENDANTS, 2)
    assert cone.window == Window(-4, 4)
    assert cone.count_bound == 25
    one_sided = entry("UniformBand", t=2, index_set="naturals").diagram
    assert cone_bounds(one_sided, 1, 2).window == Window(1, 5)
    with pytest.raises(ValueError):
        cone_bounds(entry("A1").diagram, 0, 2)


def test_transitive_witness(entry):
    diagram = entry("A1").diagram
    path = transitive_witness(diagram, FinitePath(0, 3), 0, 1)
    assert path == FinitePath(0, 3, [
        Edge(0, 3, 2, 0), Edge(1, 2, 1, 0), Edge(2, 1, 0, 0),
    ])
    cylinder = FinitePath(0, 0, [Edge(0, 0, 1, 0)])
    path = transitive_witness(diagram, cylinder, 0, 1)
    assert path.level == 1 and path.vertex == 1
    assert path.end == 0


@settings(max_examples=20, deadline=None)
@given(vertex=st.integers(-8, 8), target=st.sampled_from([-1, 0]))
def test_transitive_witness_random_cylinders(vertex, target):
    diagram = catalog.get("A1", {"a": 1, "b": 1}).diagram
    path = transitive_witness(diagram, FinitePath(0, vertex), target, 1, 60)
    assert diagram.check_path(path).end == target
    assert len(path) <= 60


def test_transitive_witness_parity(entry):
    # the plain walk changes the parity at every level
    with pytest.raises(NoWitnessWithinHorizon):
        transitive_witness(entry("A2").diagram, FinitePath(0, 3), 0, 2, 20)


def test_slanting_sets(entry):
    diagram = entry("UniformBand", t=2).diagram
    path = slanting_boundary_path(diagram, 0, PLUS, 4)
    assert path.vertices() == [0, 2, 4, 6, 8]
    assert slanting_membership(diagram, path, 0, PLUS) == (
        ConsistentThroughDepth(4)
    )
    lower = slanting_boundary_path(diagram, 0, MINUS, 3)
    assert lower.vertices() == [0, -2, -4, -6]
    assert slanting_membership(diagram, lower, 0, PLUS) == Violated(0)
    inner = FinitePath(0, 0, [Edge(0, 0, 2, 0), Edge(1, 2, 3, 0)])
    assert slanting_membership(diagram, inner, 0, PLUS) == Violated(1)


def test_slanting_invariance(entry):
    diagram = entry("UniformBand", t=2).diagram
    path = slanting_boundary_path(diagram, 0, PLUS, 4)
    replay = slanting_invariance_replay(diagram, path, 2, 0, PLUS)
    assert replay.prefixes == 25
    assert replay.verdict == ConsistentThroughDepth(4)


def test_verify_isomorphism(entry):
    pair = entry("IsomorphismPair")
    extras = pair.extras
    result = verify_isomorphism(
        pair.diagram, extras["partner"], extras["vertex_map"],
        extras["edge_map"], 3, Window(-3, 3), Window(0, 6),
    )
    assert result == VerifiedToDepth(3)
    result = verify_isomorphism(
        pair.diagram, extras["partner"], lambda level, vertex: vertex,
        lambda level, edge: edge, 3, Window(-3, 3),
    )
    assert isinstance(result, Violation)
    assert result.level == 0
