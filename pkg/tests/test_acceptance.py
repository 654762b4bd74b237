#-------------------------------------------------------------------------------
#
# End-to-end checks on the catalog diagrams.
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

from fractions import Fraction
from itertools import product
import numpy as np
import pytest
from bratteli import catalog
from bratteli.matrix_core import Window
from bratteli.diagram import Edge, FinitePath, height_vectors
from bratteli.spectral import (
    POSITIVE_RECURRENT, NULL_RECURRENT, perron_estimate, eigen_residual,
    FiniteSum, Divergent, StochasticMatrix, classify_recurrence,
    recurrence_agreement, stochastic_from_eigenpair,
)
from bratteli.measures import (
    MeasureVectors, SigmaFinite, invariant_vectors, normalized_sequences,
    nu_iteration, height_ratio_limit, frequency_check, ratio_limit_check,
)
from bratteli.orders_vershik import (
    OrderedPath, FirstEdgeTail, MaximalTail, Image, Preimage, vershik_step,
    vershik_inverse_step, path_distance, discontinuity_witness,
    continuity_probe, compressibility_probe,
)


def test_periodic_walk_perron_value(entry):
    estimate = perron_estimate(entry("A2").matrix, 0, horizon=60)
    assert estimate.period == 2
    assert estimate.value == pytest.approx(2, rel=1e-2)


@pytest.mark.parametrize("ident,params,window", [
    ("A1", {}, Window(-25, 25)),
    ("A1", {"a": 1, "b": 2}, Window(-25, 25)),
    ("A3", {}, Window(1, 50)),
    ("A4", {}, Window(1, 50)),
    ("A5", {}, Window(1, 50)),
])
def test_exact_eigenvectors(entry, ident, params, window):
    item = entry(ident, **params)
    pair = item.eigenpair()
    assert eigen_residual(item.matrix, pair.xi, pair.lam, window) == 0


@pytest.mark.parametrize("ident,horizon,expected", [
    ("A1", 40, POSITIVE_RECURRENT),
    ("A2", 100, NULL_RECURRENT),
    ("A3", 40, POSITIVE_RECURRENT),
    ("A4", 40, POSITIVE_RECURRENT),
    ("A5", 60, POSITIVE_RECURRENT),
    ("A6", 60, POSITIVE_RECURRENT),
    ("A7", 40, POSITIVE_RECURRENT),
    ("UniformBand", 60, NULL_RECURRENT),
])
def test_stochastic_matrix_agrees(entry, ident, horizon, expected):
    item = entry(ident)
    result = recurrence_agreement(
        item.matrix, item.eigenpair(), item.anchor, horizon=horizon,
        analytic=item.oracle.recurrence,
    )
    assert result.agree
    assert result.identity_error <= 1e-9
    assert result.matrix_class.variant == expected
    assert result.stochastic_class.variant == expected
    if expected == POSITIVE_RECURRENT:
        # decided by the pairing of the stochastic eigenvectors
        assert result.stochastic_class.certificate == "pairing"
    else:
        assert result.stochastic_class.certificate == "power-identity"


def test_stochastic_matrix_pairing_is_recomputed(entry):
    item = entry("A2")
    pair = item.eigenpair()
    induced = StochasticMatrix(item.matrix, pair).eigenpair(horizon=50)
    assert isinstance(induced.pairing, Divergent)
    item = entry("A5")
    induced = StochasticMatrix(item.matrix, item.eigenpair()).eigenpair()
    assert isinstance(induced.pairing, FiniteSum)
    assert induced.pairing.estimated
    assert induced.pairing.value == pytest.approx(1, abs=1e-9)


def test_null_recurrent_walk(entry):
    item = entry("A2")
    result = classify_recurrence(
        item.matrix, item.oracle.lam, 0, horizon=400,
        eigenpair=item.eigenpair(), analytic=item.oracle.recurrence,
    )
    assert result.variant == NULL_RECURRENT
    assert result.partial_sums[-1] > 10


def test_renewal_towers(entry):
    item = entry("A5")
    window = Window(1, 40)
    measure = MeasureVectors.from_eigenpair(
        item.diagram, item.eigenpair(), 8, window
    )
    heights = height_vectors(item.diagram, 8, window)
    for level in range(9):
        assert heights[level].values[5] == 2 ** level
        total = sum(
            measure.value(level, vertex) * heights[level].values[vertex]
            for vertex in window.vertices()
        )
        assert float(total) == pytest.approx(1, abs=1e-9)


def test_renewal_inverse_limit(entry):
    item = entry("A5")
    window = Window(1, 30)
    measure = invariant_vectors(item.diagram, 2, window, depth_step=40)
    for level in range(3):
        for vertex in window.vertices():
            assert measure.value(level, vertex) == pytest.approx(
                2.0 ** -vertex / 2 ** level, abs=1e-8
            )


def test_two_measures_on_wide_window(entry):
    item = entry("A2", a=1, b=2)
    window = Window(-10, 10)
    first, second = [
        invariant_vectors(
            item.diagram, 1, window, seed=pair.xi,
            normalization=SigmaFinite(0, 0),
        ) for pair in [item.eigenpair()] + item.extras["eigenpairs"]
    ]
    for measure in (first, second):
        assert max(measure.residuals) <= 1e-8
    ratios = [
        measure.value(0, 5) / measure.value(0, 4)
        for measure in (first, second)
    ]
    assert abs(ratios[0] - ratios[1]) > 0.1 * max(ratios)


def test_nu_iteration_limit(entry):
    item = entry("A5")
    stochastic = stochastic_from_eigenpair(
        item.matrix, item.eigenpair(), Window(1, 40)
    )
    result = nu_iteration(stochastic, 40, Window(1, 10))
    assert result.distances[-1] <= 1e-3


def test_height_ratios_limit(entry):
    item = entry("A5")
    result = height_ratio_limit(item.diagram, item.eigenpair(), 1, 1, 30)
    assert result.error <= 1e-3


FREQUENCY_CASES = [
    # (entry, params, one-edge cylinder, two-edge cylinder ending alike)
    ("A5", {}, FinitePath(0, 1, [Edge(0, 1, 2, 0)]),
     FinitePath(0, 2, [Edge(0, 2, 1, 0), Edge(1, 1, 2, 0)])),
    ("A6", {}, FinitePath(0, 1, [Edge(0, 1, 2, 0)]),
     FinitePath(0, 1, [Edge(0, 1, 1, 0), Edge(1, 1, 2, 0)])),
    ("A1", {"a": 1, "b": 2}, FinitePath(0, 0, [Edge(0, 0, 1, 0)]),
     FinitePath(0, 1, [Edge(0, 1, 0, 0), Edge(1, 0, 1, 0)])),
]


@pytest.mark.parametrize("ident,params,first,second", FREQUENCY_CASES)
def test_frequency_limits(entry, ident, params, first, second):
    item = entry(ident, **params)
    pair = item.eigenpair()
    result = frequency_check(item.diagram, pair, first, 40)
    assert result.error <= 1e-3
    result = ratio_limit_check(item.diagram, pair, first, second, 40)
    assert result.target == pytest.approx(float(pair.lam))
    assert result.error <= 1e-3


@pytest.mark.parametrize("ident,window", [
    ("A1", Window(-40, 40)),
    ("A5", Window(1, 40)),
    ("A6", Window(1, 60)),
])
def test_normalized_sequences_identities(entry, ident, window):
    item = entry(ident)
    measure = MeasureVectors.from_eigenpair(
        item.diagram, item.eigenpair(), 4, window
    )
    heights = height_vectors(item.diagram, 4, window)
    result = normalized_sequences(item.diagram, measure, heights)
    assert all(lam > 1 for lam in result.lambda_seq)
    assert result.errors["pairing"] <= 1e-10
    assert result.errors["reconstruction"] <= 1e-12


def _all_paths(diagram, vertex, level):
    if level == 0:
        return [[]]
    return [
        prefix + [edge]
        for edge in diagram.edges_into(level - 1, vertex)
        for prefix in _all_paths(diagram, edge.source, level - 1)
    ]


@pytest.mark.parametrize("ident,params,vertex,window", [
    ("A1", {}, 0, Window(-10, 10)),
    ("A5", {}, 1, Window(1, 10)),
    ("UniformBand", {"t": 1}, 0, Window(-10, 10)),
])
def test_vershik_matches_lexicographic_order(entry, ident, params, vertex,
                                            window):
    item = entry(ident, **params)
    diagram, order = item.diagram, item.order
    paths = sorted(
        _all_paths(diagram, vertex, 5),
        key=lambda edges: [order.rank(edge) for edge in reversed(edges)],
    )
    tail = FirstEdgeTail(diagram, window)
    for edges, expected in zip(paths, paths[1:]):
        path = OrderedPath(FinitePath(0, edges[0].source, edges), tail)
        image = vershik_step(order, path, 10)
        assert isinstance(image, Image)
        assert list(image.path.edges(5)) == expected


def test_sampled_inverse_round_trips():
    diagram = catalog.get("A1").diagram
    order = catalog.get("A1").order
    tail = FirstEdgeTail(diagram)
    rng = np.random.default_rng(0)
    checked = 0
    while checked < 10000:
        current = int(rng.integers(-6, 7))
        start, edges = current, []
        for level in range(6):
            options = diagram.edges_from(level, current)
            edge = options[int(rng.integers(len(options)))]
            edges.append(edge)
            current = edge.target
        path = OrderedPath(FinitePath(0, start, edges), tail)
        image = vershik_step(order, path, 40)
        if not isinstance(image, Image):
            continue
        back = vershik_inverse_step(order, image.path, 40)
        assert isinstance(back, Preimage)
        assert back.path.edges(8) == path.edges(8)
        checked += 1


@pytest.mark.parametrize("power", range(3, 9))
def test_discontinuity_in_every_ball(entry, power):
    order = entry("UniformBand", t=2).order
    witness = discontinuity_witness(order, 0, 2, epsilon=2.0 ** -power)
    assert witness.level == power
    assert witness.distance == 1
    assert path_distance(witness.first, witness.second, power) == 0


def test_continuous_vershik_distances(entry):
    item = entry("ContinuousVershik")
    order = item.order
    extremes = [
        OrderedPath(FinitePath(0, vertex), MaximalTail(order))
        for vertex in (-1, 0, 1)
    ]
    table = continuity_probe(
        order, item.extras["pairing_rule"], extremes, range(3, 9)
    )
    assert table.flagged == 0
    assert table.samples
    for sample in table.samples:
        assert sample.distance == Fraction(1, 2 ** sample.level)


@pytest.mark.slow
def test_compressible_cylinder_long_run(entry):
    item = entry("Compressible")
    report = compressibility_probe(
        item.order, item.extras["cylinder_vertex"], 100000, Window(1, 8),
        seed=0,
    )
    assert report.steps == 100000
    assert report.entries == 0
