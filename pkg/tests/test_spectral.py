#-------------------------------------------------------------------------------
#
# Spectral routines tests.
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
import pytest
import sympy
from bratteli.errors import DivergenceDetected, RowSumViolation
from bratteli.matrix_core import Window, INTEGERS
from bratteli.catalog import Z
from bratteli.spectral import (
    EigenPair, FiniteSum, Divergent, NumericHorizon, TRANSIENT,
    NULL_RECURRENT, POSITIVE_RECURRENT, INCONCLUSIVE, constant_vector,
    perron_estimate, right_eigenvector, left_eigenvector, eigen_residual,
    classify_recurrence, summability, stochastic_from_eigenpair,
    verify_power_identity, first_return_series, truncated_spectral_radius,
    column_sum_bounds, sample_walk, return_frequencies, exact_lambda_check,
)


@pytest.mark.parametrize("ident,params,expected", [
    ("A1", {}, 3),
    ("A1", {"a": 1, "b": 2}, 5),
    ("A3", {}, 4),
    ("A4", {}, 4),
    ("A5", {}, 2),
    ("A6", {}, 1 + 2 ** 0.5),
])
def test_perron_estimate(entry, ident, params, expected):
    item = entry(ident, **params)
    estimate = perron_estimate(item.matrix, item.anchor, horizon=60)
    assert estimate.value == pytest.approx(expected, rel=1e-2)
    assert estimate.period == 1
    assert estimate.running_sup == sorted(estimate.running_sup)


def test_perron_estimate_periodic(entry):
    item = entry("A2")
    estimate = perron_estimate(item.matrix, 0, horizon=200)
    assert estimate.period == 2
    assert all(n % 2 == 0 for n, _ in estimate.roots)
    assert estimate.value == pytest.approx(2, rel=1e-2)


def test_perron_estimate_diverges(entry):
    with pytest.raises(DivergenceDetected):
        perron_estimate(entry("InfinitePerron").matrix, 0, horizon=60)


def test_truncated_radius_grows(entry):
    matrix = entry("InfinitePerron").matrix
    radii = [
        truncated_spectral_radius(matrix, Window(-width, width))
        for width in (2, 3, 4)
    ]
    assert radii == sorted(radii)
    assert radii[-1] > 256


def test_column_sum_bounds(entry):
    bounds = column_sum_bounds(entry("A1").matrix, Window(-10, 10))
    assert (bounds.inf, bounds.sup, bounds.exact) == (3, 3, True)


def test_recurrence_eigenvectors(entry):
    item = entry("A1")
    window = Window(-10, 10)
    xi, residual = right_eigenvector(
        item.matrix, 3, window, seeds=item.oracle.seeds
    )
    assert residual == 0
    assert xi.exact
    for vertex in window.vertices():
        assert xi(vertex) == item.oracle.xi(vertex)
    eta, residual = left_eigenvector(
        item.matrix, 3, window, seeds=item.oracle.seeds
    )
    assert residual == 0
    assert all(eta(vertex) == 1 for vertex in window.vertices())


def test_recurrence_one_sided(entry):
    item = entry("A3")
    xi, _ = right_eigenvector(item.matrix, 4, Window(1, 20))
    assert [xi(vertex) for vertex in range(1, 6)] == [
        Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 8),
        Fraction(1, 16),
    ]


def test_inverse_iteration(entry):
    item = entry("A6")
    xi, residual = right_eigenvector(item.matrix, item.oracle.lam,
                                     Window(1, 40))
    assert not xi.exact
    assert residual < 1e-8
    scale = item.oracle.xi(1)
    for vertex in range(1, 11):
        assert xi(vertex) == pytest.approx(
            item.oracle.xi(vertex) / scale, rel=1e-8
        )


def test_eigen_residual_closed_forms(entry):
    for ident, window in (("A1", Window(-25, 25)), ("A4", Window(1, 40)),
                          ("A5", Window(1, 40))):
        pair = entry(ident).eigenpair()
        assert eigen_residual(entry(ident).matrix, pair.xi, pair.lam,
                              window) == 0
    pair = entry("A6").eigenpair()
    assert eigen_residual(
        entry("A6").matrix, pair.xi, pair.lam, Window(1, 40)
    ) < 1e-12


def test_summability_closed_forms(entry):
    assert entry("A1").eigenpair().xi_sum == FiniteSum(4, False)
    assert entry("A3").eigenpair().xi_sum == FiniteSum(2, False)
    assert entry("A4").eigenpair().xi_sum == FiniteSum(Fraction(9, 4), False)
    assert entry("A5").eigenpair().xi_sum.value == 1
    assert entry("A6").eigenpair().xi_sum.value == pytest.approx(1, abs=1e-12)
    assert isinstance(entry("A2").eigenpair().xi_sum, Divergent)
    assert isinstance(
        entry("A1", a=3, b=1).eigenpair().xi_sum, Divergent
    )


def test_summability_numeric(entry):
    xi = entry("A1").oracle.xi
    result = summability(xi, NumericHorizon(60))
    assert result.estimated
    assert result.value == pytest.approx(4, abs=1e-9)
    assert isinstance(
        summability(constant_vector(INTEGERS), NumericHorizon(60)), Divergent
    )


def test_first_column_pairing(entry):
    pair = entry("A7", c="1", tail=1).eigenpair()
    assert pair.lam == 2
    assert pair.pairing.value == 2
    assert isinstance(pair.xi_sum, Divergent)
    assert all(pair.xi(vertex) == 1 for vertex in range(1, 10))


def test_classify_positive(entry):
    for ident in ("A5", "A6"):
        item = entry(ident)
        result = classify_recurrence(
            item.matrix, item.oracle.lam, item.anchor,
            eigenpair=item.eigenpair(),
        )
        assert result.variant == POSITIVE_RECURRENT
        assert result.certificate == "pairing"


def test_classify_transient(entry):
    item = entry("A1", a=5, b=1)
    result = classify_recurrence(
        item.matrix, item.oracle.lam, 0, eigenpair=item.eigenpair(),
        analytic=item.oracle.recurrence,
    )
    assert result.variant == TRANSIENT


def test_classify_null(entry):
    item = entry("A2")
    result = classify_recurrence(
        item.matrix, item.oracle.lam, 0, horizon=400,
        eigenpair=item.eigenpair(), analytic=item.oracle.recurrence,
    )
    assert result.variant == NULL_RECURRENT
    assert result.partial_sums[-1] > 10
    result = classify_recurrence(item.matrix, item.oracle.lam, 0, horizon=400)
    assert result.variant == INCONCLUSIVE


def test_stochastic_matrix(entry):
    item = entry("A1")
    window = Window(-10, 10)
    stochastic = stochastic_from_eigenpair(
        item.matrix, item.eigenpair(), window
    )
    for row in range(-9, 10):
        assert stochastic.row_sum(row, window) == 1
    pair = stochastic.eigenpair()
    assert pair.lam == 1
    assert pair.xi(5) == 1
    wrong = EigenPair(4, item.oracle.xi)
    with pytest.raises(RowSumViolation):
        stochastic_from_eigenpair(item.matrix, wrong, window)


def test_power_identity(entry):
    item = entry("A1")
    for n in range(1, 7):
        lhs, rhs, error = verify_power_identity(
            item.matrix, item.eigenpair(), 0, n
        )
        assert lhs == rhs
        assert error == 0


def test_first_return_series(entry):
    series = first_return_series(entry("A5").matrix, 2, 1, 60)
    assert series.terms[:3] == [0.5, 0.25, 0.125]
    assert series.mass == pytest.approx(1, abs=1e-12)
    assert series.mean == pytest.approx(2, abs=1e-9)


def test_sample_walk_reproducible(entry):
    item = entry("A1")
    window = Window(-10, 10)
    stochastic = stochastic_from_eigenpair(
        item.matrix, item.eigenpair(), window
    )
    first = sample_walk(stochastic, 0, 200, window, seed=3)
    second = sample_walk(stochastic, 0, 200, window, seed=3)
    assert first == second
    assert len(first) == 201
    assert all(window.contains(state) for state in first)
    assert all(abs(b - a) <= 1 for a, b in zip(first[:-1], first[1:]))


def test_return_frequencies():
    result = return_frequencies([0, 1, 0, 2, 0])
    assert result.steps == 4
    assert dict(result.visits) == {0: 0.5, 1: 0.25, 2: 0.25}
    assert result.returns == 2
    assert result.mean_return_time == 2


def test_exact_lambda(entry):
    item = entry("A2", a=1, b=2)
    assert exact_lambda_check(item.oracle.lam_exact, item.oracle.equation, Z)
    assert float(item.oracle.lam_exact) == pytest.approx(item.oracle.lam)
    item = entry("A6")
    assert exact_lambda_check(item.oracle.lam_exact, item.oracle.equation, Z)
    assert not exact_lambda_check(sympy.Integer(3), item.oracle.equation, Z)
