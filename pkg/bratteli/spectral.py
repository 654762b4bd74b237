#-------------------------------------------------------------------------------
#
# Perron-Frobenius engine for infinite non-negative matrices.
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
# pylint: disable=too-many-arguments,too-many-locals,too-many-branches

from collections import namedtuple, OrderedDict
from fractions import Fraction
from functools import reduce
from math import gcd, log, exp
from numbers import Rational
from logging import getLogger
import numpy as np
from scipy.linalg import lu_factor, lu_solve
import sympy
from bratteli.util.config import CONFIG
from bratteli.errors import (
    DivergenceDetected, NoPositiveSolution, NoReturnFound, RowSumViolation,
)
from bratteli.matrix_core import (
    InfiniteNonnegMatrix, TransposedMatrix, Window,
    return_sequence, truncate,
)

LOGGER = getLogger(__name__)

TRANSIENT = "Transient"
NULL_RECURRENT = "NullRecurrent"
POSITIVE_RECURRENT = "PositiveRecurrent"
INCONCLUSIVE = "Inconclusive"

ClosedForm = namedtuple("ClosedForm", ["entry"])
Windowed = namedtuple("Windowed", ["window", "residual", "method"])

FiniteSum = namedtuple("FiniteSum", ["value", "estimated"])
Divergent = namedtuple("Divergent", ["reason"])
Inconclusive = namedtuple("Inconclusive", ["reason"])

PerronEstimate = namedtuple("PerronEstimate", [
    "value", "roots", "running_sup", "ratio", "period", "horizon",
])
ColumnSumBounds = namedtuple("ColumnSumBounds", ["inf", "sup", "exact"])
RecurrenceClass = namedtuple("RecurrenceClass", [
    "variant", "partial_sums", "horizon", "pairing", "certificate",
])
RecurrenceAgreement = namedtuple("RecurrenceAgreement", [
    "matrix_class", "stochastic_class", "identity_error", "agree",
])
FirstReturnSeries = namedtuple("FirstReturnSeries", [
    "terms", "mass", "mean", "horizon",
])
ReturnFrequencies = namedtuple("ReturnFrequencies", [
    "visits", "returns", "mean_return_time", "steps",
])


def is_exact(value):
    """ True for integers and fractions. """
    return isinstance(value, Rational)


def to_float(value):
    """ Convert exact or sympy numbers to binary64. """
    return float(value)


class EigenVector(object):
    """ Positive eigenvector accessor.

    Entries come either from a closed-form formula (unbounded domain) or
    from a dictionary of values computed on a window.
    """

    def __init__(self, index_set, formula=None, values=None, window=None,
                 exact=False):
        if (formula is None) == (values is None):
            raise ValueError("Either formula or values must be given!")
        self.index_set = index_set
        self.formula = formula
        self.values = values
        self.window = window
        self.exact = exact
        self.provenance = None

    def __call__(self, vertex):
        if self.formula is not None:
            return self.formula(vertex)
        try:
            return self.values[vertex]
        except KeyError:
            raise ValueError(
                "Vertex %s is outside of the eigenvector window %s!" % (
                    vertex, self.window
                )
            )

    def array(self, window):
        """ Float entries on the window. """
        return np.array([float(self(vertex)) for vertex in window.vertices()])

    def scaled(self, factor):
        """ Multiple of the vector. """
        if self.formula is not None:
            formula = self.formula
            return EigenVector(
                self.index_set, formula=lambda vertex: factor * formula(vertex),
                exact=self.exact and is_exact(factor),
            )
        return EigenVector(
            self.index_set, window=self.window,
            values=dict((key, factor * val) for key, val in self.values.items()),
            exact=self.exact and is_exact(factor),
        )

    def product(self, other):
        """ Entrywise product (the pairing terms eta_v * xi_v). """
        window = self.window or other.window
        if self.window and other.window:
            window = Window(
                max(self.window.lo, other.window.lo),
                min(self.window.hi, other.window.hi),
            )
        if window is None:
            return EigenVector(
                self.index_set, formula=lambda vertex: (
                    self(vertex) * other(vertex)
                ), exact=self.exact and other.exact,
            )
        return EigenVector(
            self.index_set, window=window, values=dict(
                (vertex, self(vertex) * other(vertex))
                for vertex in window.vertices()
            ), exact=self.exact and other.exact,
        )


def constant_vector(index_set, value=1):
    """ Constant closed-form vector. """
    return EigenVector(index_set, formula=lambda vertex: value, exact=True)


class EigenPair(object):
    """ Perron value with its right (xi) and left (eta) eigenvectors.

    Optional tail models describe the closed-form decay of xi and of
    the pairing terms eta*xi. The exact value of an irrational Perron
    value is kept as a sympy expression.
    """

    def __init__(self, lam, xi, eta=None, provenance=None, lam_exact=None,
                 xi_tail=None, pairing_tail=None):
        self.lam = lam
        self.xi = xi
        self.eta = eta
        self.provenance = provenance
        self.lam_exact = lam_exact
        self.xi_tail = xi_tail
        self.pairing_tail = pairing_tail

    @property
    def index_set(self):
        """ Index set of the eigenvectors. """
        return self.xi.index_set

    @property
    def xi_sum(self):
        """ Summability verdict of the right eigenvector. """
        return summability(self.xi, self.xi_tail or NumericHorizon())

    @property
    def pairing(self):
        """ Summability verdict of eta . xi. """
        if self.eta is None:
            return Inconclusive("left eigenvector not available")
        return summability(
            self.eta.product(self.xi), self.pairing_tail or NumericHorizon()
        )

    def probability(self):
        """ The eigenpair with xi scaled to sum 1. """
        total = self.xi_sum
        if not isinstance(total, FiniteSum):
            raise ValueError("The right eigenvector is not summable!")
        factor = (
            Fraction(1) / total.value if is_exact(total.value)
            else 1.0 / total.value
        )
        return EigenPair(
            self.lam, self.xi.scaled(factor), self.eta, self.provenance,
            self.lam_exact, _scaled_tail(self.xi_tail, factor),
            _scaled_tail(self.pairing_tail, factor),
        )

    def pairing_normalized_eta(self):
        """ Left eigenvector scaled so that eta . xi = 1. """
        pairing = self.pairing
        if not isinstance(pairing, FiniteSum):
            raise ValueError("The pairing eta . xi is not finite!")
        value = pairing.value
        factor = Fraction(1) / value if is_exact(value) else 1.0 / value
        return self.eta.scaled(factor)


class GeometricRatio(namedtuple("GeometricRatio", [
        "ratio", "lo", "hi", "step", "lower_ratio"])):
    """ Tail model: explicit terms lo .. hi, beyond hi every term is the
    term 'step' places before multiplied by the ratio. A lower ratio
    makes the model two-sided (terms below lo decay likewise).
    """
    __slots__ = ()

    def __new__(cls, ratio, lo, hi, step=1, lower_ratio=None):
        return super(GeometricRatio, cls).__new__(
            cls, ratio, lo, hi, step, lower_ratio
        )


ClosedFormSum = namedtuple("ClosedFormSum", ["value"])


class NumericHorizon(namedtuple("NumericHorizon", ["horizon"])):
    """ Ratio test on the partial sums up to the horizon. """
    __slots__ = ()

    def __new__(cls, horizon=None):
        return super(NumericHorizon, cls).__new__(
            cls, CONFIG.horizon if horizon is None else horizon
        )


def _scaled_tail(model, factor):
    if isinstance(model, ClosedFormSum) and model.value is not None:
        return ClosedFormSum(model.value * factor)
    return model


def _geometric_side(vector, start, direction, ratio, step, probe):
    """ Tail sum beyond start, verifying the ratio on a few terms. """
    first = [vector(start + direction * idx) for idx in range(1, step + 1)]
    for idx in range(1, probe + 1):
        for offset in range(1, step + 1):
            prev = vector(start + direction * (offset + (idx - 1) * step))
            curr = vector(start + direction * (offset + idx * step))
            if abs(float(curr) - float(prev) * float(ratio)) > (
                    1e-9 * abs(float(prev))):
                return Inconclusive("tail does not follow ratio %s" % ratio)
    if ratio >= 1:
        if any(term > 0 for term in first):
            return Divergent("geometric ratio %s >= 1" % ratio)
        return FiniteSum(0, False)
    total = sum(first)
    exact = all(is_exact(term) for term in first) and is_exact(ratio)
    one = Fraction(1) if exact else 1.0
    return FiniteSum(total * one / (one - ratio), False)


def summability(vector, tail_model, probe=8):
    """ Decide whether the entries of the vector have a finite sum. """
    if isinstance(tail_model, ClosedFormSum):
        if tail_model.value is None:
            return Divergent("closed form")
        return FiniteSum(tail_model.value, False)

    if isinstance(tail_model, GeometricRatio):
        model = tail_model
        total = sum(vector(vertex) for vertex in range(model.lo, model.hi + 1))
        sides = [
            _geometric_side(vector, model.hi, 1, model.ratio, model.step, probe)
        ]
        if model.lower_ratio is not None:
            sides.append(_geometric_side(
                vector, model.lo, -1, model.lower_ratio, model.step, probe
            ))
        for side in sides:
            if not isinstance(side, FiniteSum):
                return side
            total += side.value
        return FiniteSum(total, False)

    return _numeric_summability(vector, tail_model.horizon)


def _numeric_side(vector, start, direction, horizon, domain):
    terms = []
    for idx in range(horizon):
        vertex = start + direction * idx
        if domain is not None and not domain.contains(vertex):
            break
        terms.append(float(vector(vertex)))
    if len(terms) < 4:
        return Inconclusive("too few terms")
    tail = terms[len(terms) // 2:]
    ratios = [
        curr / prev for prev, curr in zip(tail[:-1], tail[1:]) if prev > 0
    ]
    if not ratios:
        return FiniteSum(sum(terms), True)
    rho = max(ratios)
    if rho < 1.0 - 1e-3:
        return FiniteSum(sum(terms) + terms[-1] * rho / (1.0 - rho), True)
    if min(ratios) >= 1.0 - 1e-9:
        return Divergent("terms do not decrease")
    return Inconclusive("ratio test failed (max ratio %.6g)" % rho)


def _numeric_summability(vector, horizon):
    index_set = vector.index_set
    domain = vector.window
    anchor = index_set.anchor
    if domain is not None and not domain.contains(anchor):
        anchor = domain.lo
    sides = [_numeric_side(vector, anchor, 1, horizon, domain)]
    if index_set.lower is None:
        sides.append(_numeric_side(vector, anchor - 1, -1, horizon, domain))
    for side in sides:
        if isinstance(side, Divergent):
            return side
    for side in sides:
        if isinstance(side, Inconclusive):
            return side
    return FiniteSum(sum(side.value for side in sides), True)


def _root(value, n):
    return exp(log(value) / n)


def perron_estimate(matrix, anchor, schedule=None, horizon=None,
                    window=None, ceiling=None, logger=None):
    """ Estimate the Perron value sup_n (a^(n)_ii)^(1/n).

    The schedule lists (n, window) pairs; by default a single exact
    sweep up to the horizon is used. Only return times divisible by
    the detected period contribute. The value is the larger of the
    running supremum of the roots and the last ratio estimate
    (a^(N)/a^(N-d))^(1/d).
    """
    logger = logger or LOGGER
    ceiling = CONFIG.divergence_ceiling if ceiling is None else ceiling
    if schedule is None:
        horizon = CONFIG.horizon if horizon is None else horizon
        schedule = [(horizon, window)]
    returns = {}
    for n_max, sweep_window in schedule:
        sequence = return_sequence(matrix, anchor, n_max, sweep_window)
        for n, count in enumerate(sequence, 1):
            returns[n] = max(returns.get(n, 0), count)
    horizon = max(returns)
    positive = [n for n in sorted(returns) if returns[n] > 0]
    if not positive:
        raise NoReturnFound(anchor, horizon)
    period_ = reduce(gcd, positive)

    roots, running_sup, best = [], [], 0.0
    for n in positive:
        if n % period_:
            continue
        root = _root(returns[n], n)
        if root > ceiling:
            logger.warning(
                "Perron value estimate %.6g exceeded the ceiling at n=%d.",
                root, n
            )
            raise DivergenceDetected(root, n)
        best = max(best, root)
        roots.append((n, root))
        running_sup.append(best)

    ratio = None
    tail = [n for n in positive if n % period_ == 0]
    if len(tail) >= 2 and tail[-1] - tail[-2] == period_:
        ratio = exp((
            log(returns[tail[-1]]) - log(returns[tail[-2]])
        ) / period_)
    value = max(best, ratio or 0.0)
    logger.info(
        "Perron value estimate of vertex %s: %.12g (period %d, n=%d)",
        anchor, value, period_, horizon
    )
    return PerronEstimate(value, roots, running_sup, ratio, period_, horizon)


def eigen_residual(matrix, vector, lam, window):
    """ Relative sup residual of A x = lam x on the window rows.
    Rows with support outside of the window are skipped.
    """
    scale = max(abs(vector(vertex)) for vertex in window.vertices())
    residual = 0
    for row in window.vertices():
        entries, exceeds = matrix.row(row, window)
        if exceeds:
            continue
        value = sum(val * vector(col) for col, val in entries)
        residual = max(residual, abs(value - lam * vector(row)))
    return residual / scale


def _tridiagonal(matrix):
    return (
        matrix.reach is not None and matrix.reach <= 1
        and matrix.finite_rows and matrix.finite_columns
    )


def _recurrence_values(matrix, lam, window, seeds):
    """ Exact three-term recurrence from the seed entries.
    Returns None if the recurrence cannot be run.
    """
    index_set = matrix.index_set
    if not seeds:
        if index_set.lower is None:
            return None
        seeds = {index_set.lower: 1}
    values = dict((key, Fraction(val)) for key, val in seeds.items())
    entry = matrix.entry
    for row in range(max(values), window.hi):
        upper = entry(row, row + 1)
        if not upper:
            return None
        values[row + 1] = (
            (lam - entry(row, row)) * values[row]
            - entry(row, row - 1) * values.get(row - 1, 0)
        ) / upper
    for row in range(min(values), window.lo, -1):
        lower = entry(row, row - 1)
        if not lower or row + 1 not in values:
            return None
        values[row - 1] = (
            (lam - entry(row, row)) * values[row]
            - entry(row, row + 1) * values[row + 1]
        ) / lower
    return values


def _inverse_iteration(dense, shift, tol, max_iter=200):
    """ Eigenvector of the eigenvalue closest to the shift. """
    size = dense.shape[0]
    factors = lu_factor(dense - shift * np.identity(size), check_finite=False)
    vector = np.ones(size)
    for _ in range(max_iter):
        update = lu_solve(factors, vector, check_finite=False)
        update /= update[np.argmax(np.abs(update))]
        if not np.all(np.isfinite(update)):
            return None
        if np.max(np.abs(update - vector)) <= tol:
            return update
        vector = update
    return vector


def right_eigenvector(matrix, lam, window=None, tol=None, seeds=None,
                      ring=None, anchor=None, logger=None):
    """ Positive right eigenvector A xi = lam xi on a window.

    Tri-diagonal matrices with a rational Perron value are solved by the
    exact three-term recurrence (one seed on one-sided index sets, two
    neighbouring seeds on the integers). Other matrices are solved by
    inverse iteration on the truncation. The result is normalized to 1
    at the anchor; positivity is checked off the boundary ring.
    Returns the eigenvector and its interior residual.
    """
    logger = logger or LOGGER
    index_set = matrix.index_set
    window = window or index_set.default_window(CONFIG.window)
    tol = CONFIG.tolerance if tol is None else tol
    anchor = index_set.anchor if anchor is None else anchor
    if not window.contains(anchor):
        anchor = window.lo
    ring = max(1, window.size // 4) if ring is None else ring
    interior = window.interior(ring, index_set) or window

    values = None
    if _tridiagonal(matrix) and is_exact(lam):
        values = _recurrence_values(matrix, Fraction(lam), window, seeds)
    if values is not None:
        method = "recurrence"
        scale = values[anchor]
        values = dict(
            (vertex, values[vertex] / scale) for vertex in window.vertices()
        )
    else:
        method = "inverse-iteration"
        dense = truncate(matrix, window, dtype=float)
        shift = float(lam) * (1.0 + 1e-9)
        old_settings = np.seterr(divide="ignore", invalid="ignore")
        try:
            solution = _inverse_iteration(dense, shift, tol * 1e-3)
            if solution is None:
                solution = _inverse_iteration(
                    dense, shift * (1.0 + 1e-6), tol * 1e-3
                )
        finally:
            np.seterr(**old_settings)
        if solution is None:
            raise NoPositiveSolution(anchor, float("nan"))
        solution = solution / solution[anchor - window.lo]
        values = dict(zip(window.vertices(), solution.tolist()))

    for vertex in interior.vertices():
        if values[vertex] <= 0:
            raise NoPositiveSolution(vertex, float(values[vertex]))

    vector = EigenVector(
        index_set, values=values, window=window, exact=method == "recurrence"
    )
    residual = eigen_residual(matrix, vector, lam, interior)
    logger.info(
        "Eigenvector on %s by %s: interior residual %.3g",
        window, method, float(residual)
    )
    vector.provenance = Windowed(window, residual, method)
    return vector, residual


def left_eigenvector(matrix, lam, window=None, tol=None, seeds=None,
                     ring=None, anchor=None, logger=None):
    """ Positive left eigenvector eta A = lam eta on a window. """
    return right_eigenvector(
        TransposedMatrix(matrix), lam, window, tol, seeds, ring, anchor, logger
    )


def column_sum_bounds(matrix, window):
    """ Infimum and supremum of the column sums over the window.
    Equal sums bound the Perron value exactly (summable xi assumed).
    """
    sums = [matrix.column_sum(col) for col in window.vertices()]
    return ColumnSumBounds(min(sums), max(sums), min(sums) == max(sums))


def normalized_terms(sequence, lam):
    """ Terms a^(n)/lam^n, exact when lam is rational. """
    terms = []
    for n, count in enumerate(sequence, 1):
        if count == 0:
            terms.append(0.0)
        elif is_exact(lam):
            terms.append(float(Fraction(count) / Fraction(lam) ** n))
        else:
            terms.append(exp(log(count) - n * log(float(lam))))
    return terms


def _partial_sums(terms):
    sums, total = [], 0.0
    for term in terms:
        total += term
        sums.append(total)
    return sums


def _transient_certificate(terms, tol):
    positive = [term for term in terms if term > 0]
    if len(positive) < 8:
        return False
    tail = positive[-max(4, len(positive) // 4):]
    ratios = [curr / prev for prev, curr in zip(tail[:-1], tail[1:])]
    rho = max(ratios)
    return rho < 1.0 and tail[-1] * rho / (1.0 - rho) <= tol


def _stabilized(terms, tol):
    positive = [term for term in terms if term > 0]
    if len(positive) < 8:
        return False
    tail = positive[-4:]
    return min(tail) > 0 and (max(tail) - min(tail)) <= tol * max(tail)


def classify_recurrence(matrix, lam, anchor, horizon=None, tol=None,
                        eigenpair=None, analytic=None, logger=None):
    """ Certificate-based recurrence classification.

    Order of the certificates: geometric decay of a^(n)_ii/lam^n
    (transient), finite pairing eta . xi (positive recurrent), the
    analytic label supplied by the caller, stabilization of the
    normalized returns (positive recurrent). Otherwise Inconclusive.
    """
    logger = logger or LOGGER
    horizon = CONFIG.horizon if horizon is None else horizon
    tol = CONFIG.tolerance if tol is None else tol
    terms = normalized_terms(return_sequence(matrix, anchor, horizon), lam)
    sums = _partial_sums(terms)
    pairing = eigenpair.pairing if eigenpair is not None else None
    pairing_value = (
        to_float(pairing.value) if isinstance(pairing, FiniteSum) else None
    )

    def _result(variant, certificate):
        logger.info(
            "Vertex %s classified %s (%s), partial sum %.6g at n=%d",
            anchor, variant, certificate, sums[-1], horizon
        )
        return RecurrenceClass(variant, sums, horizon, pairing_value, certificate)

    if _transient_certificate(terms, tol):
        return _result(TRANSIENT, "geometric-tail")
    if isinstance(pairing, FiniteSum):
        return _result(POSITIVE_RECURRENT, "pairing")
    if analytic is not None:
        return _result(analytic, "analytic")
    if _stabilized(terms, 1e-6):
        return _result(POSITIVE_RECURRENT, "stabilization")
    logger.warning(
        "Recurrence of vertex %s is inconclusive at n=%d.", anchor, horizon
    )
    return _result(INCONCLUSIVE, "none")


class StochasticMatrix(InfiniteNonnegMatrix):
    """ Markov kernel p(w, v) = a(w, v) xi(v) / (lam xi(w)) induced by
    a Perron eigenpair.
    """

    def __init__(self, matrix, eigenpair):
        super(StochasticMatrix, self).__init__(matrix.index_set)
        self.matrix = matrix
        self.pair = eigenpair
        self.finite_columns = matrix.finite_columns
        self.finite_rows = matrix.finite_rows
        self.reach = matrix.reach

    def _weight(self, row, col, value):
        xi = self.pair.xi
        return value * xi(col) / (self.pair.lam * xi(row))

    def _entry(self, row, col):
        return self._weight(row, col, self.matrix.entry(row, col))

    def _column(self, col):
        return [
            (row, self._weight(row, col, value))
            for row, value in self.matrix.column(col)
        ]

    def _row(self, row, window):
        entries, exceeds = self.matrix.row(row, window)
        return [
            (col, self._weight(row, col, value)) for col, value in entries
        ], exceeds

    def row_sum(self, row, window):
        """ Sum of the row entries inside the window. """
        return sum(value for _, value in self.row(row, window)[0])

    def validate(self, rows, window, tol=None):
        """ Check that the rows sum to 1 (RowSumViolation otherwise). """
        tol = CONFIG.row_sum_tolerance if tol is None else tol
        for row in rows:
            total = self.row_sum(row, window)
            if abs(total - 1) > tol:
                raise RowSumViolation(row, float(total))

    def eigenpair(self, horizon=None):
        """ Eigenpair (1, ones, eta*xi) of the stochastic matrix. The pairing
        is summed numerically from the new vectors.
        """
        one = Fraction(1) if is_exact(self.pair.lam) else 1.0
        eta = None
        if self.pair.eta is not None:
            eta = self.pair.eta.product(self.pair.xi)
        return EigenPair(
            one, constant_vector(self.index_set), eta, self.pair.provenance,
            pairing_tail=NumericHorizon(horizon),
        )


def stochastic_from_eigenpair(matrix, eigenpair, window=None, rows=None,
                              tol=None):
    """ Stochastic matrix of the eigenpair with validated row sums. """
    window = window or matrix.index_set.default_window(CONFIG.window)
    if rows is None:
        interior = window.interior(matrix.reach or 1, matrix.index_set)
        rows = interior.vertices() if interior else window.vertices()
    stochastic = StochasticMatrix(matrix, eigenpair)
    stochastic.validate(rows, window, tol)
    return stochastic


def verify_power_identity(matrix, eigenpair, vertex, n):
    """ Compare p^(n)_vv with a^(n)_vv / lam^n. """
    stochastic = StochasticMatrix(matrix, eigenpair)
    lhs = return_sequence(stochastic, vertex, n)[-1]
    count = return_sequence(matrix, vertex, n)[-1]
    lam = eigenpair.lam
    rhs = Fraction(count) / Fraction(lam) ** n if is_exact(lam) else (
        count / float(lam) ** n
    )
    return lhs, rhs, abs(lhs - rhs)


def power_identity_errors(matrix, eigenpair, vertex, horizon,
                          stochastic=None):
    """ Errors of p^(n)_vv = a^(n)_vv / lam^n for n = 1 .. horizon,
    relative where the right-hand side is positive.
    """
    stochastic = stochastic or StochasticMatrix(matrix, eigenpair)
    induced = return_sequence(stochastic, vertex, horizon)
    expected = normalized_terms(
        return_sequence(matrix, vertex, horizon), eigenpair.lam
    )
    errors = []
    for lhs, rhs in zip(induced, expected):
        error = abs(float(lhs) - rhs)
        errors.append(error / rhs if rhs > 0 else error)
    return errors


def recurrence_agreement(matrix, eigenpair, anchor, horizon=None, tol=None,
                         analytic=None, logger=None):
    """ Classify the matrix and its stochastic matrix independently.

    The stochastic matrix is judged by its own return probabilities and
    by the numeric pairing of its left eigenvector eta*xi with the
    constant vector; the analytic label applies to the matrix only.
    Without a certificate of its own the stochastic matrix takes the
    class of the matrix through the power identity (certificate
    "power-identity"), provided the identity holds up to the horizon.
    """
    logger = logger or LOGGER
    horizon = CONFIG.horizon if horizon is None else horizon
    tol = CONFIG.tolerance if tol is None else tol
    direct = classify_recurrence(
        matrix, eigenpair.lam, anchor, horizon, tol, eigenpair=eigenpair,
        analytic=analytic, logger=logger,
    )
    stochastic = StochasticMatrix(matrix, eigenpair)
    induced_pair = stochastic.eigenpair(horizon)
    induced = classify_recurrence(
        stochastic, induced_pair.lam, anchor, horizon, tol,
        eigenpair=induced_pair, logger=logger,
    )
    errors = power_identity_errors(
        matrix, eigenpair, anchor, horizon, stochastic
    )
    error = max(errors) if errors else 0.0
    holds = error <= tol
    if holds and induced.variant == INCONCLUSIVE:
        induced = induced._replace(
            variant=direct.variant, certificate="power-identity"
        )
    agree = holds and induced.variant == direct.variant
    if not agree:
        logger.warning(
            "Recurrence of vertex %s: matrix %s (%s), stochastic matrix %s "
            "(%s), power identity error %.3g", anchor, direct.variant,
            direct.certificate, induced.variant, induced.certificate, error,
        )
    return RecurrenceAgreement(direct, induced, error, agree)


def first_return_series(matrix, lam, vertex, horizon=None):
    """ Partial sums of l_vv(n)/lam^n and n*l_vv(n)/lam^n, where l_vv(n)
    counts the returns avoiding the vertex in between.
    """
    horizon = CONFIG.horizon if horizon is None else horizon
    layer, counts = {vertex: 1}, []
    for _ in range(horizon):
        step = {}
        for col, count in layer.items():
            for row, value in matrix.column(col):
                step[row] = step.get(row, 0) + value * count
        counts.append(step.pop(vertex, 0))
        layer = step
    terms = normalized_terms(counts, lam)
    return FirstReturnSeries(
        terms, sum(terms),
        sum(n * term for n, term in enumerate(terms, 1)), horizon,
    )


def truncated_spectral_radius(matrix, window):
    """ Spectral radius of the float truncation. """
    dense = truncate(matrix, window, dtype=float)
    return float(np.max(np.abs(np.linalg.eigvals(dense))))


def sample_walk(stochastic, start, steps, window, seed=None):
    """ Sample a trajectory of the Markov chain. Rows are truncated to
    the window and renormalized.
    """
    rng = np.random.default_rng(CONFIG.seed if seed is None else seed)
    cache = {}
    state, states = start, [start]
    for _ in range(steps):
        if state not in cache:
            entries = stochastic.row(state, window)[0]
            targets = np.array([col for col, _ in entries])
            weights = np.array([float(val) for _, val in entries])
            cache[state] = (targets, weights / weights.sum())
        targets, weights = cache[state]
        state = int(rng.choice(targets, p=weights))
        states.append(state)
    return states


def return_frequencies(states):
    """ Empirical occupation frequencies and returns to the start. """
    steps = len(states) - 1
    visits = OrderedDict()
    for state in sorted(set(states[1:])):
        visits[state] = 0
    for state in states[1:]:
        visits[state] += 1
    for state in visits:
        visits[state] /= float(steps)
    times = [idx for idx, state in enumerate(states) if state == states[0]]
    returns = len(times) - 1
    mean = (times[-1] / float(returns)) if returns else None
    return ReturnFrequencies(visits, returns, mean, steps)


def exact_lambda_check(lam_exact, equation, symbol):
    """ Verify symbolically that the exact Perron value solves the
    defining equation (a sympy expression in the symbol).
    """
    return sympy.simplify(equation.subs(symbol, lam_exact)) == 0
