#-------------------------------------------------------------------------------
#
# Tail-invariant measures and their limit identities.
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
# pylint: disable=too-many-arguments,too-many-locals

from collections import namedtuple, OrderedDict
from fractions import Fraction
from logging import getLogger
from bratteli.util.config import CONFIG
from bratteli.errors import (
    ConeCollapse, NormalizationViolation, RowSumViolation,
)
from bratteli.matrix_core import Window, local_reach
from bratteli.spectral import is_exact
from bratteli.diagram import Diagram, height_vectors

LOGGER = getLogger(__name__)

Probability = namedtuple("Probability", [])
SigmaFinite = namedtuple("SigmaFinite", ["level", "vertex"])
PROBABILITY = Probability()

NormalizedSequences = namedtuple("NormalizedSequences", [
    "lambda_seq", "mu_hat", "H_hat", "scale", "errors", "valid",
])
StochasticLevel = namedtuple("StochasticLevel", [
    "level", "kind", "rows", "row_sum_error", "consistency_error",
])
NuIteration = namedtuple("NuIteration", [
    "vectors", "limit", "distances", "closed_form_errors", "totals",
])
LimitSequence = namedtuple("LimitSequence", ["values", "target", "error"])

P_HAT = "P_hat"
G = "G"


def _power(lam, n):
    return Fraction(lam) ** n if is_exact(lam) else float(lam) ** n


def _pull_back(matrix, vector, window):
    """ A p restricted to the window rows, evaluated through the columns. """
    result = OrderedDict((vertex, 0) for vertex in window.vertices())
    for col, value in vector.items():
        if not value:
            continue
        for row, count in matrix.column(col):
            if row in result:
                result[row] += count * value
    return result


def consistency_residuals(diagram, vectors, window):
    """ sup |A_n p^(n+1) - p^(n)| over the rows of the window whose
    support lies inside of the window.
    """
    residuals = []
    for level in range(len(vectors) - 1):
        matrix, upper = diagram.matrix(level), vectors[level + 1]
        residual = 0
        for row in window.vertices():
            entries, exceeds = matrix.row(row, window)
            if exceeds:
                continue
            value = sum(count * upper[col] for col, count in entries)
            residual = max(residual, abs(value - vectors[level][row]))
        residuals.append(residual)
    return residuals


class MeasureVectors(namedtuple("MeasureVectors", [
        "vectors", "residuals", "normalization", "depth", "window"])):
    """ Cylinder values p^(n)_v of a tail-invariant measure on a window.
    The value of a cylinder depends on its range only.
    """
    __slots__ = ()

    @property
    def levels(self):
        """ Number of the levels with known values. """
        return len(self.vectors)

    def value(self, level, vertex):
        """ Measure of a cylinder ending at the vertex of the level. """
        return self.vectors[level][vertex]

    def cylinder(self, path):
        """ Measure of the cylinder set of a finite path from V_0. """
        return self.value(path.end_level, path.end)

    @classmethod
    def from_eigenpair(cls, diagram, eigenpair, level, window,
                       normalization=PROBABILITY):
        """ Closed-form values xi_v / lam^n of a stationary diagram. """
        if isinstance(normalization, Probability):
            eigenpair = eigenpair.probability()
        xi, lam = eigenpair.xi, eigenpair.lam
        factor = 1
        if isinstance(normalization, SigmaFinite):
            factor = _power(lam, normalization.level) / xi(normalization.vertex)
        vectors = [
            OrderedDict(
                (vertex, factor * xi(vertex) / _power(lam, current))
                for vertex in window.vertices()
            ) for current in range(level + 1)
        ]
        return cls(
            vectors, consistency_residuals(diagram, vectors, window),
            normalization, None, window,
        )


def stationary_cylinder_measure(eigenpair, path):
    """ Measure xi_v / lam^n of the cylinder of a path of length n ending
    at v; exact for rational data.
    """
    return eigenpair.xi(path.end) / _power(eigenpair.lam, len(path))


def _deep_window(diagram, window, depth):
    width = sum(local_reach(diagram.matrix(level)) for level in range(depth))
    return window.pad(width, diagram.index_set)


def _pull_from_depth(diagram, level, depth, deep, seed):
    """ p^(n) for n <= level pulled back from the seed at the depth.
    The levels deeper than the requested one are renormalized to sup 1.
    """
    vector = OrderedDict(
        (vertex, 1.0 if seed is None else float(seed(vertex)))
        for vertex in deep.vertices()
    )
    vectors = [None] * (level + 1)
    for current in range(depth - 1, -1, -1):
        vector = _pull_back(diagram.matrix(current), vector, deep)
        if current >= level:
            scale = max(vector.values())
            if scale > 0:
                vector = OrderedDict(
                    (key, value / scale) for key, value in vector.items()
                )
        if current <= level:
            vectors[current] = vector
    return vectors


def _normalize(vectors, normalization):
    if isinstance(normalization, SigmaFinite):
        total = vectors[normalization.level][normalization.vertex]
    else:
        total = sum(vectors[0].values())
    if total <= 0:
        return None
    return [
        OrderedDict((key, value / total) for key, value in vector.items())
        for vector in vectors
    ]


def _restrict(vectors, window):
    return [
        OrderedDict((vertex, vector[vertex]) for vertex in window.vertices())
        for vector in vectors
    ]


def _distance(first, second):
    return max(
        abs(vector_a[key] - vector_b[key])
        for vector_a, vector_b in zip(first, second) for key in vector_a
    )


def invariant_vectors(diagram, level, window, tol=None, seed=None,
                      normalization=PROBABILITY, depth_step=None,
                      max_depth=None, full_measure=False, logger=None):
    """ Approximate the cylinder values of the levels 0 .. N by pulling
    seeds from increasing depths M back through A_{M-1} ... A_n.

    The depth grows until two successive approximations agree within
    the tolerance on the window. ConeCollapse is raised when the
    window carries a vanishing share of the pulled-back mass, when the
    approximations do not settle within the maximum depth, or (full
    measure mode) when a window value vanishes.
    """
    logger = logger or LOGGER
    tol = CONFIG.cauchy_tolerance if tol is None else tol
    depth_step = CONFIG.depth_step if depth_step is None else depth_step
    max_depth = CONFIG.max_depth if max_depth is None else max_depth
    previous, mass, depth = None, 1.0, level
    while True:
        depth += depth_step
        if depth > max_depth:
            raise ConeCollapse(mass, depth - depth_step)
        deep = _deep_window(diagram, window, depth)
        vectors = _pull_from_depth(diagram, level, depth, deep, seed)
        top = max(vectors[0].values())
        mass = (
            max(vectors[0][vertex] for vertex in window.vertices()) / top
            if top > 0 else 0.0
        )
        normalized = _normalize(vectors, normalization)
        current = None if normalized is None else _restrict(normalized, window)
        logger.debug(
            "Inverse limit depth %d: window mass share %.3g", depth, mass
        )
        if previous is not None and current is not None:
            if _distance(previous, current) <= tol:
                break
        if mass < CONFIG.collapse_threshold or current is None:
            logger.warning(
                "Cone collapse at depth %d (window mass share %.3g).",
                depth, mass
            )
            raise ConeCollapse(mass, depth)
        previous = current

    if full_measure and min(current[0].values()) <= 0:
        raise ConeCollapse(min(current[0].values()), depth)
    residuals = consistency_residuals(diagram, current, window)
    logger.info(
        "Inverse limit converged at depth %d, max residual %.3g",
        depth, max(residuals) if residuals else 0.0
    )
    return MeasureVectors(current, residuals, normalization, depth, window)


def _value(measure, level, vertex):
    if isinstance(measure, MeasureVectors):
        return measure.value(level, vertex)
    return measure.xi(vertex) / _power(measure.lam, level)


def tower_measure(diagram, measure, vertex, level):
    """ Measure p^(n)_v H^(n)_v of the tower over the vertex. """
    heights = height_vectors(diagram, level, Window(vertex, vertex))[-1]
    return _value(measure, level, vertex) * heights.values[vertex]


def normalized_sequences(diagram, measure, heights, tol=None, strict=True,
                         logger=None):
    """ lam_n = |mu^(n)|/|mu^(n+1)|, mu_hat = mu^(n)/|mu^(n)| and
    H_hat = |mu^(n)| H^(n) (sup norms over the window) together with
    the maximal errors of the identities they satisfy:
    <mu_hat, H_hat> = 1, A_n mu_hat^(n+1) = lam_n mu_hat^(n),
    F_n H_hat^(n) = lam_n H_hat^(n+1) and the reconstruction
    p^(n) = |mu^(0)| mu_hat^(n) / (lam_0 ... lam_{n-1}).

    The measure must be a probability measure and every lam_n > 1.
    A violation raises NormalizationViolation; with strict=False it is
    logged and the result is flagged invalid.
    """
    logger = logger or LOGGER
    tol = CONFIG.tolerance if tol is None else tol
    window = measure.window
    norms = [max(vector.values()) for vector in measure.vectors]
    mu_hat = [
        OrderedDict((key, value / norm) for key, value in vector.items())
        for vector, norm in zip(measure.vectors, norms)
    ]
    h_hat = [
        OrderedDict(
            (key, norm * value) for key, value in heights[level].values.items()
        ) for level, norm in enumerate(norms)
    ]
    lambdas = [
        norms[level] / norms[level + 1] for level in range(len(norms) - 1)
    ]

    errors = OrderedDict()
    errors["pairing"] = max(
        abs(sum(mu[key] * hh[key] for key in mu) - 1)
        for mu, hh in zip(mu_hat, h_hat)
    )
    errors["measure_recursion"] = 0
    errors["height_recursion"] = 0
    errors["reconstruction"] = 0
    product = 1
    for level, lam in enumerate(lambdas):
        matrix = diagram.matrix(level)
        for row in window.vertices():
            entries, exceeds = matrix.row(row, window)
            if exceeds:
                continue
            value = sum(count * mu_hat[level + 1][col] for col, count in entries)
            errors["measure_recursion"] = max(
                errors["measure_recursion"],
                abs(value - lam * mu_hat[level][row]),
            )
        for col in window.vertices():
            column = matrix.column(col)
            if any(not window.contains(row) for row, _ in column):
                continue
            value = sum(count * h_hat[level][row] for row, count in column)
            errors["height_recursion"] = max(
                errors["height_recursion"],
                abs(value - lam * h_hat[level + 1][col]) / abs(value),
            )
        product *= lam
        for key, value in measure.vectors[level + 1].items():
            rebuilt = norms[0] * mu_hat[level + 1][key] / product
            errors["reconstruction"] = max(
                errors["reconstruction"], abs(rebuilt - value)
            )
    violations = []
    if errors["pairing"] > tol:
        violations.append(("<mu_hat, H_hat> = 1", errors["pairing"]))
    if any(lam <= 1 for lam in lambdas):
        violations.append(("lam_n > 1", min(lambdas)))
    violations.extend(
        (name, error) for name, error in errors.items()
        if name != "pairing" and error > tol
    )
    for identity, error in violations:
        logger.warning("Identity %s violated (%.3g).", identity, error)
    if violations and strict:
        raise NormalizationViolation(*violations[0])
    return NormalizedSequences(
        lambdas, mu_hat, h_hat, norms[0], errors, not violations
    )


def stochastic_sequence(diagram, measure, heights, kind=P_HAT, levels=None,
                        tol=None):
    """ Per-level stochastic matrices of a measure.

    P_hat: p(w, v) = a_n(w, v) mu^(n+1)_v / mu^(n)_w on the rows w of
    the window (equal to (1/lam_n) D_n^-1 A_n D_{n+1} in normalized
    terms). G: g(v, w) = a_n(w, v) H^(n)_w / H^(n+1)_v on the rows v of
    the next level; the tower vectors s^(n) then satisfy
    G_n^T s^(n+1) = s^(n).
    """
    tol = CONFIG.row_sum_tolerance if tol is None else tol
    window = measure.window
    levels = range(measure.levels - 1) if levels is None else levels
    result = []
    for level in levels:
        matrix = diagram.matrix(level)
        rows = OrderedDict()
        if kind == P_HAT:
            lower, upper = measure.vectors[level], measure.vectors[level + 1]
            for row in window.vertices():
                entries, exceeds = matrix.row(row, window)
                if exceeds and matrix.finite_rows:
                    continue
                rows[row] = [
                    (col, count * upper[col] / lower[row])
                    for col, count in entries
                ]
        else:
            lower, upper = heights[level].values, heights[level + 1].values
            for col in window.vertices():
                column = matrix.column(col)
                if any(not window.contains(row) for row, _ in column):
                    continue
                rows[col] = [
                    (row, count * lower[row] / upper[col])
                    for row, count in column
                ]
        row_error = 0
        for row, entries in rows.items():
            error = abs(sum(value for _, value in entries) - 1)
            if error > tol:
                raise RowSumViolation(row, float(error + 1))
            row_error = max(row_error, error)
        consistency = None
        if kind == G:
            consistency = _tower_consistency(
                matrix, rows, measure, heights, level, window
            )
        result.append(StochasticLevel(level, kind, rows, row_error, consistency))
    return result


def _tower_consistency(matrix, rows, measure, heights, level, window):
    """ sup |G_n^T s^(n+1) - s^(n)| over the rows with complete support. """
    towers = [
        dict(
            (vertex, measure.value(current, vertex) *
             heights[current].values[vertex])
            for vertex in window.vertices()
        ) for current in (level, level + 1)
    ]
    error = 0
    for row in window.vertices():
        entries, exceeds = matrix.row(row, window)
        if exceeds or any(col not in rows for col, _ in entries):
            continue
        value = sum(
            weight * towers[1][col]
            for col, _ in entries for source, weight in rows[col]
            if source == row
        )
        error = max(error, abs(value - towers[0][row]))
    return error


def nu_iteration(stochastic, n_max, window, logger=None):
    """ Iterate nu^(n+1) = nu^(n) P from nu^(0) = xi (probability).

    Every step is compared with the closed form
    nu^(n)_v = (xi_v / lam^n) sum_w a^(n)(w, v) and the sup distance
    to the limit xi_v eta_v (eta . xi = 1) is recorded.
    """
    logger = logger or LOGGER
    pair, matrix = stochastic.pair, stochastic.matrix
    deep = window.pad(n_max * local_reach(matrix), matrix.index_set)
    xi = pair.xi
    limit = None
    if pair.eta is not None:
        eta = pair.pairing_normalized_eta()
        limit = OrderedDict(
            (vertex, float(xi(vertex) * eta(vertex)))
            for vertex in window.vertices()
        )
    heights = height_vectors(Diagram.stationary(matrix), n_max, window)
    nu = OrderedDict((vertex, float(xi(vertex))) for vertex in deep.vertices())
    vectors, distances, errors, totals = [], [], [], []
    for n in range(n_max + 1):
        if n:
            nu = OrderedDict(
                (vertex, sum(
                    nu.get(row, 0.0) * float(value)
                    for row, value in stochastic.column(vertex)
                )) for vertex in deep.vertices()
            )
        visible = OrderedDict(
            (vertex, nu[vertex]) for vertex in window.vertices()
        )
        vectors.append(visible)
        totals.append(sum(nu.values()))
        scale = float(pair.lam) ** n
        errors.append(max([
            abs(value - float(xi(vertex)) * heights[n].values[vertex] / scale)
            / value for vertex, value in visible.items() if value > 0
        ] or [0.0]))
        if limit is not None:
            distances.append(max(
                abs(visible[vertex] - limit[vertex]) for vertex in limit
            ))
    logger.info(
        "nu iteration up to n=%d: closed form error %.3g", n_max, max(errors)
    )
    return NuIteration(vectors, limit, distances, errors, totals)


def _backward_layers(matrix, vertex, depth):
    """ a^(k)(., v) for k = 0 .. depth as dictionaries. """
    layers = [{vertex: 1}]
    for _ in range(depth):
        layer = {}
        for col, count in layers[-1].items():
            for row, value in matrix.column(col):
                layer[row] = layer.get(row, 0) + value * count
        layers.append(layer)
    return layers


def _limit_sequence(values, target):
    target = float(target)
    return LimitSequence(values, target, abs(values[-1] - target))


def height_ratio_limit(diagram, eigenpair, source, target, n_max):
    """ Ratios H^(n)_w / H^(n+1)_v for n = 0 .. n_max (exact integers
    converted at the end) against the limit eta_w / (lam eta_v).
    """
    window = Window(min(source, target), max(source, target))
    heights = height_vectors(diagram, n_max + 1, window)
    values = [
        float(Fraction(heights[n].values[source], heights[n + 1].values[target]))
        for n in range(n_max + 1)
    ]
    eta = eigenpair.eta
    return _limit_sequence(
        values, eta(source) / (eigenpair.lam * eta(target))
    )


def frequency_check(diagram, eigenpair, path, horizon, vertex=None):
    """ Share a^(N-n)(w, v) / H^(N)_v of the paths into v passing the
    range w of the cylinder at the level n, for N = n .. horizon,
    against the cylinder measure xi_w / lam^n (xi probability).
    """
    matrix = diagram.matrix(0)
    level, source = len(path), path.end
    vertex = source if vertex is None else vertex
    layers = _backward_layers(matrix, vertex, horizon)
    values = [
        float(Fraction(
            layers[depth - level].get(source, 0), sum(layers[depth].values())
        )) for depth in range(level, horizon + 1)
    ]
    pair = eigenpair.probability()
    return _limit_sequence(
        values, stationary_cylinder_measure(pair, path)
    )


def ratio_limit_check(diagram, eigenpair, first, second, horizon,
                      vertex=None):
    """ Ratios a^(N-n1)(v1, w) / a^(N-n2)(v2, w) of the path counts into a
    common vertex against (xi_v1 / xi_v2) lam^(n2 - n1). The measure
    is assumed conservative.
    """
    matrix = diagram.matrix(0)
    (level_a, vertex_a), (level_b, vertex_b) = (
        (len(first), first.end), (len(second), second.end)
    )
    vertex = vertex_a if vertex is None else vertex
    layers = _backward_layers(matrix, vertex, horizon)
    values = []
    for depth in range(max(level_a, level_b), horizon + 1):
        numerator = layers[depth - level_a].get(vertex_a, 0)
        denominator = layers[depth - level_b].get(vertex_b, 0)
        if denominator:
            values.append(float(Fraction(numerator, denominator)))
    xi = eigenpair.xi
    lam = eigenpair.lam
    target = (xi(vertex_a) / xi(vertex_b)) * float(lam) ** (level_b - level_a)
    return _limit_sequence(values, target)
