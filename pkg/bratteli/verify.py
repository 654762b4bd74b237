#-------------------------------------------------------------------------------
#
# Invariant suite of the verify command.
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
# pylint: disable=too-many-arguments,unused-argument

from collections import namedtuple, OrderedDict
from logging import getLogger
from bratteli.util.config import CONFIG
from bratteli.errors import BratteliError
from bratteli.matrix_core import (
    TransposedMatrix, backward_counts, forward_counts, power_entry,
    band_violations, zero_lines,
)
from bratteli.spectral import (
    FiniteSum, Divergent, NumericHorizon, INCONCLUSIVE, summability,
    eigen_residual, recurrence_agreement, stochastic_from_eigenpair,
    verify_power_identity, exact_lambda_check, to_float,
)
from bratteli.diagram import count_paths, height_vectors
from bratteli.orders_vershik import (
    OrderedPath, FirstEdgeTail, Image, Preimage, enumerate_paths_into,
    vershik_step, vershik_inverse_step, minimal_path_into, maximal_path_into,
)
from bratteli.measures import (
    MeasureVectors, PROBABILITY, SigmaFinite,
)
from bratteli.catalog import Z

LOGGER = getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIP = "skip"

CheckResult = namedtuple("CheckResult", ["name", "status", "detail"])

VerifyContext = namedtuple("VerifyContext", [
    "diagram", "order", "entry", "window", "depth", "horizon", "tol",
])

# largest number of enumerated paths replayed by the Vershik check
PATH_LIMIT = 4096


def _pass(detail=None):
    return PASS, detail


def _fail(detail):
    return FAIL, detail


def _skip(reason):
    return SKIP, reason


def _eigenpair(context):
    entry = context.entry
    if entry is None or entry.oracle.lam is None or entry.oracle.xi is None:
        return None
    return entry.eigenpair()


def _finite_columns(context):
    return context.diagram.matrix(0).finite_columns


def _interior(context, matrix):
    window = context.window
    return window.interior(matrix.reach or 1, matrix.index_set) or window


def check_zero_lines(context):
    """ No empty row or column inside the window. """
    if not _finite_columns(context):
        return _skip("infinite columns")
    lines = zero_lines(context.diagram.matrix(0), context.window)
    return _fail(lines) if lines else _pass()


def check_band(context):
    """ Bounded-size conditions on every level through the depth. """
    diagram = context.diagram
    if diagram.band is None:
        return _skip("no band")
    for level in range(context.depth):
        violations = band_violations(
            diagram.matrix(level), diagram.band, level, context.window
        )
        if violations:
            return _fail({"level": level, "violations": violations[:10]})
    return _pass()


def check_power_additivity(context):
    """ a^(m+k)(i, j) = sum_l a^(m)(i, l) a^(k)(l, j) at the anchor. """
    diagram = context.diagram
    if not diagram.is_stationary or not _finite_columns(context):
        return _skip("stationary locally finite diagrams only")
    matrix, anchor = diagram.matrix(0), diagram.index_set.anchor
    first = context.depth // 2
    second = context.depth - first
    lhs = power_entry(matrix, context.depth, anchor, anchor)
    middle = backward_counts([matrix] * second, anchor)
    rhs = sum(
        power_entry(matrix, first, anchor, vertex) * count
        for vertex, count in middle.items()
    )
    if lhs != rhs:
        return _fail({"lhs": lhs, "rhs": rhs})
    return _pass({"entry": lhs})


def check_path_counts(context):
    """ Height vectors agree with the explicit path counts. """
    diagram = context.diagram
    if not _finite_columns(context):
        return _skip("infinite columns")
    level = min(context.depth, 6)
    heights = height_vectors(diagram, level, context.window)[-1]
    for vertex, height in heights.values.items():
        factors = diagram.sequence.factors(0, level)
        total = sum(backward_counts(factors, vertex).values())
        if total != height:
            return _fail({"vertex": vertex, "height": height, "count": total})
    return _pass({"level": level})


def check_forward_backward(context):
    """ Source-forward and target-backward path counts agree. """
    diagram = context.diagram
    matrix = diagram.matrix(0)
    if not matrix.finite_rows or not _finite_columns(context):
        return _skip("finite rows and columns required")
    level = min(context.depth, 6)
    anchor = diagram.index_set.anchor
    factors = diagram.sequence.factors(0, level)
    forward = forward_counts(factors, anchor)
    for target, count in sorted(forward.items()):
        backward = count_paths(diagram, (0, anchor), (level, target))
        if backward != count:
            return _fail({"target": target, "forward": count,
                          "backward": backward})
    return _pass({"targets": len(forward)})


def check_eigen_residual(context):
    """ A xi = lam xi and eta A = lam eta on the interior window. """
    pair = _eigenpair(context)
    if pair is None:
        return _skip("no closed-form eigenpair")
    matrix = context.diagram.matrix(0)
    interior = _interior(context, matrix)
    right = eigen_residual(matrix, pair.xi, pair.lam, interior)
    detail = {"right": to_float(right)}
    tol = 0 if pair.xi.exact else context.tol
    if right > tol:
        return _fail(detail)
    if pair.eta is not None and matrix.finite_columns:
        left = eigen_residual(
            TransposedMatrix(matrix), pair.eta, pair.lam, interior
        )
        detail["left"] = to_float(left)
        if left > (0 if pair.eta.exact else context.tol):
            return _fail(detail)
    return _pass(detail)


def check_exact_lambda(context):
    """ The exact Perron value solves its defining equation. """
    entry = context.entry
    if entry is None or entry.oracle.equation is None:
        return _skip("no defining equation")
    if not exact_lambda_check(entry.oracle.lam_exact, entry.oracle.equation, Z):
        return _fail(str(entry.oracle.equation))
    return _pass(str(entry.oracle.lam_exact))


def check_recurrence(context):
    """ The declared recurrence class matches the certificates. """
    pair = _eigenpair(context)
    if pair is None or context.entry.oracle.recurrence is None:
        return _skip("no declared recurrence class")
    declared = context.entry.oracle.recurrence
    agreement = recurrence_agreement(
        context.diagram.matrix(0), pair, context.entry.anchor,
        context.horizon, analytic=declared,
    )
    result, induced = agreement.matrix_class, agreement.stochastic_class
    detail = {"declared": declared, "found": result.variant,
              "certificate": result.certificate,
              "stochastic": induced.variant,
              "stochastic_certificate": induced.certificate,
              "identity_error": agreement.identity_error}
    if result.variant not in (declared, INCONCLUSIVE) or not agreement.agree:
        return _fail(detail)
    return _pass(detail)


def check_xi_sum(context):
    """ Closed-form summability of xi agrees with the partial sums. """
    pair = _eigenpair(context)
    if pair is None or pair.xi_tail is None:
        return _skip("no tail model")
    declared = pair.xi_sum
    numeric = summability(pair.xi, NumericHorizon(context.horizon))
    detail = {"declared": type(declared).__name__,
              "numeric": type(numeric).__name__}
    if isinstance(declared, FiniteSum) and isinstance(numeric, FiniteSum):
        detail["value"] = to_float(declared.value)
        error = abs(to_float(declared.value) - numeric.value)
        if error > 1e-6 * max(1.0, abs(numeric.value)):
            return _fail(detail)
        return _pass(detail)
    if isinstance(declared, Divergent) and isinstance(numeric, FiniteSum):
        return _fail(detail)
    if isinstance(declared, FiniteSum) and isinstance(numeric, Divergent):
        return _fail(detail)
    return _pass(detail)


def check_measure_consistency(context):
    """ Closed-form cylinder values satisfy p^(n) = A_n p^(n+1). """
    pair = _eigenpair(context)
    if pair is None or not context.diagram.is_stationary:
        return _skip("no closed-form eigenpair")
    normalization = PROBABILITY
    if not isinstance(pair.xi_sum, FiniteSum):
        normalization = SigmaFinite(0, context.entry.anchor)
    measure = MeasureVectors.from_eigenpair(
        context.diagram, pair, min(context.depth, 6), context.window,
        normalization,
    )
    residual = max(measure.residuals) if measure.residuals else 0
    detail = {"normalization": type(normalization).__name__,
              "residual": to_float(residual)}
    if residual > (0 if pair.xi.exact else context.tol):
        return _fail(detail)
    return _pass(detail)


def check_stochastic_rows(context):
    """ The stochastic matrix of the eigenpair has unit row sums. """
    pair = _eigenpair(context)
    if pair is None:
        return _skip("no closed-form eigenpair")
    matrix = context.diagram.matrix(0)
    rows = [
        row for row in _interior(context, matrix).vertices()
        if not matrix.row(row, context.window)[1]
    ]
    stochastic_from_eigenpair(
        matrix, pair, context.window, rows=rows, tol=context.tol
    )
    return _pass({"rows": len(rows)})


def check_power_identity(context):
    """ p^(n)_vv = a^(n)_vv / lam^n at the anchor. """
    pair = _eigenpair(context)
    if pair is None:
        return _skip("no closed-form eigenpair")
    size = min(context.depth, 10)
    lhs, rhs, error = verify_power_identity(
        context.diagram.matrix(0), pair, context.entry.anchor, size
    )
    detail = {"n": size, "lhs": to_float(lhs), "rhs": to_float(rhs)}
    if error > (0 if pair.xi.exact else context.tol):
        return _fail(detail)
    return _pass(detail)


def check_vershik_succession(context):
    """ The Vershik map (and its inverse) walks the enumerated paths into
    a vertex in the lexicographic order; the first path is the minimal
    path and the last one the maximal path.
    """
    order, diagram = context.order, context.diagram
    if order is None:
        return _skip("no order")
    if not _finite_columns(context):
        return _skip("infinite columns")
    level = min(context.depth, 4)
    tail = FirstEdgeTail(diagram, context.window)
    window = context.window
    vertices = list(window.vertices())[:3]
    checked = 0
    for vertex in vertices:
        paths = []
        for path in enumerate_paths_into(order, vertex, level):
            paths.append(path)
            if len(paths) > PATH_LIMIT:
                return _skip("too many paths into %s" % vertex)
        if paths[0] != minimal_path_into(order, vertex, level):
            return _fail({"vertex": vertex, "reason": "minimal path"})
        if paths[-1] != maximal_path_into(order, vertex, level):
            return _fail({"vertex": vertex, "reason": "maximal path"})
        for current, following in zip(paths[:-1], paths[1:]):
            image = vershik_step(order, OrderedPath(current, tail), level)
            if not isinstance(image, Image) or (
                    image.path.edges(level) != following.edges):
                return _fail({"vertex": vertex, "path": str(current.edges)})
            back = vershik_inverse_step(order, image.path, level)
            if not isinstance(back, Preimage) or (
                    back.path.edges(level) != current.edges):
                return _fail({"vertex": vertex, "inverse": str(current.edges)})
            checked += 1
    return _pass({"level": level, "steps": checked})


CHECKS = OrderedDict([
    ("zero-lines", check_zero_lines),
    ("band", check_band),
    ("power-additivity", check_power_additivity),
    ("path-counts", check_path_counts),
    ("forward-backward", check_forward_backward),
    ("eigen-residual", check_eigen_residual),
    ("exact-lambda", check_exact_lambda),
    ("recurrence", check_recurrence),
    ("xi-sum", check_xi_sum),
    ("measure-consistency", check_measure_consistency),
    ("stochastic-rows", check_stochastic_rows),
    ("power-identity", check_power_identity),
    ("vershik-succession", check_vershik_succession),
])


def run_checks(diagram, order=None, entry=None, window=None, depth=8,
               horizon=None, tol=None, names=None, logger=None):
    """ Run the selected invariant checks. Errors raised by a check are
    reported as failures.
    """
    logger = logger or LOGGER
    window = window or diagram.index_set.default_window(10)
    horizon = CONFIG.horizon if horizon is None else horizon
    tol = CONFIG.tolerance if tol is None else tol
    context = VerifyContext(diagram, order, entry, window, depth, horizon, tol)
    results = []
    for name in names or CHECKS:
        try:
            check = CHECKS[name]
        except KeyError:
            raise ValueError("Invalid check %r!" % name)
        try:
            status, detail = check(context)
        except BratteliError as exc:
            status, detail = FAIL, "%s: %s" % (type(exc).__name__, exc)
        if status == FAIL:
            logger.warning("Check %s failed: %s", name, detail)
        else:
            logger.info("Check %s: %s", name, status)
        results.append(CheckResult(name, status, detail))
    return results


def all_passed(results):
    """ True if no check failed. """
    return all(result.status != FAIL for result in results)

