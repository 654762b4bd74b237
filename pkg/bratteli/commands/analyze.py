#-------------------------------------------------------------------------------
#
# Spectral analysis of the level 0 incidence matrix.
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

from collections import OrderedDict
from bratteli.errors import BratteliError
from bratteli.spectral import (
    EigenPair, FiniteSum, Windowed, perron_estimate, right_eigenvector,
    left_eigenvector, column_sum_bounds, classify_recurrence,
    first_return_series, truncated_spectral_radius,
)
from bratteli.commands import BaseCommand, make_option


class Command(BaseCommand):
    help = (
        "Estimate the Perron value, the eigenvectors and the recurrence "
        "class of the incidence matrix."
    )
    option_list = (
        make_option(
            "--anchor", dest="anchor", default=None, type=int,
            help="Vertex of the return sequences (index set anchor).",
        ),
    )
    window_half_width = 20

    def handle(self, source, **opts):
        diagram, entry = source.diagram, source.entry
        matrix = diagram.matrix(0)
        window = opts["window"]
        anchor = (
            diagram.index_set.anchor if opts["anchor"] is None
            else opts["anchor"]
        )
        estimate = perron_estimate(matrix, anchor, horizon=opts["horizon"])
        result = OrderedDict([
            ("stationary", diagram.is_stationary),
            ("anchor", anchor),
            ("estimate", estimate.value),
            ("lambda_sequence", [root for _, root in estimate.roots]),
            ("ratio_estimate", estimate.ratio),
            ("period", estimate.period),
        ])
        pair = None
        if entry is not None and entry.oracle.lam is not None:
            pair = entry.eigenpair()
            result["lambda"] = pair.lam
            result["lambda_source"] = "closed-form"
            if entry.oracle.lam_exact is not None:
                result["lambda_exact"] = entry.oracle.lam_exact
        else:
            pair = numeric_eigenpair(matrix, estimate.value, window, opts)
            result["lambda"] = estimate.value
            result["lambda_source"] = "estimate"

        if matrix.finite_columns:
            result["bounds"] = column_sum_bounds(matrix, window)
        result["truncated_radius"] = truncated_spectral_radius(matrix, window)

        if pair is not None:
            pairing = pair.pairing
            result["eta_dot_xi"] = (
                pairing.value if isinstance(pairing, FiniteSum) else pairing
            )
            result["xi_sum"] = pair.xi_sum
            analytic = entry.oracle.recurrence if entry is not None else None
            result["class"] = classify_recurrence(
                matrix, pair.lam, anchor, opts["horizon"], opts["tol"],
                eigenpair=pair, analytic=analytic,
            )
            lam = pair.lam
        else:
            lam = estimate.value
        if matrix.finite_columns:
            series = first_return_series(matrix, lam, anchor, opts["horizon"])
            result["first_return"] = OrderedDict([
                ("mass", series.mass), ("mean", series.mean),
                ("horizon", series.horizon),
            ])
        return result


def numeric_eigenpair(matrix, lam, window, opts):
    """ Windowed eigenpair computed from the Perron value estimate.
    None when no positive solution is found.
    """
    try:
        xi, _ = right_eigenvector(matrix, lam, window, opts["tol"])
        eta = None
        if matrix.finite_columns:
            eta, _ = left_eigenvector(matrix, lam, window, opts["tol"])
    except BratteliError:
        return None
    return EigenPair(lam, xi, eta, Windowed(window, None, "estimate"))
