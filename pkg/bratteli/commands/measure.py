#-------------------------------------------------------------------------------
#
# Tail-invariant measures: closed form or inverse limit.
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
from bratteli.errors import ConfigError
from bratteli.spectral import FiniteSum
from bratteli.diagram import height_vectors
from bratteli.measures import (
    MeasureVectors, PROBABILITY, SigmaFinite, P_HAT, G,
    invariant_vectors, normalized_sequences, stochastic_sequence,
    tower_measure,
)
from bratteli.commands import BaseCommand, make_option, require_entry

CLOSED_FORM = "closed-form"
INVERSE_LIMIT = "inverse-limit"


class Command(BaseCommand):
    help = "Compute the cylinder values p^(n)_v of a tail-invariant measure."
    option_list = (
        make_option(
            "--mode", dest="mode", default=INVERSE_LIMIT,
            choices=(CLOSED_FORM, INVERSE_LIMIT),
            help="Closed-form eigenpair or inverse-limit approximation.",
        ),
        make_option(
            "--level", dest="level", default=3, type=int,
            help="Last level of the reported vectors (default 3).",
        ),
        make_option(
            "--normalization", dest="normalization", default="probability",
            choices=("probability", "sigma-finite"),
            help="Probability or unit value at the reference vertex.",
        ),
        make_option(
            "--vertex", dest="vertex", default=None, type=int,
            help="Reference vertex of the level 0 (sigma-finite).",
        ),
        make_option(
            "--eigen-seed", dest="eigen_seed", action="store_true",
            default=False,
            help="Seed the inverse limit with the closed-form eigenvector.",
        ),
        make_option(
            "--stochastic", dest="stochastic", default=None,
            choices=(P_HAT, G),
            help="Also report the per-level stochastic matrices.",
        ),
    )
    window_half_width = 10

    def handle(self, source, **opts):
        diagram, window, level = source.diagram, opts["window"], opts["level"]
        if opts["normalization"] == "probability":
            normalization = PROBABILITY
        else:
            vertex = opts["vertex"]
            if vertex is None:
                vertex = diagram.index_set.anchor
            normalization = SigmaFinite(0, vertex)

        if opts["mode"] == CLOSED_FORM:
            pair = require_entry(source, "The closed-form mode").eigenpair()
            if normalization is PROBABILITY and not isinstance(
                    pair.xi_sum, FiniteSum):
                raise ConfigError(
                    "The eigenvector is not summable; use sigma-finite!"
                )
            measure = MeasureVectors.from_eigenpair(
                diagram, pair, level, window, normalization
            )
        else:
            seed = None
            if opts["eigen_seed"]:
                seed = require_entry(source, "The eigen seed").eigenpair().xi
            measure = invariant_vectors(
                diagram, level, window, opts["tol"], seed, normalization,
            )

        heights = height_vectors(diagram, level, window)
        result = OrderedDict([
            ("mode", opts["mode"]),
            ("normalization", normalization),
            ("depth", measure.depth),
            ("vectors", measure.vectors),
            ("residuals", measure.residuals),
            ("towers", OrderedDict(
                (vertex, tower_measure(diagram, measure, vertex, level))
                for vertex in window.vertices()
            )),
        ])
        # truncated numeric and sigma-finite vectors are reported only
        sequences = normalized_sequences(
            diagram, measure, heights, opts["tol"],
            strict=(
                opts["mode"] == CLOSED_FORM and normalization is PROBABILITY
            ),
        )
        result["normalized"] = OrderedDict([
            ("valid", sequences.valid),
            ("lambda", sequences.lambda_seq),
            ("scale", sequences.scale),
            ("errors", sequences.errors),
        ])
        if opts["stochastic"]:
            result["stochastic"] = [
                OrderedDict([
                    ("level", item.level),
                    ("rows", len(item.rows)),
                    ("row_sum_error", item.row_sum_error),
                    ("consistency_error", item.consistency_error),
                ]) for item in stochastic_sequence(
                    diagram, measure, heights, opts["stochastic"]
                )
            ]
        return result
