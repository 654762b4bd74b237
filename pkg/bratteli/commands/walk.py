#-------------------------------------------------------------------------------
#
# Monte-Carlo walk of the stochastic matrix of a Perron eigenpair.
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
from bratteli.util.config import CONFIG
from bratteli.spectral import (
    FiniteSum, stochastic_from_eigenpair, sample_walk, return_frequencies,
)
from bratteli.commands import BaseCommand, Outcome, make_option, require_entry


class Command(BaseCommand):
    help = (
        "Sample the Markov chain p(w, v) = a(w, v) xi_v / (lam xi_w) and "
        "emit the empirical occupation frequencies."
    )
    option_list = (
        make_option(
            "--start", dest="start", default=None, type=int,
            help="Start vertex (index set anchor).",
        ),
        make_option(
            "--steps", dest="steps", default=10000, type=int,
            help="Number of steps (default 10000).",
        ),
    )
    window_half_width = 30

    def handle(self, source, **opts):
        entry = require_entry(source, "The walk")
        pair = entry.eigenpair()
        matrix, window = source.diagram.matrix(0), opts["window"]
        start = entry.anchor if opts["start"] is None else opts["start"]
        rows = [
            row for row in window.vertices()
            if not matrix.row(row, window)[1]
        ]
        stochastic = stochastic_from_eigenpair(
            matrix, pair, window, rows=rows, tol=opts["tol"]
        )
        seed = CONFIG.seed if opts["seed"] is None else opts["seed"]
        states = sample_walk(stochastic, start, opts["steps"], window, seed)
        frequencies = return_frequencies(states)

        expected = None
        if isinstance(pair.pairing, FiniteSum):
            eta = pair.pairing_normalized_eta()
            expected = dict(
                (vertex, float(pair.xi(vertex) * eta(vertex)))
                for vertex in frequencies.visits
            )
        lines = [
            OrderedDict([
                ("vertex", vertex), ("frequency", frequency),
                ("expected", None if expected is None else expected[vertex]),
            ]) for vertex, frequency in frequencies.visits.items()
        ]
        result = OrderedDict([
            ("start", start),
            ("steps", frequencies.steps),
            ("returns", frequencies.returns),
            ("mean_return_time", frequencies.mean_return_time),
            ("seed", seed),
        ])
        return Outcome(result, lines, 0)
