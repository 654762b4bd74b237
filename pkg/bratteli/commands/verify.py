#-------------------------------------------------------------------------------
#
# Run the invariant suite on a diagram.
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
from bratteli.verify import CHECKS, run_checks, all_passed
from bratteli.commands import BaseCommand, Outcome, make_option


class Command(BaseCommand):
    help = "Verify the structural, spectral, measure and order invariants."
    option_list = (
        make_option(
            "--check", dest="checks", action="append", default=None,
            choices=tuple(CHECKS),
            help="Run only the named check (repeatable).",
        ),
    )
    window_half_width = 10

    def handle(self, source, **opts):
        results = run_checks(
            source.diagram, source.order, source.entry, opts["window"],
            opts["depth"], opts["horizon"], opts["tol"], opts["checks"],
        )
        passed = all_passed(results)
        result = OrderedDict([
            ("passed", passed),
            ("checks", OrderedDict(
                (item.name, OrderedDict([
                    ("status", item.status), ("detail", item.detail),
                ])) for item in results
            )),
        ])
        return Outcome(result, None, 0 if passed else 1)
