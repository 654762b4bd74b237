#-------------------------------------------------------------------------------
#
# Export a truncated diagram.
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

from bratteli.render import to_dot, to_json
from bratteli.commands import BaseCommand, make_option


class Command(BaseCommand):
    help = (
        "Export the levels 0 .. N on a vertex window as Graphviz DOT "
        "(--output dot) or as JSON adjacency with multiplicities."
    )
    option_list = (
        make_option(
            "--levels", dest="levels", default=3, type=int,
            help="Number of edge levels (default 3).",
        ),
        make_option(
            "--ranks", dest="ranks", action="store_true", default=False,
            help="Label the edges by their ranks in the order.",
        ),
    )
    window_half_width = 3

    def handle(self, source, **opts):
        order = source.order if opts["ranks"] else None
        if opts["output"] == "dot":
            return to_dot(
                source.diagram, opts["levels"], opts["window"], order
            )
        return to_json(source.diagram, opts["levels"], opts["window"], order)

    def write(self, stdout, opts, outcome):
        if opts["output"] == "dot":
            stdout.write(outcome.result)
            return
        super(Command, self).write(stdout, opts, outcome)
