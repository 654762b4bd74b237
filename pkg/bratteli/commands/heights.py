#-------------------------------------------------------------------------------
#
# Height vectors of the Kakutani-Rokhlin towers.
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
from bratteli.diagram import (
    ANCESTORS, DESCENDANTS, height_vectors, cone_bounds,
)
from bratteli.commands import BaseCommand, Outcome, make_option


class Command(BaseCommand):
    help = "Number of paths from the level 0 into the vertices of each level."
    option_list = (
        make_option(
            "--level", dest="level", default=None, type=int,
            help="Last level (defaults to the depth).",
        ),
        make_option(
            "--vertex", dest="vertex", default=None, type=int,
            help="Report the cone bounds of the vertex (bounded size only).",
        ),
    )
    window_half_width = 5

    def handle(self, source, **opts):
        diagram, window = source.diagram, opts["window"]
        level = opts["depth"] if opts["level"] is None else opts["level"]
        heights = height_vectors(diagram, level, window)
        lines = [
            OrderedDict([("level", item.level), ("heights", item.values)])
            for item in heights
        ]
        result = OrderedDict([("levels", level), ("window", window)])
        if opts["vertex"] is not None and diagram.band is not None:
            result["cone"] = OrderedDict([
                ("ancestors", cone_bounds(
                    diagram, opts["vertex"], level, ANCESTORS
                )),
                ("descendants", cone_bounds(
                    diagram, opts["vertex"], 0, DESCENDANTS, level
                )),
            ])
        return Outcome(result, lines, 0)
