#-------------------------------------------------------------------------------
#
# Vershik map orbits.
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
from bratteli.descriptors import load_json, parse_path
from bratteli.orders_vershik import (
    OrderedPath, FirstEdgeTail, Image, Preimage, minimal_path_into,
    maximal_path_into, vershik_step, vershik_inverse_step, extreme_paths,
)
from bratteli.commands import BaseCommand, Outcome, make_option


class Command(BaseCommand):
    help = (
        "Iterate the Vershik map (or its inverse) from a path and emit the "
        "orbit as JSON lines."
    )
    option_list = (
        make_option(
            "--vertex", dest="vertex", default=None, type=int,
            help="Start from the minimal path into this vertex.",
        ),
        make_option(
            "--level", dest="level", default=3, type=int,
            help="Level of the start vertex (default 3).",
        ),
        make_option(
            "--path", dest="path", default=None,
            help="JSON file with the start path prefix from the level 0.",
        ),
        make_option(
            "--steps", dest="steps", default=10, type=int,
            help="Number of iterations (default 10).",
        ),
        make_option(
            "--inverse", dest="inverse", action="store_true", default=False,
            help="Iterate the inverse map.",
        ),
        make_option(
            "--extremes", dest="extremes", action="store_true",
            default=False,
            help="Report the extreme path candidates through the depth.",
        ),
    )
    window_half_width = 10

    def handle(self, source, **opts):
        diagram, order = source.diagram, source.order
        depth = max(opts["depth"], opts["level"])
        if opts["path"] is not None:
            prefix = parse_path(load_json(opts["path"]), diagram)
            if prefix.level != 0:
                raise ConfigError("The start path must start at the level 0!")
        else:
            vertex = opts["vertex"]
            if vertex is None:
                vertex = diagram.index_set.anchor
            extreme = maximal_path_into if opts["inverse"] else (
                minimal_path_into
            )
            prefix = extreme(order, vertex, opts["level"])
        path = OrderedPath(prefix, FirstEdgeTail(diagram, opts["window"]))
        step = vershik_inverse_step if opts["inverse"] else vershik_step

        lines = [orbit_line(0, path, depth)]
        stopped = None
        for index in range(1, opts["steps"] + 1):
            image = step(order, path, depth)
            if not isinstance(image, (Image, Preimage)):
                stopped = image
                lines.append(OrderedDict([("step", index), ("verdict", image)]))
                break
            path = image.path
            lines.append(orbit_line(index, path, depth))

        result = OrderedDict([
            ("inverse", opts["inverse"]),
            ("start", prefix),
            ("steps", len(lines) - 1 - (stopped is not None)),
            ("stopped", stopped),
        ])
        if opts["extremes"]:
            report = extreme_paths(order, opts["depth"], opts["window"])
            result["extremes"] = OrderedDict([
                ("minimal", len(report.minimal)),
                ("maximal", len(report.maximal)),
                ("terminated", report.terminated),
                ("certificate", report.certificate),
                ("depth", report.depth),
            ])
        return Outcome(result, lines, 0)


def orbit_line(index, path, depth):
    """ Orbit item: the start vertex and the first edges of the path. """
    return OrderedDict([
        ("step", index),
        ("start", path.start),
        ("vertices", [path.vertex(level) for level in range(depth + 1)]),
        ("edges", list(path.edges(depth))),
    ])
