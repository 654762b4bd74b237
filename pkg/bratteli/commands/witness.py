#-------------------------------------------------------------------------------
#
# Constructive witnesses: transitivity, discontinuity, slanting sets,
# continuity and compressibility.
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
from bratteli.errors import ConfigError
from bratteli.matrix_core import period
from bratteli.diagram import (
    FinitePath, PLUS, MINUS, transitive_witness, slanting_boundary_path,
    slanting_membership, slanting_invariance_replay,
)
from bratteli.orders_vershik import (
    OrderedPath, MinimalTail, MaximalTail, discontinuity_witness,
    continuity_probe, compressibility_probe,
)
from bratteli.commands import BaseCommand, make_option, require_entry


class Command(BaseCommand):
    help = "Build a constructive witness of a topological property."
    option_list = (
        make_option(
            "--kind", dest="kind", required=True, choices=(
                "transitivity", "discontinuity", "slanting", "continuity",
                "compressibility",
            ),
            help="Witness kind.",
        ),
        make_option(
            "--vertex", dest="vertex", default=None, type=int,
            help="Vertex of the level 0 (index set anchor).",
        ),
        make_option(
            "--level", dest="level", default=2, type=int,
            help="Level of the construction (default 2).",
        ),
        make_option(
            "--target", dest="target", default=None, type=int,
            help="Vertical vertex of the transitivity witness.",
        ),
        make_option(
            "--epsilon", dest="epsilon", default=None, type=float,
            help="Radius of the ball of the discontinuity witness.",
        ),
        make_option(
            "--sign", dest="sign", default=PLUS, choices=(PLUS, MINUS),
            help="Slanting direction.",
        ),
        make_option(
            "--inverse", dest="inverse", action="store_true", default=False,
            help="Probe the continuity of the inverse map.",
        ),
        make_option(
            "--steps", dest="steps", default=10000, type=int,
            help="Sampled Vershik steps of the compressibility probe.",
        ),
    )
    window_half_width = 5

    def handle(self, source, **opts):
        vertex = opts["vertex"]
        if vertex is None:
            vertex = source.diagram.index_set.anchor
        handler = HANDLERS[opts["kind"]]
        return handler(source, vertex, opts)


def transitivity(source, vertex, opts):
    diagram = source.diagram
    target = vertex if opts["target"] is None else opts["target"]
    horizon = CONFIG.horizon if opts["horizon"] is None else opts["horizon"]
    return_length = period(diagram.matrix(0), target, horizon)
    cylinder = FinitePath(0, vertex)
    path = transitive_witness(
        diagram, cylinder, target, return_length, horizon
    )
    return OrderedDict([
        ("cylinder", cylinder), ("target", target),
        ("return_length", return_length), ("path", path),
        ("length", len(path)),
    ])


def discontinuity(source, vertex, opts):
    if source.diagram.band is None:
        raise ConfigError("The discontinuity witness needs a band!")
    witness = discontinuity_witness(
        source.order, vertex, opts["level"], opts["epsilon"], opts["horizon"]
    )
    depth = witness.level + witness.gap + 2
    return OrderedDict([
        ("level", witness.level), ("gap", witness.gap),
        ("distance", witness.distance),
        ("first", witness.first.edges(depth)),
        ("second", witness.second.edges(depth)),
        ("first_image", witness.first_image.edges(depth)),
        ("second_image", witness.second_image.edges(depth)),
    ])


def slanting(source, vertex, opts):
    diagram = source.diagram
    if diagram.band is None:
        raise ConfigError("Slanting sets need a band!")
    path = slanting_boundary_path(diagram, vertex, opts["sign"], opts["depth"])
    level = min(opts["level"], opts["depth"])
    replay = slanting_invariance_replay(
        diagram, path, level, vertex, opts["sign"]
    )
    return OrderedDict([
        ("path", path),
        ("membership", slanting_membership(
            diagram, path, vertex, opts["sign"]
        )),
        ("replay", replay),
    ])


def continuity(source, vertex, opts):
    entry = require_entry(source, "The continuity probe")
    pairing_rule = entry.extras.get("pairing_rule")
    if pairing_rule is None:
        raise ConfigError("The entry %s has no pairing rule!" % entry.ident)
    order, window = source.order, opts["window"]
    tail = MinimalTail(order) if opts["inverse"] else MaximalTail(order)
    extremes = [
        OrderedPath(FinitePath(0, item), tail) for item in window.vertices()
    ]
    table = continuity_probe(
        order, pairing_rule, extremes, range(opts["level"], opts["depth"] + 1),
        kind="inverse" if opts["inverse"] else "forward", window=window,
    )
    distances = OrderedDict()
    for sample in table.samples:
        distances.setdefault(sample.level, set()).add(sample.distance)
    return OrderedDict([
        ("kind", table.kind), ("samples", len(table.samples)),
        ("flagged", table.flagged),
        ("distances", OrderedDict(
            (level, sorted(values)) for level, values in distances.items()
        )),
    ])


def compressibility(source, vertex, opts):
    entry = source.entry
    if entry is not None and opts["vertex"] is None:
        vertex = entry.extras.get("cylinder_vertex", vertex)
    report = compressibility_probe(
        source.order, vertex, opts["steps"], opts["window"],
        depth=opts["depth"], seed=opts["seed"],
    )
    return OrderedDict([
        ("cylinder_vertex", vertex), ("steps", report.steps),
        ("restarts", report.restarts), ("entries", report.entries),
    ])


HANDLERS = OrderedDict([
    ("transitivity", transitivity),
    ("discontinuity", discontinuity),
    ("slanting", slanting),
    ("continuity", continuity),
    ("compressibility", compressibility),
])
