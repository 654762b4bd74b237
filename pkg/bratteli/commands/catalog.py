#-------------------------------------------------------------------------------
#
# Catalog listing.
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
from bratteli.matrix_core import Window
from bratteli.catalog import ENTRIES, get
from bratteli.commands import BaseCommand, make_option


class Command(BaseCommand):
    help = "List the catalog entries or show a single entry."
    needs_diagram = False
    option_list = (
        make_option("action", choices=("list", "show")),
        make_option("ident", nargs="?", default=None),
        make_option(
            "--params", dest="params", nargs="*", default=(),
            help="Entry parameters as key=value pairs.",
        ),
    )

    def handle(self, source, **opts):
        if opts["action"] == "list":
            return [
                OrderedDict([
                    ("id", ident), ("description", description),
                    ("params", OrderedDict(
                        (param.name, param.default) for param in params
                    )),
                ]) for ident, (_, params, description) in ENTRIES.items()
            ]
        if opts["ident"] is None:
            raise ConfigError("Catalog entry identifier expected!")
        entry = get(opts["ident"], parse_params(opts["params"]))
        result = entry.summary()
        if entry.oracle.xi is not None:
            window = opts["window"] or Window(
                entry.anchor, entry.anchor + 5
            )
            result["xi"] = OrderedDict(
                (vertex, entry.oracle.xi(vertex))
                for vertex in window.vertices()
            )
        return result


def parse_params(items):
    """ key=value strings to a dictionary. """
    params = OrderedDict()
    for item in items:
        key, separator, value = item.partition("=")
        if not separator or not key:
            raise ConfigError("Invalid parameter %r! key=value expected." % (
                item,
            ))
        params[key] = value
    return params
