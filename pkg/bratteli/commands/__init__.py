#-------------------------------------------------------------------------------
#
# Command base class and report output shared by the subcommands.
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
# pylint: disable=too-many-return-statements

import sys
import json
import argparse
from collections import namedtuple, OrderedDict
from fractions import Fraction
from numbers import Integral, Real
import sympy
import bratteli
from bratteli.util.config import CONFIG
from bratteli.errors import ConfigError
from bratteli.matrix_core import Window
from bratteli.diagram import Edge, FinitePath
from bratteli.descriptors import load_json, parse_diagram
from bratteli.orders_vershik import OrderedPath, LeftToRight
from bratteli.spectral import EigenVector

DiagramSource = namedtuple("DiagramSource", [
    "reference", "diagram", "order", "entry",
])

# command outcome; the lines are emitted as JSON lines after the report
Outcome = namedtuple("Outcome", ["result", "lines", "status"])

OUTPUT_FORMATS = ("json", "table", "dot")


def make_option(*args, **kwargs):
    """ Option declaration passed to the argument parser. """
    return args, kwargs


def parse_window(text):
    """ Window option type. """
    try:
        return Window.parse(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc))


COMMON_OPTIONS = (
    make_option(
        "--window", dest="window", default=None, type=parse_window,
        help="Vertex window LO:HI (defaults depend on the command).",
    ),
    make_option(
        "--depth", dest="depth", default=8, type=int,
        help="Number of levels explored (default 8).",
    ),
    make_option(
        "--horizon", dest="horizon", default=None, type=int,
        help="Horizon of the power sequences (configured default).",
    ),
    make_option(
        "--tol", dest="tol", default=None, type=float,
        help="Numerical tolerance (configured default).",
    ),
    make_option(
        "--output", dest="output", default="json", choices=OUTPUT_FORMATS,
        help="Output format.",
    ),
    make_option(
        "--seed", dest="seed", default=None, type=int,
        help="Seed of the sampled probes (configured default).",
    ),
    make_option(
        "--exact", dest="exact", action="store_true", default=False,
        help="Render rational numbers as exact 'p/q' strings.",
    ),
    make_option(
        "-v", "--verbose", dest="verbose", action="store_true",
        default=False, help="Log debugging messages to the standard error.",
    ),
)

DIAGRAM_OPTION = make_option(
    "-d", "--diagram", dest="diagram", required=True,
    help=(
        "Diagram source: 'catalog:<id>?key=value&...' or a JSON descriptor "
        "file ('-' reads the standard input)."
    ),
)


class BaseCommand(object):
    """ Base of the subcommands. """
    help = ""
    option_list = ()
    needs_diagram = True
    # half-width of the default window
    window_half_width = None

    def add_arguments(self, parser):
        """ Register the command options. """
        options = COMMON_OPTIONS + self.option_list
        if self.needs_diagram:
            options = (DIAGRAM_OPTION,) + options
        for args, kwargs in options:
            parser.add_argument(*args, **kwargs)

    def execute(self, opts, stdout=None):
        """ Run the command and write the report. Returns the exit status. """
        stdout = stdout or sys.stdout
        source = load_source(opts["diagram"]) if self.needs_diagram else None
        if source is not None and opts.get("window") is None:
            opts["window"] = source.diagram.index_set.default_window(
                self.window_half_width or CONFIG.window
            )
        outcome = self.handle(source, **opts)
        if not isinstance(outcome, Outcome):
            outcome = Outcome(outcome, None, 0)
        self.write(stdout, opts, outcome)
        return outcome.status

    def handle(self, source, **opts):
        """ Command body returning the result or an Outcome. """
        raise NotImplementedError

    def write(self, stdout, opts, outcome):
        """ Write the report in the requested format. """
        exact = opts.get("exact", False)
        if opts.get("output") == "table":
            write_table(stdout, jsonify(outcome.result, exact))
            for line in outcome.lines or ():
                write_table(stdout, jsonify(line, exact))
            return
        write_report(stdout, self.name, report_config(opts), outcome.result,
                     exact)
        for line in outcome.lines or ():
            write_line(stdout, line, exact)

    @property
    def name(self):
        """ Subcommand name (the module name). """
        return type(self).__module__.rpartition(".")[2]


def load_source(reference):
    """ Resolve a catalog reference or load a JSON descriptor. """
    if reference.startswith("catalog:"):
        from bratteli.catalog import resolve
        entry = resolve(reference)
        return DiagramSource(reference, entry.diagram, entry.order, entry)
    diagram, order = parse_diagram(load_json(reference))
    return DiagramSource(
        reference, diagram, order or LeftToRight(diagram), None
    )


def require_entry(source, what):
    """ The catalog entry of the source or ConfigError. """
    if source.entry is None:
        raise ConfigError("%s requires a catalog diagram!" % what)
    return source.entry


def report_config(opts):
    """ Reproducibility record of the command options and defaults. """
    config = OrderedDict(
        (key, value) for key, value in sorted(opts.items())
        if key not in ("verbose", "command")
    )
    config["defaults"] = CONFIG.as_dict()
    if config.get("seed") is None:
        config["seed"] = CONFIG.seed
    return config


def jsonify(value, exact=False):
    """ Convert results to JSON serializable structures. """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return str(value) if exact else float(value)
    if isinstance(value, Integral):
        return int(value)
    if isinstance(value, Real):
        value = float(value)
        if value != value or value in (float("inf"), float("-inf")):
            return str(value)
        return value
    if isinstance(value, sympy.Basic):
        return str(value)
    if isinstance(value, Window):
        return str(value)
    if isinstance(value, Edge):
        return [value.level, value.source, value.target, value.copy]
    if isinstance(value, FinitePath):
        return OrderedDict([
            ("level", value.level), ("vertex", value.vertex),
            ("edges", [jsonify(edge) for edge in value.edges]),
        ])
    if isinstance(value, OrderedPath):
        return OrderedDict([
            ("start", value.start),
            ("edges", [jsonify(edge) for edge in value.prefix.edges]),
            ("tail", type(value.tail).__name__),
        ])
    if isinstance(value, EigenVector):
        return OrderedDict([
            ("type", "EigenVector"), ("exact", value.exact),
            ("window", None if value.window is None else str(value.window)),
        ])
    if hasattr(value, "_asdict"):
        result = OrderedDict([("type", type(value).__name__)])
        for key, item in value._asdict().items():
            result[key] = jsonify(item, exact)
        return result
    if isinstance(value, dict):
        return OrderedDict(
            (str(key), jsonify(item, exact)) for key, item in value.items()
        )
    if isinstance(value, (list, tuple, set, frozenset, range)):
        return [jsonify(item, exact) for item in value]
    return str(value)


def write_report(stdout, command, config, result, exact=False):
    """ Write the JSON report {version, command, config, result}. """
    report = OrderedDict([
        ("version", bratteli.__version__),
        ("command", command),
        ("config", jsonify(config, exact)),
        ("result", jsonify(result, exact)),
    ])
    stdout.write(json.dumps(report, sort_keys=True))
    stdout.write("\n")


def write_line(stdout, item, exact=False):
    """ Write a single JSON line. """
    stdout.write(json.dumps(jsonify(item, exact), sort_keys=True))
    stdout.write("\n")


def write_table(stdout, data):
    """ Plain text rendering: key/value pairs or tab separated rows. """
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            if not isinstance(value, str):
                value = json.dumps(value, sort_keys=True)
            stdout.write("%s\t%s\n" % (key, value))
    elif isinstance(data, list):
        for item in data:
            write_table(stdout, item)
    else:
        stdout.write("%s\n" % (data,))
