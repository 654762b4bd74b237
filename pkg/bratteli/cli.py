#-------------------------------------------------------------------------------
#
# Command line front end.
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

import sys
import argparse
import logging
from collections import OrderedDict
import bratteli
from bratteli.errors import BratteliError, ConfigError, InvalidDiagram
from bratteli.util.imports import import_object
from bratteli.commands import write_report, report_config

COMMANDS = OrderedDict([
    ("analyze", "bratteli.commands.analyze"),
    ("measure", "bratteli.commands.measure"),
    ("vershik", "bratteli.commands.vershik"),
    ("heights", "bratteli.commands.heights"),
    ("walk", "bratteli.commands.walk"),
    ("witness", "bratteli.commands.witness"),
    ("verify", "bratteli.commands.verify"),
    ("render", "bratteli.commands.render"),
    ("catalog", "bratteli.commands.catalog"),
])

# exit statuses
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(levelname)s: %(name)s: %(message)s"


def get_command(name):
    """ Instantiate the subcommand. """
    return import_object("%s:Command" % COMMANDS[name])()


def build_parser():
    """ Argument parser with one sub-parser per command. """
    parser = argparse.ArgumentParser(
        prog="bratteli",
        description="Generalized Bratteli diagram toolkit.",
    )
    parser.add_argument(
        "--version", action="version", version=bratteli.__version__
    )
    subparsers = parser.add_subparsers(dest="command")
    subparsers.required = True
    for name in COMMANDS:
        command = get_command(name)
        subparser = subparsers.add_parser(name, help=command.help)
        command.add_arguments(subparser)
    return parser


def configure_logging(verbose):
    """ Log to the standard error; DEBUG when verbose, WARNING otherwise. """
    logger = logging.getLogger("bratteli")
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)


def run(argv=None, stdout=None):
    """ Run the command line and return the exit status. """
    stdout = stdout or sys.stdout
    try:
        opts = vars(build_parser().parse_args(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    configure_logging(opts.get("verbose"))
    name = opts["command"]
    try:
        return get_command(name).execute(opts, stdout)
    except BratteliError as exc:
        logging.getLogger("bratteli").error("%s", exc)
        write_report(stdout, name, report_config(opts), OrderedDict([
            ("error", type(exc).__name__), ("message", str(exc)),
        ]))
        if isinstance(exc, (ConfigError, InvalidDiagram)):
            return EXIT_USAGE
        return EXIT_FAILURE


def main():
    """ Console script entry point. """
    sys.exit(run())


if __name__ == "__main__":
    main()
