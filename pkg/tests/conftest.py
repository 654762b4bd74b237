#-------------------------------------------------------------------------------
#
# Shared test fixtures.
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
# pylint: disable=missing-docstring,redefined-outer-name

import io
import json
import pytest
from bratteli import catalog
from bratteli.cli import run


@pytest.fixture
def entry():
    """ Factory of catalog entries: entry("A1", a=1, b=2). """
    def _entry(ident, **params):
        return catalog.get(ident, params)
    return _entry


@pytest.fixture
def cli():
    """ Run the command line; returns the exit status and the parsed
    JSON lines of the standard output.
    """
    def _run(*argv):
        stream = io.StringIO()
        status = run(list(argv), stdout=stream)
        lines = [
            json.loads(line) for line in stream.getvalue().splitlines()
            if line.strip()
        ]
        return status, lines
    return _run


@pytest.fixture
def raw_cli():
    """ Run the command line; returns the exit status and the raw output. """
    def _run(*argv):
        stream = io.StringIO()
        status = run(list(argv), stdout=stream)
        return status, stream.getvalue()
    return _run
