#-------------------------------------------------------------------------------
#
# Toolkit configuration - INI file section with environment overrides.
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

import os
from configparser import ConfigParser
from bratteli.errors import ConfigError

ENV_CONFIG_PATH = "BRATTELI_CONFIG"
DEFAULT_CONFIG_PATH = "bratteli.cfg"


def get_bratteli_config(path=None):
    """ Load the INI configuration. Missing files yield an empty parser. """
    parser = ConfigParser()
    parser.read(path or os.environ.get(ENV_CONFIG_PATH, DEFAULT_CONFIG_PATH))
    return parser


class Option(object):
    """ Typed configuration option with a default value. """
    def __init__(self, default=None, type=str):
        # pylint: disable=redefined-builtin
        self.default = default
        self.type = type
        self.name = None

    def __set_name__(self, owner, name):
        self.name = name

    def __get__(self, reader, owner=None):
        if reader is None:
            return self
        return reader.get(self)

    def parse(self, value):
        """ Convert raw string value to the option type. """
        try:
            return self.type(value)
        except (TypeError, ValueError):
            raise ConfigError("Invalid value %r of option %r!" % (
                value, self.name
            ))


class Reader(object):
    """ Configuration section reader.

    Values are looked up in the environment (<SECTION>_<OPTION>) first,
    then in the INI section and finally fall back to the option default.
    """
    section = None

    def __init__(self, parser=None, environ=None):
        self.parser = parser if parser is not None else ConfigParser()
        self.environ = os.environ if environ is None else environ

    def env_key(self, option):
        """ Environment variable overriding the given option. """
        return ("%s_%s" % (self.section, option.name)).upper()

    def get(self, option):
        """ Get the option value. """
        value = self.environ.get(self.env_key(option))
        if value is None and self.parser.has_option(self.section, option.name):
            value = self.parser.get(self.section, option.name)
        if value is None:
            return option.default
        return option.parse(value)

    def as_dict(self):
        """ All option values of the section. """
        return dict(
            (name, getattr(self, name)) for name, item
            in vars(type(self)).items() if isinstance(item, Option)
        )


class BratteliConfigReader(Reader):
    """ Numerical defaults of the toolkit. """
    section = "bratteli"
    tolerance = Option(default=1e-9, type=float)
    row_sum_tolerance = Option(default=1e-9, type=float)
    divergence_ceiling = Option(default=1e6, type=float)
    horizon = Option(default=60, type=int)
    window = Option(default=50, type=int)
    collapse_threshold = Option(default=1e-12, type=float)
    cauchy_tolerance = Option(default=1e-10, type=float)
    depth_step = Option(default=10, type=int)
    max_depth = Option(default=400, type=int)
    seed = Option(default=0, type=int)


CONFIG = BratteliConfigReader(get_bratteli_config())
