#-------------------------------------------------------------------------------
#
# Object Validating Parsers - used to validate parsed JSON descriptors.
#
# Authors: Martin Paces <martin.paces@eox.at>
#
#-------------------------------------------------------------------------------
# Copyright (C) 2015 EOX IT Services GmbH
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
# pylint: disable=too-few-public-methods

from fractions import Fraction


def _parse(parsers, value):
    """ Apply a parser or the first matching parser of a sequence. """
    if not isinstance(parsers, (list, tuple)):
        return parsers.parse(value)
    errors = []
    for parser in parsers:
        try:
            return parser.parse(value)
        except (TypeError, ValueError) as exc:
            errors.append(str(exc))
    raise ValueError(" / ".join(errors) or "No parser matched!")


class Null(object):
    """ JSON null. """
    @staticmethod
    def parse(value):
        """ accept None only """
        if value is None:
            return None
        raise ValueError("null expected, got %r!" % (value,))


class Bool(object):
    """ JSON boolean or one of the usual spellings. """
    TRUE = ("true", "yes", "on", "1")
    FALSE = ("false", "no", "off", "0")

    @classmethod
    def parse(cls, value):
        """ parse flag """
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in cls.TRUE:
            return True
        if text in cls.FALSE:
            return False
        raise ValueError("Boolean expected, got %r!" % (value,))


class Int(object):
    """ Integer parser with an optional lower bound. """
    def __init__(self, minimum=None):
        self.minimum = minimum

    def parse(self, value):
        """ parse integer value """
        if isinstance(value, bool) or not isinstance(value, (int, str)):
            raise ValueError("Not an integer value!")
        value = int(value)
        if self.minimum is not None and value < self.minimum:
            raise ValueError("Integer %d is below %d!" % (value, self.minimum))
        return value


class Rational(object):
    """ Exact number parser: integers, 'p/q' strings or floats. """
    @staticmethod
    def parse(value):
        """ parse rational value """
        if isinstance(value, bool):
            raise ValueError("Not a number!")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, float):
            return Fraction(value).limit_denominator(10**12)
        if isinstance(value, str):
            return Fraction(value)
        raise ValueError("Not a number!")


class String(object):
    """ JSON string. """
    @staticmethod
    def parse(value):
        """ accept str only """
        if isinstance(value, str):
            return value
        raise ValueError("String expected, got %r!" % (value,))


class Choice(object):
    """ Enumerated string parser. """
    def __init__(self, *choices):
        self.choices = choices

    def parse(self, value):
        """ parse one of the allowed values """
        if value not in self.choices:
            raise ValueError("%r is not one of %s!" % (
                value, ", ".join(repr(item) for item in self.choices)
            ))
        return value


class AnyObject(object):
    """ JSON object passed through as it is. """
    @staticmethod
    def parse(value):
        """ accept dict only """
        if isinstance(value, dict):
            return value
        raise ValueError("JSON object expected, got %s!" % (
            type(value).__name__
        ))


class Array(object):
    """ JSON array with uniformly parsed items. """
    def __init__(self, item_parser, min_length=0):
        self.item_parser = item_parser
        self.min_length = min_length

    def parse(self, value):
        """ parse items """
        if not isinstance(value, (list, tuple)):
            raise ValueError("JSON array expected!")
        if len(value) < self.min_length:
            raise ValueError("At least %d items expected!" % self.min_length)
        items = []
        for idx, item in enumerate(value):
            try:
                items.append(_parse(self.item_parser, item))
            except ValueError as exc:
                raise ValueError("[%d]: %s" % (idx, exc))
        return items


class Mapping(object):
    """ Object with arbitrary keys and uniformly parsed values. """
    def __init__(self, key_parser, value_parser):
        self.key_parser = key_parser
        self.value_parser = value_parser

    def parse(self, obj):
        """ parse mapping """
        obj = AnyObject.parse(obj)
        return dict(
            (_parse(self.key_parser, key), _parse(self.value_parser, value))
            for key, value in obj.items()
        )


class Object(object):
    """ JSON object with declared attributes.

    Each schema item is (key, parser[, required[, default]]) where the
    parser may be a tuple of alternatives. required=True makes the key
    mandatory, required=False fills in the default when the key is
    absent, and a missing or None flag leaves absent keys out.
    """
    def __init__(self, schema):
        items = schema.items() if isinstance(schema, dict) else schema
        self.schema = [
            (item[0], item[1], item[2] if len(item) > 2 else None,
             item[3] if len(item) > 3 else None)
            for item in items
        ]

    def parse(self, obj):
        """ parse attributes """
        obj = AnyObject.parse(obj)
        parsed = {}
        for key, parser, required, default in self.schema:
            if key in obj:
                try:
                    parsed[key] = _parse(parser, obj[key])
                except ValueError as exc:
                    raise ValueError("%s: %s" % (key, exc))
            elif required:
                raise ValueError("Missing mandatory attribute %r!" % key)
            elif required is False:
                parsed[key] = default
        return parsed
