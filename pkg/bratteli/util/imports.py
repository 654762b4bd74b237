#-------------------------------------------------------------------------------
#
# Resolve user supplied rules (orders, tails, vertex maps) by name.
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

from importlib import import_module
from bratteli.errors import InvalidDiagram


def import_object(name, package=None):
    """ Import object from module.

    Both 'package.module.object' and 'package.module:object' forms
    are accepted.
    """
    if ':' in name:
        module_name, separator, obj_name = name.partition(':')
    else:
        module_name, separator, obj_name = name.rpartition('.')
    if not separator or not module_name or not obj_name:
        raise ValueError("Invalid module name %r!" % name)
    return getattr(import_module(module_name, package=package), obj_name)


def import_rule(name, what="rule"):
    """ Import a callable rule referenced from a JSON descriptor. """
    try:
        rule = import_object(name)
    except (ImportError, AttributeError, ValueError) as exc:
        raise InvalidDiagram("Cannot load %s %r! %s" % (what, name, exc))
    if not callable(rule):
        raise InvalidDiagram("The %s %r is not callable!" % (what, name))
    return rule
