#-------------------------------------------------------------------------------
#
# Exceptions raised by the diagram toolkit.
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
# pylint: disable=too-few-public-methods


class BratteliError(Exception):
    """ Base of all toolkit errors. """


class ConfigError(BratteliError):
    """ Invalid configuration or command-line input. """
    def __init__(self, reason):
        super(ConfigError, self).__init__("Invalid configuration! %s" % reason)


class InvalidDiagram(BratteliError):
    """ Diagram, matrix or order description failed validation. """
    def __init__(self, reason):
        super(InvalidDiagram, self).__init__("Invalid diagram! %s" % reason)


class InvalidPath(BratteliError):
    """ Sequence of edges is not a path of the diagram. """
    def __init__(self, reason):
        super(InvalidPath, self).__init__("Invalid path! %s" % reason)


class ColumnSupportUnbounded(BratteliError):
    """ Column support cannot be certified finite. """
    def __init__(self, column):
        self.column = column
        super(ColumnSupportUnbounded, self).__init__(
            "Column %s has an unbounded support!" % (column,)
        )


class RowSupportUnbounded(BratteliError):
    """ Complete row requested but the row is infinite. """
    def __init__(self, row):
        self.row = row
        super(RowSupportUnbounded, self).__init__(
            "Row %s has an unbounded support!" % (row,)
        )


class NoReturnFound(BratteliError):
    """ No return to the vertex witnessed within the horizon. """
    def __init__(self, vertex, horizon):
        self.vertex = vertex
        self.horizon = horizon
        super(NoReturnFound, self).__init__(
            "No return to vertex %s within %d steps!" % (vertex, horizon)
        )


class DivergenceDetected(BratteliError):
    """ Perron value estimates exceeded the configured ceiling. """
    def __init__(self, value, horizon):
        self.value = value
        self.horizon = horizon
        super(DivergenceDetected, self).__init__(
            "Perron value estimate %.6g exceeded the ceiling at n=%d!" % (
                value, horizon
            )
        )


class NoPositiveSolution(BratteliError):
    """ Eigenvector iteration produced a non-positive interior entry. """
    def __init__(self, vertex, value):
        self.vertex = vertex
        self.value = value
        super(NoPositiveSolution, self).__init__(
            "Non-positive eigenvector entry %.6g at vertex %s!" % (
                value, vertex
            )
        )


class RowSumViolation(BratteliError):
    """ Stochastic matrix row does not sum to one. """
    def __init__(self, row, total):
        self.row = row
        self.total = total
        super(RowSumViolation, self).__init__(
            "Row %s sums to %.15g instead of 1!" % (row, total)
        )


class NormalizationViolation(BratteliError):
    """ Normalized measure sequences break one of their identities. """
    def __init__(self, identity, error):
        self.identity = identity
        self.error = error
        super(NormalizationViolation, self).__init__(
            "Normalized sequences violate %s (value %.3g)!" % (identity, error)
        )


class NoWitnessWithinHorizon(BratteliError):
    """ Constructive witness search exhausted its horizon. """
    def __init__(self, horizon):
        self.horizon = horizon
        super(NoWitnessWithinHorizon, self).__init__(
            "No witness found within horizon %d!" % horizon
        )


class ConditionFails(BratteliError):
    """ Hypothesis of the discontinuity construction fails. """
    def __init__(self, level, horizon=None):
        self.level = level
        self.horizon = horizon
        super(ConditionFails, self).__init__(
            "No k <= %s satisfies t[N+k] < sum(t[N:N+k]) for N=%d!" % (
                horizon, level
            )
        )


class ConeCollapse(BratteliError):
    """ Inverse-limit approximants lose their mass on the fixed window. """
    def __init__(self, mass, depth):
        self.mass = mass
        self.depth = depth
        super(ConeCollapse, self).__init__(
            "Measure vectors collapsed at depth %d (window mass %.3g)!" % (
                depth, mass
            )
        )


class NoExtremeContinuation(BratteliError):
    """ No extreme edge leaves the vertex. """
    def __init__(self, level, vertex):
        self.level = level
        self.vertex = vertex
        super(NoExtremeContinuation, self).__init__(
            "No extreme edge leaves vertex %s at level %d!" % (vertex, level)
        )


class ParamOutOfRange(BratteliError):
    """ Catalog parameter outside of its documented range. """
    def __init__(self, name, value, reason):
        self.name = name
        self.value = value
        self.reason = reason
        super(ParamOutOfRange, self).__init__(
            "Parameter %s=%r is out of range! %s" % (name, value, reason)
        )
