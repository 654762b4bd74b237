#-------------------------------------------------------------------------------
#
# Catalog of concrete matrices, diagrams and orders with their
# closed-form eigen-data.
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
# pylint: disable=too-many-arguments,invalid-name

import os
from collections import OrderedDict, namedtuple
from fractions import Fraction
from math import sqrt, isqrt
from urllib.parse import parse_qsl
import sympy
from scipy.optimize import brentq
from bratteli.errors import InvalidDiagram, ParamOutOfRange
from bratteli.util.object_parser import Int, Choice
from bratteli.matrix_core import (
    INTEGERS, NATURALS, NATURALS0, INDEX_SETS, BandSpec, BandedMatrix,
    PatternMatrix, ColumnRuleMatrix, IncidenceSequence,
)
from bratteli.spectral import (
    EigenPair, ClosedForm, EigenVector, GeometricRatio, ClosedFormSum,
    constant_vector, TRANSIENT, NULL_RECURRENT, POSITIVE_RECURRENT,
)
from bratteli.diagram import Diagram, Edge, FinitePath
from bratteli.orders_vershik import LeftToRight, OrderedPath, MinimalTail
from bratteli.descriptors import parse_label_diagram, load_json

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

Z = sympy.Symbol("z")

Param = namedtuple("Param", ["name", "parser", "default"])


class Oracle(namedtuple("Oracle", [
        "lam", "lam_exact", "equation", "xi", "eta", "xi_tail",
        "pairing_tail", "recurrence", "period", "seeds", "properties"])):
    """ Closed-form data attached to a catalog entry. """
    __slots__ = ()

    def __new__(cls, lam=None, lam_exact=None, equation=None, xi=None,
                eta=None, xi_tail=None, pairing_tail=None, recurrence=None,
                period=1, seeds=None, properties=()):
        return super(Oracle, cls).__new__(
            cls, lam, lam_exact, equation, xi, eta, xi_tail, pairing_tail,
            recurrence, period, seeds, tuple(properties),
        )


class CatalogEntry(object):
    """ Fully wired catalog entry. """

    def __init__(self, ident, params, diagram, oracle, order=None,
                 anchor=None, description="", extras=None):
        self.ident = ident
        self.params = params
        self.diagram = diagram
        self.oracle = oracle
        self.order = order
        self.anchor = diagram.index_set.anchor if anchor is None else anchor
        self.description = description
        self.extras = extras or {}

    @property
    def matrix(self):
        """ Incidence matrix of the first level. """
        return self.diagram.matrix(0)

    @property
    def reference(self):
        """ The catalog reference string of the entry. """
        if not self.params:
            return "catalog:%s" % self.ident
        return "catalog:%s?%s" % (self.ident, "&".join(
            "%s=%s" % (key, _format(value))
            for key, value in sorted(self.params.items())
        ))

    def eigenpair(self):
        """ Closed-form eigenpair of the oracle. """
        oracle = self.oracle
        if oracle.lam is None or oracle.xi is None:
            raise InvalidDiagram(
                "Catalog entry %s has no closed-form eigenpair!" % self.ident
            )
        pair = EigenPair(
            oracle.lam, oracle.xi, oracle.eta, ClosedForm(self.ident),
            oracle.lam_exact, oracle.xi_tail, oracle.pairing_tail,
        )
        return pair

    def summary(self):
        """ JSON serializable description. """
        oracle = self.oracle
        return OrderedDict([
            ("id", self.ident),
            ("reference", self.reference),
            ("description", self.description),
            ("index_set", self.diagram.index_set.name),
            ("stationary", self.diagram.is_stationary),
            ("anchor", self.anchor),
            ("lambda", None if oracle.lam is None else _format(oracle.lam)),
            ("lambda_exact", (
                None if oracle.lam_exact is None else str(oracle.lam_exact)
            )),
            ("recurrence", oracle.recurrence),
            ("period", oracle.period),
            ("properties", list(oracle.properties)),
        ])


def _format(value):
    if isinstance(value, list):
        return ",".join(str(item) for item in value)
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    return value


def _exact(index_set, formula):
    return EigenVector(index_set, formula=formula, exact=True)


def _float(index_set, formula):
    return EigenVector(index_set, formula=formula, exact=False)


# -----------------------------------------------------------------------------
# stationary spectral examples

def _two_sided_walk(a, b):
    """ Walk on the integers pushed towards 0 with the Perron value a+2b. """
    matrix = BandedMatrix({
        -1: {"negative": 2 * b, "default": a, "rows": {0: b, 1: b}},
        0: {"default": 0, "rows": {0: a, -1: a}},
        1: {"default": 2 * b, "negative": a, "rows": {-1: b, -2: b}},
    }, INTEGERS)
    ratio = Fraction(a, 2 * b)

    def xi(vertex):
        if vertex < 0:
            vertex = -vertex - 1
        if vertex == 0:
            return Fraction(1)
        return Fraction(1, 2) * ratio ** (vertex - 1)

    tail = GeometricRatio(ratio, -2, 1, lower_ratio=ratio)
    if a < 2 * b:
        recurrence = POSITIVE_RECURRENT
    elif a == 2 * b:
        recurrence = NULL_RECURRENT
    else:
        recurrence = TRANSIENT
    oracle = Oracle(
        lam=a + 2 * b, xi=_exact(INTEGERS, xi),
        eta=constant_vector(INTEGERS), xi_tail=tail, pairing_tail=tail,
        recurrence=recurrence, seeds={0: 1, -1: 1},
        properties=["equal-column-sums"],
    )
    return Diagram.stationary(matrix, name="A1"), oracle, {}


def _asymmetric_walk(a, b):
    """ Nearest neighbour walk with a steps left and b steps right. """
    matrix = BandedMatrix({-1: a, 1: b}, INTEGERS)
    root = isqrt(a * b)
    if root * root == a * b:
        lam, rho = 2 * root, Fraction(root, b)
        xi = _exact(INTEGERS, lambda vertex: rho ** vertex)
        eta = _exact(INTEGERS, lambda vertex: (1 / rho) ** vertex)
    else:
        lam, rho = 2 * sqrt(a * b), sqrt(a / b)
        xi = _float(INTEGERS, lambda vertex: rho ** vertex)
        eta = _float(INTEGERS, lambda vertex: rho ** -vertex)
    oracle = Oracle(
        lam=lam, lam_exact=2 * sympy.sqrt(a * b), equation=Z ** 2 - 4 * a * b,
        xi=xi, eta=eta, xi_tail=ClosedFormSum(None),
        pairing_tail=ClosedFormSum(None), recurrence=NULL_RECURRENT,
        period=2, properties=["two-sigma-finite-measures"],
    )

    def measure(length, vertex):
        """ Cylinder measure (2b)^-n (a/b)^((i-n)/2) of the length n
        cylinder ending at the vertex i.
        """
        if isinstance(lam, int):
            return Fraction(1, (2 * b) ** length) * rho ** (vertex - length)
        return (2.0 * b) ** -length * (a / b) ** ((vertex - length) / 2.0)

    second = EigenPair(
        a + b, constant_vector(INTEGERS), constant_vector(INTEGERS),
        ClosedForm("A2"), pairing_tail=ClosedFormSum(None),
        xi_tail=ClosedFormSum(None),
    )
    extras = {"measure_formula": measure, "eigenpairs": [second]}
    return Diagram.stationary(matrix, name="A2"), oracle, extras


def _geometric_chain(b, c, alpha):
    """ Chain on the naturals with the Perron value b+c+alpha*c. """
    if alpha < 2:
        raise ParamOutOfRange("alpha", alpha, "alpha > 1 required")
    matrix = BandedMatrix({
        -1: c,
        0: {"default": b, "rows": {1: b + alpha * c}},
        1: alpha * c,
    }, NATURALS)
    ratio = Fraction(1, alpha)
    tail = GeometricRatio(ratio, 1, 1)
    oracle = Oracle(
        lam=b + c + alpha * c,
        xi=_exact(NATURALS, lambda vertex: ratio ** (vertex - 1)),
        eta=constant_vector(NATURALS), xi_tail=tail, pairing_tail=tail,
        recurrence=POSITIVE_RECURRENT, seeds={1: 1},
        properties=["equal-column-sums"],
    )
    return Diagram.stationary(matrix, name="A3"), oracle, {}


def _alternating_chain(b, r, alpha, beta):
    """ Chain with alternating drifts on even and odd rows. """
    for name, value in (("alpha", alpha), ("beta", beta)):
        if abs(value) >= r:
            raise ParamOutOfRange(name, value, "|%s| < r required" % name)
    matrix = BandedMatrix({
        -1: {"even": r - alpha, "odd": r - beta},
        0: {"default": b, "rows": {1: b + r + alpha}},
        1: {"even": r + alpha, "odd": r + beta},
    }, NATURALS)
    q1 = Fraction(r - alpha, r + beta)
    q2 = Fraction(r - beta, r + alpha)
    q = q1 * q2

    def xi(vertex):
        if vertex % 2:
            return q ** ((vertex - 1) // 2)
        return q1 * q ** (vertex // 2 - 1)

    tail = GeometricRatio(q, 1, 1, step=2)
    if q < 1:
        recurrence = POSITIVE_RECURRENT
    elif q == 1:
        recurrence = NULL_RECURRENT
    else:
        recurrence = TRANSIENT
    oracle = Oracle(
        lam=b + 2 * r, xi=_exact(NATURALS, xi),
        eta=constant_vector(NATURALS), xi_tail=tail, pairing_tail=tail,
        recurrence=recurrence, seeds={1: 1},
        properties=["equal-column-sums"],
    )
    return Diagram.stationary(matrix, name="A4"), oracle, {}


def _renewal():
    """ Every vertex returns to 1 or steps down; Perron value 2. """
    matrix = PatternMatrix([
        {"row": 1, "from": 1, "step": 1, "value": 1},
        {"offset": -1, "from": 2, "value": 1},
    ], NATURALS)
    tail = GeometricRatio(Fraction(1, 2), 1, 1)
    oracle = Oracle(
        lam=2, xi=_exact(NATURALS, lambda vertex: Fraction(1, 2 ** vertex)),
        eta=constant_vector(NATURALS), xi_tail=tail, pairing_tail=tail,
        recurrence=POSITIVE_RECURRENT, properties=["probability-measure"],
    )
    return Diagram.stationary(matrix, name="A5"), oracle, {}


def _pair_renewal():
    """ Renewal with extra returns through the vertex 2 of the even
    vertices; Perron value 1 + sqrt(2).
    """
    matrix = PatternMatrix([
        {"row": 1, "from": 1, "step": 1, "value": 1},
        {"row": 2, "from": 2, "step": 2, "value": 1},
        {"offset": -1, "from": 2, "value": 1},
    ], NATURALS)
    lam = 1.0 + sqrt(2.0)

    def xi(vertex):
        return 1.0 / lam if vertex == 1 else 2.0 / lam ** vertex

    def eta(vertex):
        return 1.0 if vertex % 2 else lam - 1.0

    oracle = Oracle(
        lam=lam, lam_exact=1 + sympy.sqrt(2), equation=Z ** 2 - 2 * Z - 1,
        xi=_float(NATURALS, xi), eta=_float(NATURALS, eta),
        xi_tail=GeometricRatio(1.0 / lam, 1, 1),
        pairing_tail=GeometricRatio(1.0 / lam ** 2, 1, 1, step=2),
        recurrence=POSITIVE_RECURRENT, properties=["probability-measure"],
    )
    return Diagram.stationary(matrix, name="A6"), oracle, {}


class Coefficients(object):
    """ Non-negative integer list given as a sequence or as "1,0,2". """
    @staticmethod
    def parse(value):
        """ parse coefficient list """
        if isinstance(value, (list, tuple)):
            items = value
        else:
            items = [item for item in str(value).split(",") if item.strip()]
        coefficients = [int(item) for item in items]
        if any(item < 0 for item in coefficients):
            raise ValueError("Non-negative integers expected!")
        return coefficients


def _first_column(c, tail):
    """ Column 1 holds the coefficients c_k followed by the tail value;
    every other vertex has the single edge from its left neighbour.
    """
    coefficients = list(c)
    if tail < 0:
        raise ParamOutOfRange("tail", tail, "non-negative integer expected")
    if not any(coefficients) and not tail:
        raise ParamOutOfRange("c", c, "at least one positive coefficient")
    matrix = PatternMatrix([
        {"column": 1, "from": 1, "values": coefficients, "tail": tail},
        {"offset": 1, "from": 1, "value": 1},
    ], NATURALS)
    size = len(coefficients)

    def coefficient(idx):
        return coefficients[idx] if idx < size else tail

    if all(item == tail for item in coefficients):
        lam = tail + 1
    else:
        def equation(z):
            value = sum(
                item * z ** (-idx - 1) for idx, item in enumerate(coefficients)
            )
            if tail:
                value += tail * z ** -size / (z - 1.0)
            return value - 1.0

        lower = 1.0 + 1e-12 if tail else 1e-9
        upper = 2.0 + max(coefficients + [tail])
        lam = brentq(equation, lower, upper, xtol=1e-15)
    one = Fraction(1) if isinstance(lam, int) else 1.0

    def xi(vertex):
        """ xi_i = sum_{k >= i-1} c_k lam^-(k-i+2) (stable tail form). """
        value = sum(
            coefficient(idx) * one / lam ** (idx - vertex + 2)
            for idx in range(vertex - 1, max(size, vertex - 1))
        )
        if tail:
            first = max(size, vertex - 1)
            value += tail * one / lam ** (first - vertex + 2) * lam / (lam - 1)
        return value

    def eta(vertex):
        return one / lam ** (vertex - 1)

    pairing = sum(
        (idx + 1) * item * one / lam ** (idx + 1)
        for idx, item in enumerate(coefficients)
    )
    if tail:
        x = one / lam
        pairing += tail * x ** (size + 1) * ((size + 1) - size * x) / (
            (1 - x) ** 2
        )
    xi_sum = None
    if not tail:
        xi_sum = sum(
            item * (1 - one / lam ** (idx + 1)) / (lam - 1)
            for idx, item in enumerate(coefficients)
        )
    maker = _exact if isinstance(lam, int) else _float
    oracle = Oracle(
        lam=lam, xi=maker(NATURALS, xi), eta=maker(NATURALS, eta),
        xi_tail=ClosedFormSum(xi_sum), pairing_tail=ClosedFormSum(pairing),
        recurrence=POSITIVE_RECURRENT,
        properties=["infinite-column", "derived-perron-value"],
    )
    return Diagram.stationary(matrix, name="A7"), oracle, {}


# -----------------------------------------------------------------------------
# measure existence

def _no_measure():
    """ Diagonal 2, 3, 4, ... with one edge to the left neighbour. """
    matrix = BandedMatrix({-1: 1, 0: {"linear": [1, 1]}}, NATURALS)
    oracle = Oracle(properties=["no-tail-invariant-measure"])
    return Diagram.stationary(matrix, name="NoMeasure"), oracle, {}


def self_power_diagonal(vertex):
    """ Diagonal entry |m|^|m| (1 for m = 0). """
    return abs(vertex) ** abs(vertex)


def _infinite_perron():
    matrix = BandedMatrix({-1: 1, 0: self_power_diagonal, 1: 1}, INTEGERS)
    oracle = Oracle(properties=["infinite-perron-value"])
    return Diagram.stationary(matrix, name="InfinitePerron"), oracle, {}


def compressible_matrix(level):
    """ Incidence matrix of the level of the compressible diagram.

    The level n holds the tree vertices 1 .. 2^n followed by the main
    vertices (main vertex k has the index 2^n + k). A tree vertex j
    receives an edge from its parent ceil(j/2) and one from the main
    vertex 1; the main vertex k receives two edges from the main
    vertex k and one from each main neighbour.
    """
    trees, next_trees = 2 ** level, 2 ** (level + 1)

    def main(k):
        return trees + k

    def column(vertex):
        if vertex <= next_trees:
            return [((vertex + 1) // 2, 1), (main(1), 1)]
        k = vertex - next_trees
        if k == 1:
            return [(main(1), 2), (main(2), 1)]
        return [(main(k - 1), 1), (main(k), 2), (main(k + 1), 1)]

    def row(vertex, window):
        if vertex <= trees:
            return [(2 * vertex - 1, 1), (2 * vertex, 1)], False
        k = vertex - trees
        upper = next_trees + k
        if k == 1:
            entries = [(target, 1) for target in range(1, next_trees + 1)]
            return entries + [(upper, 2), (upper + 1, 1)], False
        return [(upper - 1, 1), (upper, 2), (upper + 1, 1)], False

    return ColumnRuleMatrix(column, NATURALS, row_rule=row)


def _compressible():
    sequence = IncidenceSequence(rule=compressible_matrix)
    diagram = Diagram(sequence, name="Compressible")
    oracle = Oracle(properties=[
        "no-maximal-paths", "image-misses-cylinder",
        "no-invariant-probability",
    ])
    extras = {"cylinder_vertex": 1}
    return diagram, oracle, extras, LeftToRight(diagram)


# -----------------------------------------------------------------------------
# orders and the Vershik map

def doubling_width(level):
    """ Band width 1, 1, 2, 4, 8, ... of the levels. """
    return 1 if level == 0 else 2 ** (level - 1)


def _continuous_vershik():
    """ Edges v -> v +- t_n with the doubling widths t_n; the Vershik map
    of the left-to-right order extends continuously.
    """
    sequence = IncidenceSequence(rule=lambda level: BandedMatrix({
        -doubling_width(level): 1, doubling_width(level): 1,
    }, INTEGERS))
    band = BandSpec(doubling_width, lambda level: 2)
    diagram = Diagram(sequence, band, "ContinuousVershik")
    order = LeftToRight(diagram)

    def pairing_rule(path):
        """ The maximal path from w is paired with the minimal path from w. """
        return OrderedPath(FinitePath(0, path.start), MinimalTail(order))

    oracle = Oracle(properties=["vershik-continuous", "bounded-size"])
    return diagram, oracle, {"pairing_rule": pairing_rule}, order


def _uniform_band(t, index_set):
    """ All edges v -> v + d for |d| <= t. """
    index_set = INDEX_SETS[index_set]
    matrix = BandedMatrix(dict((offset, 1) for offset in range(-t, t + 1)),
                          index_set)
    diagram = Diagram.stationary(
        matrix, BandSpec.uniform(t, 2 * t + 1), "UniformBand"
    )
    oracle = Oracle(properties=["bounded-size"])
    if index_set is INTEGERS:
        oracle = Oracle(
            lam=2 * t + 1, xi=constant_vector(INTEGERS),
            eta=constant_vector(INTEGERS), xi_tail=ClosedFormSum(None),
            pairing_tail=ClosedFormSum(None), recurrence=NULL_RECURRENT,
            properties=["bounded-size", "equal-column-sums"],
        )
    return diagram, oracle, {}, LeftToRight(diagram)


def fold_vertex(vertex):
    """ Integers onto the naturals with 0: v -> 2v, -v-1 -> 2v+1. """
    return 2 * vertex if vertex >= 0 else -2 * vertex - 1


def _isomorphism_pair():
    """ Diagram on the integers and its folded copy on the naturals. """
    matrix = BandedMatrix({-1: 1, 0: 2, 1: 1}, INTEGERS)
    folded = BandedMatrix({
        -2: 1, -1: {"default": 0, "rows": {1: 1}}, 0: 2,
        1: {"default": 0, "rows": {0: 1}}, 2: 1,
    }, NATURALS0)
    diagram = Diagram.stationary(matrix, name="IsomorphismPair")
    partner = Diagram.stationary(folded, name="IsomorphismPartner")

    def vertex_map(level, vertex):
        return fold_vertex(vertex)

    def edge_map(level, edge):
        return Edge(
            edge.level, fold_vertex(edge.source), fold_vertex(edge.target),
            edge.copy,
        )

    oracle = Oracle(properties=["isomorphic-diagrams"])
    extras = {
        "partner": partner, "vertex_map": vertex_map, "edge_map": edge_map,
    }
    return diagram, oracle, extras, LeftToRight(diagram)


def _label_diagram(name, properties):
    label = parse_label_diagram(
        load_json(os.path.join(DATA_DIR, "%s.json" % name))
    )
    oracle = Oracle(properties=properties)
    return label.diagram, oracle, {"tables": label.tables}, label.order


# -----------------------------------------------------------------------------
# registry

ENTRIES = OrderedDict([
    ("A1", (_two_sided_walk, [
        Param("a", Int(1), 1), Param("b", Int(1), 1),
    ], "Two-sided walk with the Perron value a+2b.")),
    ("A2", (_asymmetric_walk, [
        Param("a", Int(1), 1), Param("b", Int(1), 1),
    ], "Nearest neighbour walk; two sigma-finite measures.")),
    ("A3", (_geometric_chain, [
        Param("b", Int(0), 1), Param("c", Int(1), 1), Param("alpha", Int(1), 2),
    ], "Chain with geometric eigenvector xi_n = alpha^-(n-1).")),
    ("A4", (_alternating_chain, [
        Param("b", Int(0), 0), Param("r", Int(1), 2),
        Param("alpha", Int(), 1), Param("beta", Int(), 0),
    ], "Chain with alternating drifts.")),
    ("A5", (_renewal, [], "Renewal matrix with the Perron value 2.")),
    ("A6", (_pair_renewal, [], "Renewal matrix with the Perron value 1+sqrt(2).")),
    ("A7", (_first_column, [
        Param("c", Coefficients, "1"), Param("tail", Int(0), 1),
    ], "Matrix with an infinite first column.")),
    ("NoMeasure", (_no_measure, [], "Diagram without tail-invariant measure.")),
    ("InfinitePerron", (_infinite_perron, [], "Matrix with infinite Perron value.")),
    ("Compressible", (_compressible, [], "Vershik map whose image misses a cylinder.")),
    ("ContinuousVershik", (_continuous_vershik, [], "Bounded-size diagram with a continuous Vershik map.")),
    ("UniformBand", (_uniform_band, [
        Param("t", Int(1), 2),
        Param("index_set", Choice("integers", "naturals"), "integers"),
    ], "All edges within the band of width t.")),
    ("IsomorphismPair", (_isomorphism_pair, [], "Diagram on the integers and its folded copy.")),
    ("SlantedThreeBand", (lambda: _label_diagram(
        "slanted_three_band", ["no-extreme-paths"],
    ), [], "Order with right-to-left slanted extreme edges.")),
    ("Alternating", (lambda: _label_diagram(
        "alternating", ["slanted-after-telescoping"],
    ), [], "Alternating level orders.")),
    ("Pinned", (lambda: _label_diagram(
        "pinned", ["forward-discontinuous", "inverse-discontinuous"],
    ), [], "Vertical extreme paths with a discontinuous Vershik map.")),
    ("ForwardContinuous", (lambda: _label_diagram(
        "forward_continuous", ["inverse-discontinuous"],
    ), [], "Vertical extreme paths; only the inverse is discontinuous.")),
])


def _parse_params(specs, params):
    params = dict(params or {})
    known = dict((spec.name, spec) for spec in specs)
    for name in params:
        if name not in known:
            raise ParamOutOfRange(name, params[name], "unknown parameter")
    result = OrderedDict()
    for spec in specs:
        value = params.get(spec.name, spec.default)
        try:
            result[spec.name] = spec.parser.parse(value)
        except ValueError as exc:
            raise ParamOutOfRange(spec.name, value, str(exc))
    return result


def get(ident, params=None):
    """ Build the catalog entry with validated parameters. """
    try:
        builder, specs, description = ENTRIES[ident]
    except KeyError:
        raise InvalidDiagram("Unknown catalog entry %r!" % ident)
    values = _parse_params(specs, params)
    built = builder(**values)
    diagram, oracle, extras = built[:3]
    order = built[3] if len(built) > 3 else LeftToRight(diagram)
    return CatalogEntry(
        ident, values, diagram, oracle, order, None, description, extras,
    )


def parse_reference(reference):
    """ Split 'catalog:ID?key=value&...' to the identifier and parameters. """
    prefix, separator, rest = reference.partition(":")
    if prefix != "catalog" or not separator:
        raise InvalidDiagram("Invalid catalog reference %r!" % reference)
    ident, _, query = rest.partition("?")
    return ident, OrderedDict(parse_qsl(query, keep_blank_values=True))


def resolve(reference):
    """ Catalog entry of a reference string. """
    return get(*parse_reference(reference))
