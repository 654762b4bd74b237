#-------------------------------------------------------------------------------
#
# Countably-infinite non-negative integer matrices and exact windowed algebra.
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
# pylint: disable=too-many-arguments,too-few-public-methods

from collections import namedtuple, defaultdict, OrderedDict
from functools import reduce
from math import gcd
from logging import getLogger
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path
from bratteli.errors import (
    ConfigError, InvalidDiagram, ColumnSupportUnbounded, RowSupportUnbounded,
    NoReturnFound,
)
from bratteli.util.config import CONFIG

LOGGER = getLogger(__name__)


class IndexSet(namedtuple("IndexSet", ["name", "lower"])):
    """ Vertex index set shared by all levels of a diagram.
    The lower bound is None for the two-sided (integer) index set.
    """
    __slots__ = ()

    def contains(self, vertex):
        """ True if the vertex belongs to the index set. """
        return self.lower is None or vertex >= self.lower

    @property
    def anchor(self):
        """ Distinguished vertex (0 or the lower bound). """
        return 0 if self.lower is None else self.lower

    def window(self, lo, hi):
        """ Create a window validated against the index set. """
        window = Window(lo, hi)
        if not self.contains(window.lo):
            raise ConfigError(
                "Window %s starts below the %s index set!" % (window, self.name)
            )
        return window

    def default_window(self, half_width):
        """ Symmetric window around 0 or a window starting at the bound. """
        if self.lower is None:
            return Window(-half_width, half_width)
        return Window(self.lower, self.lower + 2 * half_width)


INTEGERS = IndexSet("integers", None)
NATURALS = IndexSet("naturals", 1)
NATURALS0 = IndexSet("naturals0", 0)

INDEX_SETS = OrderedDict(
    (item.name, item) for item in (INTEGERS, NATURALS, NATURALS0)
)


class Window(namedtuple("Window", ["lo", "hi"])):
    """ Inclusive range of vertex indices. """
    __slots__ = ()

    def __new__(cls, lo, hi):
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise ConfigError("Invalid window %d:%d!" % (lo, hi))
        return super(Window, cls).__new__(cls, lo, hi)

    def __str__(self):
        return "%d:%d" % (self.lo, self.hi)

    @classmethod
    def parse(cls, text):
        """ Parse the LO:HI notation. """
        try:
            lo, hi = text.split(":")
            return cls(int(lo), int(hi))
        except ValueError:
            raise ConfigError("Invalid window %r! LO:HI expected." % text)

    @property
    def size(self):
        """ Number of vertices. """
        return self.hi - self.lo + 1

    def vertices(self):
        """ Iterate the vertices in ascending order. """
        return range(self.lo, self.hi + 1)

    def contains(self, vertex):
        """ True if the vertex lies inside the window. """
        return self.lo <= vertex <= self.hi

    def pad(self, width, index_set=INTEGERS):
        """ Extend the window on both sides, clipped by the index set. """
        lo = self.lo - width
        if index_set.lower is not None:
            lo = max(lo, index_set.lower)
        return Window(lo, self.hi + width)

    def interior(self, width, index_set=INTEGERS):
        """ Drop a boundary ring. The lower bound of a one-sided index set
        is a true boundary and is kept. Returns None if nothing remains.
        """
        lo = self.lo if self.lo == index_set.lower else self.lo + width
        hi = self.hi - width
        return Window(lo, hi) if lo <= hi else None


class BandSpec(namedtuple("BandSpec", ["t", "L"])):
    """ Bounded-size parameters; t and L map a level to a positive integer.
    Every source of an edge ending at v of level n+1 lies within
    v - t(n) .. v + t(n) and no vertex receives more than L(n) edges.
    """
    __slots__ = ()

    @classmethod
    def uniform(cls, t, L):
        """ Level independent band. """
        # pylint: disable=invalid-name
        return cls(lambda level: t, lambda level: L)

    def width(self, start, stop):
        """ Sum of t(n) for start <= n < stop. """
        return sum(self.t(level) for level in range(start, stop))

    def count_bound(self, start, stop):
        """ Product of L(n) for start <= n < stop. """
        return reduce(
            lambda acc, level: acc * self.L(level), range(start, stop), 1
        )


def callable_name(func):
    """ Importable 'module:name' of a module-level callable or None. """
    module = getattr(func, "__module__", None)
    name = getattr(func, "__qualname__", None)
    if not module or not name or "<" in name:
        return None
    return "%s:%s" % (module, name)


class InfiniteNonnegMatrix(object):
    """ Lazily evaluated countably-infinite non-negative integer matrix.

    The entry a(w, v) counts the edges leaving the vertex w of a level
    and ending at the vertex v of the next level (A = F^T). Columns
    list the incoming edges and are finite for every incidence matrix.
    Computed columns and complete rows are memoized.
    """
    finite_columns = True
    finite_rows = True
    # largest |v - w| of a non-zero entry, None if not bounded
    reach = None

    def __init__(self, index_set):
        self.index_set = index_set
        self._columns = {}
        self._rows = {}

    @property
    def descriptor(self):
        """ JSON serializable description or None. """
        return None

    def entry(self, row, col):
        """ Single matrix entry. """
        if not (self.index_set.contains(row) and self.index_set.contains(col)):
            return 0
        return self._entry(row, col)

    def column(self, col):
        """ Complete support of a column as a sorted list of (row, value). """
        try:
            return self._columns[col]
        except KeyError:
            pass
        if not self.index_set.contains(col):
            return []
        entries = _collect(self._column(col), self.index_set)
        self._columns[col] = entries
        return entries

    def row(self, row, window=None):
        """ Non-zero entries of a row inside the window and a flag telling
        whether the row has any support outside of the window.
        Without a window the complete row is returned.
        """
        if window is None and row in self._rows:
            return self._rows[row], False
        if not self.index_set.contains(row):
            return [], False
        entries, exceeds = self._row(row, window)
        entries = _collect(entries, self.index_set)
        if window is None:
            if exceeds:
                raise RowSupportUnbounded(row)
            self._rows[row] = entries
            return entries, False
        inside = [(col, val) for col, val in entries if window.contains(col)]
        return inside, exceeds or len(inside) < len(entries)

    def column_sum(self, col):
        """ Number of edges ending at the vertex. """
        return sum(value for _, value in self.column(col))

    def _entry(self, row, col):
        return dict(self.column(col)).get(row, 0)

    def _column(self, col):
        raise NotImplementedError

    def _row(self, row, window):
        """ Default row scan through the bounded reach or the window. """
        if self.reach is not None:
            cols = range(row - self.reach, row + self.reach + 1)
            return [(col, self.entry(row, col)) for col in cols], False
        if window is None:
            raise RowSupportUnbounded(row)
        # support outside of the window cannot be excluded
        return [(col, self.entry(row, col)) for col in window.vertices()], True


def _collect(entries, index_set):
    """ Merge entries to a sorted list of positive (index, value) pairs. """
    merged = defaultdict(int)
    for index, value in entries:
        if value < 0:
            raise InvalidDiagram(
                "Negative matrix entry %s at index %s!" % (value, index)
            )
        if value and index_set.contains(index):
            merged[index] += value
    return sorted(merged.items())


def evaluate_rule(rule, index):
    """ Evaluate a per-offset entry rule for the given row index.

    A rule is an integer, a callable or a piecewise object with the keys
    'rows' (explicit values), 'negative' (index < 0), 'even', 'odd',
    'linear' ([slope, intercept]) and 'default', tried in this order.
    """
    if callable(rule):
        return rule(index)
    if not isinstance(rule, dict):
        return rule
    rows = rule.get("rows", {})
    if index in rows:
        return rows[index]
    if index < 0 and "negative" in rule:
        return rule["negative"]
    parity = "odd" if index % 2 else "even"
    if parity in rule:
        return rule[parity]
    if "linear" in rule:
        slope, intercept = rule["linear"]
        return slope * index + intercept
    return rule.get("default", 0)


def _normalize_rule(rule):
    if callable(rule) or isinstance(rule, int):
        return rule
    rule = dict(rule)
    if "rows" in rule:
        rule["rows"] = dict(
            (int(key), value) for key, value in rule["rows"].items()
        )
    return rule


def _dump_rule(rule):
    if callable(rule):
        name = callable_name(rule)
        return None if name is None else {"rule": name}
    if isinstance(rule, dict) and "rows" in rule:
        rule = dict(rule)
        rule["rows"] = OrderedDict(
            (str(key), value) for key, value in sorted(rule["rows"].items())
        )
    return rule


class BandedMatrix(InfiniteNonnegMatrix):
    """ Matrix supported on finitely many diagonals.

    The entries are given per offset col - row by rules evaluated
    at the row index (see evaluate_rule).
    """

    def __init__(self, entries, index_set=INTEGERS):
        super(BandedMatrix, self).__init__(index_set)
        if not entries:
            raise InvalidDiagram("Banded matrix without offsets!")
        self.entries = OrderedDict(
            (int(offset), _normalize_rule(rule))
            for offset, rule in sorted(entries.items(), key=lambda i: int(i[0]))
        )
        self.offsets = list(self.entries)
        self.reach = max(abs(offset) for offset in self.offsets)

    @property
    def descriptor(self):
        entries = OrderedDict()
        for offset, rule in self.entries.items():
            rule = _dump_rule(rule)
            if rule is None:
                return None
            entries[str(offset)] = rule
        return OrderedDict([
            ("kind", "banded"),
            ("index_set", self.index_set.name),
            ("entries", entries),
        ])

    def _value(self, offset, row):
        value = evaluate_rule(self.entries[offset], row)
        if value < 0:
            raise InvalidDiagram(
                "Negative entry %s at offset %d of row %d!" % (
                    value, offset, row
                )
            )
        return value

    def _entry(self, row, col):
        offset = col - row
        if offset not in self.entries:
            return 0
        return self._value(offset, row)

    def _column(self, col):
        return [
            (col - offset, self._value(offset, col - offset))
            for offset in self.offsets
            if self.index_set.contains(col - offset)
        ]

    def _row(self, row, window):
        return [
            (row + offset, self._value(offset, row))
            for offset in self.offsets
        ], False


SEGMENT_KINDS = ("row", "column", "offset", "entry")


class PatternMatrix(InfiniteNonnegMatrix):
    """ Matrix assembled from closed-form support segments.

    Segments (the values of overlapping segments add up):
        {"row": r, "from": c, "step": s, "value": x}
            a(r, c + k*s) = x for k >= 0 (an infinite row)
        {"column": c, "from": r, "values": [x0, x1, ...], "tail": y}
            a(r + k, c) = x_k, followed by y (a non-zero tail makes
            the column infinite)
        {"offset": d, "from": r, "value": x}
            a(i, i + d) = x for i >= r
        {"entry": [r, c], "value": x}
    """

    def __init__(self, segments, index_set=NATURALS):
        super(PatternMatrix, self).__init__(index_set)
        self.segments = [self._normalize(item) for item in segments]
        if not self.segments:
            raise InvalidDiagram("Pattern matrix without segments!")
        kinds = [item["kind"] for item in self.segments]
        self.finite_rows = "row" not in kinds
        self.finite_columns = not any(
            item["kind"] == "column" and item["tail"] for item in self.segments
        )
        # infinite rows or columns have no bounded reach
        self.reach = None
        if self.finite_rows and self.finite_columns:
            distances = [0]
            for item in self.segments:
                if item["kind"] == "offset":
                    distances.append(abs(item["offset"]))
                elif item["kind"] == "entry":
                    distances.append(abs(item["entry"][1] - item["entry"][0]))
                elif item["kind"] == "column":
                    distances.extend(
                        abs(item["column"] - item["from"] - idx)
                        for idx in range(len(item["values"]))
                    )
            self.reach = max(distances)

    def _normalize(self, segment):
        kinds = [kind for kind in SEGMENT_KINDS if kind in segment]
        if len(kinds) != 1:
            raise InvalidDiagram("Ambiguous matrix segment %r!" % (segment,))
        item = dict(segment, kind=kinds[0])
        item.setdefault("from", self.index_set.anchor)
        if item["kind"] == "row":
            item.setdefault("step", 1)
            if item["step"] < 1:
                raise InvalidDiagram("Invalid row segment step %r!" % (
                    item["step"],
                ))
        elif item["kind"] == "column":
            item["values"] = list(item.get("values", ()))
            item.setdefault("tail", 0)
        elif item["kind"] == "entry":
            item["entry"] = tuple(item["entry"])
        return item

    @property
    def descriptor(self):
        segments = []
        for item in self.segments:
            item = dict(item)
            del item["kind"]
            if "entry" in item:
                item["entry"] = list(item["entry"])
                del item["from"]
            segments.append(OrderedDict(sorted(item.items())))
        return OrderedDict([
            ("kind", "rows"),
            ("index_set", self.index_set.name),
            ("segments", segments),
        ])

    def _entry(self, row, col):
        return sum(
            value for _, value in self._segment_row(row, Window(col, col))[0]
        )

    def _column(self, col):
        entries = []
        for item in self.segments:
            kind = item["kind"]
            if kind == "row":
                if col >= item["from"] and (col - item["from"]) % item["step"] == 0:
                    entries.append((item["row"], item["value"]))
            elif kind == "column":
                if col == item["column"]:
                    if item["tail"]:
                        raise ColumnSupportUnbounded(col)
                    entries.extend(
                        (item["from"] + idx, value)
                        for idx, value in enumerate(item["values"])
                    )
            elif kind == "offset":
                if col - item["offset"] >= item["from"]:
                    entries.append((col - item["offset"], item["value"]))
            elif item["entry"][1] == col:
                entries.append((item["entry"][0], item["value"]))
        return entries

    def _segment_row(self, row, window):
        entries, exceeds = [], False
        for item in self.segments:
            kind = item["kind"]
            if kind == "row":
                if row != item["row"]:
                    continue
                if window is None:
                    return entries, True
                exceeds = True
                entries.extend(
                    (col, item["value"]) for col in window.vertices()
                    if col >= item["from"]
                    and (col - item["from"]) % item["step"] == 0
                )
            elif kind == "column":
                idx = row - item["from"]
                if idx >= 0:
                    values = item["values"]
                    value = values[idx] if idx < len(values) else item["tail"]
                    entries.append((item["column"], value))
            elif kind == "offset":
                if row >= item["from"]:
                    entries.append((row + item["offset"], item["value"]))
            elif item["entry"][0] == row:
                entries.append((item["entry"][1], item["value"]))
        return entries, exceeds

    def _row(self, row, window):
        return self._segment_row(row, window)


class ColumnRuleMatrix(InfiniteNonnegMatrix):
    """ Matrix defined by a column rule returning (row, value) pairs. """

    def __init__(self, column_rule, index_set=NATURALS, reach=None,
                 row_rule=None):
        super(ColumnRuleMatrix, self).__init__(index_set)
        self.column_rule = column_rule
        self.row_rule = row_rule
        self.reach = reach

    @property
    def descriptor(self):
        name = callable_name(self.column_rule)
        if name is None or self.row_rule is not None:
            return None
        return OrderedDict([
            ("kind", "columns"),
            ("index_set", self.index_set.name),
            ("reach", self.reach),
            ("rule", name),
        ])

    def _column(self, col):
        return self.column_rule(col)

    def _row(self, row, window):
        if self.row_rule is not None:
            return self.row_rule(row, window)
        return super(ColumnRuleMatrix, self)._row(row, window)


class IncomingTable(object):
    """ Ordered incoming edges per target vertex.

    A rule applies either to a single vertex ({"vertex": v, ...}) or to
    all vertices from a bound on ({"from": v, ...}); the rule with the
    greatest applicable bound wins. The "incoming" list gives the edges
    in ascending order; each item names its source absolutely
    ({"source": w}) or relative to the target ({"offset": d}) and may
    fix the copy index ("copy"), otherwise copies of the same source are
    numbered in the order of appearance.
    """

    def __init__(self, rules, index_set=NATURALS):
        self.index_set = index_set
        self.rules = list(rules)
        self.pinned = {}
        self.ranges = []
        for rule in self.rules:
            items = [dict(item) for item in rule["incoming"]]
            if not items:
                raise InvalidDiagram("Empty incoming edge list %r!" % (rule,))
            if "vertex" in rule:
                self.pinned[rule["vertex"]] = items
            elif "from" in rule:
                self.ranges.append((rule["from"], items))
            else:
                raise InvalidDiagram("Rule %r lacks 'vertex' or 'from'!" % (
                    rule,
                ))
        self.ranges.sort(key=lambda item: item[0])
        self._cache = {}

    @property
    def reach(self):
        """ Largest |source - target| of the relative and pinned items. """
        reach = 0
        for vertex, items in self.pinned.items():
            for item in items:
                source = item.get("source", vertex + item.get("offset", 0))
                reach = max(reach, abs(source - vertex))
        for _, items in self.ranges:
            for item in items:
                if "offset" in item:
                    reach = max(reach, abs(item["offset"]))
        return reach

    @property
    def absolute_sources(self):
        """ (source, from) pairs of sources shared by infinitely many
        targets, i.e., the infinite rows of the matrix.
        """
        return [
            (item["source"], start) for start, items in self.ranges
            for item in items if "source" in item
        ]

    def incoming(self, vertex):
        """ Ordered (source, copy) pairs of the edges ending at the vertex. """
        try:
            return self._cache[vertex]
        except KeyError:
            pass
        items = self.pinned.get(vertex)
        if items is None:
            for start, candidate in self.ranges:
                if start <= vertex:
                    items = candidate
        if items is None:
            raise InvalidDiagram("No incoming edges defined for vertex %s!" % (
                vertex,
            ))
        edges, counts = [], defaultdict(int)
        for item in items:
            source = item["source"] if "source" in item else (
                vertex + item["offset"]
            )
            if not self.index_set.contains(source):
                raise InvalidDiagram("Source %s of vertex %s out of range!" % (
                    source, vertex
                ))
            copy = item.get("copy", counts[source])
            counts[source] += 1
            edges.append((source, copy))
        for source, count in counts.items():
            copies = sorted(copy for src, copy in edges if src == source)
            if copies != list(range(count)):
                raise InvalidDiagram(
                    "Invalid copy indices %s of the edges %s -> %s!" % (
                        copies, source, vertex
                    )
                )
        self._cache[vertex] = edges
        return edges


class LabelTableMatrix(InfiniteNonnegMatrix):
    """ Incidence matrix read off an incoming edge table. """

    def __init__(self, table):
        super(LabelTableMatrix, self).__init__(table.index_set)
        self.table = table
        self.finite_rows = not table.absolute_sources
        self.reach = table.reach if self.finite_rows else None

    @property
    def descriptor(self):
        return OrderedDict([
            ("kind", "labels"),
            ("index_set", self.index_set.name),
            ("table", self.table.rules),
        ])

    def _column(self, col):
        return [(source, 1) for source, _ in self.table.incoming(col)]

    def _row(self, row, window):
        reach = self.table.reach
        cols = set(range(row - reach, row + reach + 1))
        cols.update(self.table.pinned)
        exceeds = False
        for source, start in self.table.absolute_sources:
            if source == row:
                if window is None:
                    return [], True
                exceeds = True
                cols.update(col for col in window.vertices() if col >= start)
        cols = [col for col in cols if self.index_set.contains(col)]
        return [(col, self.entry(row, col)) for col in sorted(cols)], exceeds


class ProductMatrix(InfiniteNonnegMatrix):
    """ Product of consecutive incidence matrices (a telescoped level).
    The entries count the paths across all the factor levels.
    """

    def __init__(self, factors):
        if not factors:
            raise InvalidDiagram("Empty matrix product!")
        super(ProductMatrix, self).__init__(factors[0].index_set)
        self.factors = list(factors)
        self.finite_columns = all(item.finite_columns for item in factors)
        self.finite_rows = all(item.finite_rows for item in factors)
        reaches = [item.reach for item in factors]
        self.reach = None if None in reaches else sum(reaches)

    @property
    def descriptor(self):
        factors = [item.descriptor for item in self.factors]
        if None in factors:
            return None
        return OrderedDict([("kind", "product"), ("factors", factors)])

    def _entry(self, row, col):
        if self.finite_columns:
            return dict(self.column(col)).get(row, 0)
        return forward_counts(self.factors, row).get(col, 0)

    def _column(self, col):
        return backward_counts(self.factors, col).items()

    def _row(self, row, window):
        if self.finite_rows:
            return forward_counts(self.factors, row).items(), False
        return super(ProductMatrix, self)._row(row, window)


class TransposedMatrix(InfiniteNonnegMatrix):
    """ Transposed view of a matrix (rows and columns swapped). """

    def __init__(self, matrix):
        super(TransposedMatrix, self).__init__(matrix.index_set)
        self.matrix = matrix
        self.finite_columns = matrix.finite_rows
        self.finite_rows = matrix.finite_columns
        self.reach = matrix.reach

    @property
    def descriptor(self):
        inner = self.matrix.descriptor
        if inner is None:
            return None
        return OrderedDict([("kind", "transpose"), ("matrix", inner)])

    def _entry(self, row, col):
        return self.matrix.entry(col, row)

    def _column(self, col):
        try:
            return self.matrix.row(col)[0]
        except RowSupportUnbounded:
            raise ColumnSupportUnbounded(col)

    def _row(self, row, window):
        if self.matrix.finite_columns:
            return self.matrix.column(row), False
        if window is None:
            raise RowSupportUnbounded(row)
        return [
            (col, self.matrix.entry(col, row)) for col in window.vertices()
        ], True


class IncidenceSequence(object):
    """ Incidence matrices A_n = F_n^T of the consecutive levels.

    The matrices of the first levels are listed explicitly, the rest is
    produced by a level rule. Stationary sequences repeat one matrix.
    """

    def __init__(self, prefix=(), rule=None, stationary=False):
        self.prefix = list(prefix)
        self.rule = rule
        self.stationary = stationary
        self._cache = {}
        if not self.prefix and rule is None:
            raise InvalidDiagram("Empty incidence sequence!")

    @classmethod
    def constant(cls, matrix):
        """ Stationary sequence of a single matrix. """
        return cls(rule=lambda level: matrix, stationary=True)

    @property
    def index_set(self):
        """ Index set shared by all levels. """
        return self.matrix(0).index_set

    def matrix(self, level):
        """ Incidence matrix between the levels n and n+1. """
        if level < 0:
            raise ValueError("Negative level %d!" % level)
        if level < len(self.prefix):
            return self.prefix[level]
        if self.rule is None:
            raise InvalidDiagram("Level %d beyond the explicit prefix!" % level)
        try:
            return self._cache[level]
        except KeyError:
            matrix = self._cache[level] = self.rule(level)
            return matrix

    def factors(self, start, stop):
        """ Matrices of the levels start .. stop-1. """
        return [self.matrix(level) for level in range(start, stop)]


def _step_backward(matrix, layer, window=None):
    result = defaultdict(int)
    for col, count in layer.items():
        for row, value in matrix.column(col):
            if window is None or window.contains(row):
                result[row] += value * count
    return result


def _step_forward(matrix, layer, window=None):
    result = defaultdict(int)
    for row, count in layer.items():
        for col, value in matrix.row(row, window)[0]:
            result[col] += value * count
    return result


def backward_counts(factors, target, window=None):
    """ Count the paths ending at the target vertex of the last level.
    Returns a dictionary mapping the start vertices to the path counts.
    """
    layer = {target: 1}
    for matrix in reversed(factors):
        layer = _step_backward(matrix, layer, window)
    return dict(layer)


def forward_counts(factors, source, window=None):
    """ Count the paths leaving the source vertex of the first level.
    Requires finite rows (or a window restricting the rows).
    """
    layer = {source: 1}
    for matrix in factors:
        layer = _step_forward(matrix, layer, window)
    return dict(layer)


def row_entries(matrix, row, window):
    """ Non-zero entries of the row inside the window plus the flag
    telling whether the row has support outside of the window.
    """
    return matrix.row(row, window)


def column_entries(matrix, col):
    """ Complete finite support of the column. """
    return matrix.column(col)


def power_entry(matrix, n, source, target):
    """ Exact entry of the n-th matrix power.

    Computed target-backward through the finite columns. Matrices
    certifying finite rows only are evaluated source-forward.
    """
    if n < 0:
        raise ValueError("Negative matrix power %d!" % n)
    if n == 0:
        return int(source == target)
    if matrix.finite_columns:
        return backward_counts([matrix] * n, target).get(source, 0)
    if matrix.finite_rows:
        return forward_counts([matrix] * n, source).get(target, 0)
    raise ColumnSupportUnbounded(target)


def return_sequence(matrix, vertex, n_max, window=None, logger=None):
    """ Returns a^(n)_vv for n = 1 .. n_max in a single sweep.
    Optionally restricted to the paths staying inside the window.
    """
    logger = logger or LOGGER
    if matrix.finite_columns:
        step = _step_backward
    elif matrix.finite_rows:
        step = _step_forward
    else:
        raise ColumnSupportUnbounded(vertex)
    layer, sequence = {vertex: 1}, []
    for _ in range(n_max):
        layer = step(matrix, layer, window)
        sequence.append(layer.get(vertex, 0))
    logger.debug(
        "Return sequence of vertex %s computed up to n=%d (%d vertices).",
        vertex, n_max, len(layer)
    )
    return sequence


def truncate(matrix, window, dtype=object):
    """ Dense restriction of the matrix to the window. """
    size = window.size
    result = np.zeros((size, size), dtype=dtype)
    if matrix.finite_columns:
        for col in window.vertices():
            for row, value in matrix.column(col):
                if window.contains(row):
                    result[row - window.lo, col - window.lo] = value
    else:
        for row in window.vertices():
            for col, value in matrix.row(row, window)[0]:
                result[row - window.lo, col - window.lo] = value
    return result


def telescope(sequence, cuts):
    """ Telescope the incidence sequence.

    The cuts are an increasing list of levels starting with 0, a
    callable mapping k to n_k, or an integer step (n_k = k*step).
    The level k of the result is the product of the levels
    n_k .. n_{k+1}-1. Identity cuts return the original sequence.
    """
    if isinstance(cuts, int):
        if cuts < 1:
            raise InvalidDiagram("Invalid telescoping step %d!" % cuts)
        if cuts == 1:
            return sequence
        step = cuts
        cut = lambda k: k * step
        finite = None
    elif callable(cuts):
        cut, finite = cuts, None
    else:
        cuts = list(cuts)
        if not cuts or cuts[0] != 0 or any(
                lo >= hi for lo, hi in zip(cuts[:-1], cuts[1:])):
            raise InvalidDiagram(
                "Cuts must increase strictly from 0! %s" % (cuts,)
            )
        if cuts == list(range(len(cuts))):
            return sequence
        cut, finite = cuts.__getitem__, len(cuts) - 1

    if sequence.stationary and isinstance(cuts, int):
        product = ProductMatrix(sequence.factors(0, cuts))
        return IncidenceSequence.constant(product)

    def _rule(level):
        if finite is not None and level >= finite:
            raise InvalidDiagram(
                "Level %d beyond the telescoping cuts!" % level
            )
        return ProductMatrix(sequence.factors(cut(level), cut(level + 1)))

    return IncidenceSequence(rule=_rule)


def period(matrix, vertex, n_max):
    """ Greatest common divisor of the witnessed return times. """
    returns = [
        n for n, count in enumerate(return_sequence(matrix, vertex, n_max), 1)
        if count > 0
    ]
    if not returns:
        raise NoReturnFound(vertex, n_max)
    return reduce(gcd, returns)


IrreducibleOnWindow = namedtuple("IrreducibleOnWindow", ["window", "path_bound"])
NotConnected = namedtuple("NotConnected", ["source", "target"])


def irreducible_on_window(matrix, window, path_bound):
    """ Strong connectivity of the window vertices through paths of length
    at most path_bound staying inside the window padded by the reach.
    """
    padded = window.pad(path_bound * (matrix.reach or 0), matrix.index_set)
    adjacency = csr_matrix(truncate(matrix, padded, dtype=float) > 0)
    distances = shortest_path(adjacency, directed=True, unweighted=True)
    start = window.lo - padded.lo
    block = distances[start:start + window.size, start:start + window.size]
    failures = np.argwhere(block > path_bound)
    if failures.size:
        row, col = failures[0]
        return NotConnected(window.lo + int(row), window.lo + int(col))
    return IrreducibleOnWindow(window, path_bound)


def band_violations(matrix, band, level, window):
    """ Vertices of the window breaking the bounded-size conditions.
    Returns a list of (vertex, reason) pairs.
    """
    width, limit = band.t(level), band.L(level)
    violations = []
    for vertex in window.vertices():
        column = matrix.column(vertex)
        sources = [row for row, _ in column]
        if any(abs(source - vertex) > width for source in sources):
            violations.append((vertex, "source outside of the band"))
        if matrix.column_sum(vertex) > limit:
            violations.append((vertex, "more than %d incoming edges" % limit))
        for source in (vertex - width, vertex + width):
            if matrix.index_set.contains(source) and source not in sources:
                violations.append((vertex, "no edge from %d" % source))
    return violations


def zero_lines(matrix, window):
    """ Rows and columns of the window without any non-zero entry. """
    result = []
    for vertex in window.vertices():
        if not matrix.column(vertex):
            result.append(("column", vertex))
        entries, exceeds = matrix.row(vertex, window.pad(
            matrix.reach or 0, matrix.index_set
        ))
        if not entries and not exceeds:
            result.append(("row", vertex))
    return result


def local_reach(matrix):
    """ Bound of |target - source| used to pad windows and to search
    edges near a vertex. Falls back to the configured window for
    matrices without a bounded reach.
    """
    if matrix.reach is not None:
        return matrix.reach
    table = getattr(matrix, "table", None)
    if table is not None:
        return table.reach
    return CONFIG.window
