"""Line-oriented workspace files declaring groups, semigroups, Rees matrix
semigroups and coloured bipartite graphs.

Grammar (whitespace-separated tokens, `#` starts a comment):

    group NAME          semigroup NAME        rms NAME           graph NAME
    elements TOK...     elements TOK...       group GROUPNAME    colours TOK...
    table               table                 I n                left n
    <|G| rows>          <rows>                L m                right m
    end                 end                   matrix             matrix
                                              <m rows of n>      <n rows of m>
                                              end                end

Group and semigroup table row g lists the products g*h in element order.
Rees matrices are indexed rows-by-columns (row = L side); declarations must
precede use.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (DuplicateName, NotAGroup, NotAssociative, ParseError,
                     UnresolvedReference)
from .graphs import EdgeColouredBipartiteGraph
from .groups import FiniteGroup
from .rees import ReesMatrixSemigroup, SandwichMatrix
from .semigroups import FiniteSemigroup


@dataclass
class Workspace:
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    semigroups: dict[str, FiniteSemigroup] = field(default_factory=dict)
    rms: dict[str, ReesMatrixSemigroup] = field(default_factory=dict)
    rms_group_names: dict[str, str] = field(default_factory=dict)
    graphs: dict[str, EdgeColouredBipartiteGraph] = field(default_factory=dict)


class _Lines:
    def __init__(self, text: str):
        self.rows = []
        for number, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if body:
                self.rows.append((number, body.split()))
        self.pos = 0

    def peek(self):
        return self.rows[self.pos] if self.pos < len(self.rows) else None

    def take(self):
        row = self.peek()
        if row is None:
            raise ParseError(self.last_line() + 1, "unexpected end of input")
        self.pos += 1
        return row

    def last_line(self) -> int:
        return self.rows[-1][0] if self.rows else 0


def parse(text: str) -> Workspace:
    ws = Workspace()
    lines = _Lines(text)
    while lines.peek() is not None:
        number, tokens = lines.take()
        kind = tokens[0]
        if kind not in ("group", "semigroup", "rms", "graph"):
            raise ParseError(number, f"unknown declaration {kind!r}")
        if len(tokens) != 2:
            raise ParseError(number, f"{kind} declaration needs exactly one name")
        name = tokens[1]
        if kind == "group":
            _check_fresh(ws.groups, name, number)
            ws.groups[name] = _parse_group(lines, number)
        elif kind == "semigroup":
            _check_fresh(ws.semigroups, name, number)
            ws.semigroups[name] = _parse_semigroup(lines, number)
        elif kind == "rms":
            _check_fresh(ws.rms, name, number)
            ws.rms[name], ws.rms_group_names[name] = _parse_rms(lines, ws, number)
        else:
            _check_fresh(ws.graphs, name, number)
            ws.graphs[name] = _parse_graph(lines, number)
    return ws


def _check_fresh(table: dict, name: str, number: int) -> None:
    if name in table:
        raise DuplicateName(f"line {number}: {name!r} is already declared")


def _expect(lines: _Lines, keyword: str):
    number, tokens = lines.take()
    if tokens[0] != keyword:
        raise ParseError(number, f"expected {keyword!r}, found {tokens[0]!r}")
    return number, tokens


def _parse_table_rows(lines: _Lines, count: int, width: int):
    rows = []
    for _ in range(count):
        number, tokens = lines.take()
        if len(tokens) != width:
            raise ParseError(number, f"expected {width} entries, found {len(tokens)}")
        rows.append(tokens)
    _expect(lines, "end")
    return rows


def _parse_group(lines: _Lines, start: int) -> FiniteGroup:
    _, tokens = _expect(lines, "elements")
    labels = tokens[1:]
    if not labels:
        raise ParseError(start, "a group needs at least one element")
    _expect(lines, "table")
    rows = _parse_table_rows(lines, len(labels), len(labels))
    try:
        return FiniteGroup.from_label_table(labels, rows)
    except NotAGroup as exc:
        raise ParseError(start, f"not a group table: {exc}") from None


def _parse_semigroup(lines: _Lines, start: int) -> FiniteSemigroup:
    _, tokens = _expect(lines, "elements")
    labels = tokens[1:]
    if not labels:
        raise ParseError(start, "a semigroup needs at least one element")
    _expect(lines, "table")
    rows = _parse_table_rows(lines, len(labels), len(labels))
    try:
        return FiniteSemigroup.from_label_table(labels, rows)
    except NotAssociative as exc:
        raise ParseError(start, str(exc)) from None
    except Exception as exc:
        raise ParseError(start, f"bad semigroup table: {exc}") from None


def _int_field(lines: _Lines, keyword: str) -> int:
    number, tokens = _expect(lines, keyword)
    if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
        raise ParseError(number, f"{keyword} needs a positive integer")
    return int(tokens[1])


def _parse_rms(lines: _Lines, ws: Workspace, start: int):
    number, tokens = _expect(lines, "group")
    if len(tokens) != 2:
        raise ParseError(number, "group reference needs exactly one name")
    gname = tokens[1]
    if gname not in ws.groups:
        raise UnresolvedReference(f"line {number}: group {gname!r} is not declared")
    group = ws.groups[gname]
    n_cols = _int_field(lines, "I")
    n_rows = _int_field(lines, "L")
    number, tokens = _expect(lines, "matrix")
    rows = _parse_table_rows(lines, n_rows, n_cols)
    try:
        matrix = SandwichMatrix(group, tuple(range(1, n_rows + 1)),
                                tuple(range(1, n_cols + 1)), rows)
    except Exception as exc:
        raise ParseError(number, f"bad matrix entry: {exc}") from None
    return ReesMatrixSemigroup(group, matrix), gname


def _parse_graph(lines: _Lines, start: int) -> EdgeColouredBipartiteGraph:
    _, tokens = _expect(lines, "colours")
    colours = tokens[1:]
    if not colours:
        raise ParseError(start, "a graph needs at least one colour")
    n_left = _int_field(lines, "left")
    n_right = _int_field(lines, "right")
    number, tokens = _expect(lines, "matrix")
    rows = _parse_table_rows(lines, n_left, n_right)
    for row in rows:
        for c in row:
            if c not in colours:
                raise ParseError(number, f"colour {c!r} is not declared")
    return EdgeColouredBipartiteGraph.from_rows(rows, colours=colours)


def serialize(ws: Workspace) -> str:
    out: list[str] = []
    for name, g in ws.groups.items():
        out.append(f"group {name}")
        out.append("elements " + " ".join(str(x) for x in g.labels))
        out.append("table")
        for a in range(g.order):
            out.append(" ".join(str(g.labels[g.table[a][b]]) for b in range(g.order)))
        out.append("end")
    for name, s in ws.semigroups.items():
        out.append(f"semigroup {name}")
        out.append("elements " + " ".join(str(x) for x in s.labels))
        out.append("table")
        for a in range(s.order):
            out.append(" ".join(str(s.labels[s.table[a][b]]) for b in range(s.order)))
        out.append("end")
    for name, rms in ws.rms.items():
        out.append(f"rms {name}")
        out.append(f"group {ws.rms_group_names[name]}")
        out.append(f"I {len(rms.cols)}")
        out.append(f"L {len(rms.rows)}")
        out.append("matrix")
        g = rms.group
        for row in rms.matrix.entries:
            out.append(" ".join(str(g.labels[x]) for x in row))
        out.append("end")
    for name, graph in ws.graphs.items():
        out.append(f"graph {name}")
        out.append("colours " + " ".join(str(c) for c in graph.colours))
        out.append(f"left {len(graph.left)}")
        out.append(f"right {len(graph.right)}")
        out.append("matrix")
        for row in graph.rows():
            out.append(" ".join(str(c) for c in row))
        out.append("end")
    return "\n".join(out) + "\n"
