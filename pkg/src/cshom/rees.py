"""Rees matrix semigroups over a finite group with a sandwich matrix.

An instance holds a group G, row labels (the Lambda side), column labels
(the I side) and a rows x columns matrix of group elements.  Elements are
(column, group element, row) triples; the product of (i, g, l) and (j, h, m)
is (i, g * P[l][j] * h, m).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Optional, Sequence

from .errors import NotNormalized, UnknownLabel
from .graphs import EdgeColouredBipartiteGraph
from .groups import FiniteGroup, closure_indices

RowLabel = Hashable
ColLabel = Hashable

FULL_GRAPH_COLOUR = "*"


@dataclass(frozen=True)
class RmsElement:
    col: ColLabel
    element: Hashable
    row: RowLabel

    def __repr__(self) -> str:
        return f"({self.col}:{self.element}:{self.row})"


class SandwichMatrix:
    """A rows x columns matrix with entries in a fixed group."""

    __slots__ = ("group", "rows", "cols", "entries", "_row_pos", "_col_pos")

    def __init__(self, group: FiniteGroup, rows: Sequence[RowLabel],
                 cols: Sequence[ColLabel], entries: Sequence[Sequence[Hashable]]):
        self.group = group
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        if len(entries) != len(self.rows) or any(len(r) != len(self.cols) for r in entries):
            raise UnknownLabel("matrix shape does not match row/column labels")
        # stored as group element indices
        self.entries = tuple(tuple(group.index(x) for x in row) for row in entries)
        self._row_pos = {lab: i for i, lab in enumerate(self.rows)}
        self._col_pos = {lab: j for j, lab in enumerate(self.cols)}

    def row_pos(self, row: RowLabel) -> int:
        try:
            return self._row_pos[row]
        except KeyError:
            raise UnknownLabel(f"{row!r} is not a row label") from None

    def col_pos(self, col: ColLabel) -> int:
        try:
            return self._col_pos[col]
        except KeyError:
            raise UnknownLabel(f"{col!r} is not a column label") from None

    def entry(self, row: RowLabel, col: ColLabel) -> int:
        return self.entries[self.row_pos(row)][self.col_pos(col)]

    def entry_label(self, row: RowLabel, col: ColLabel) -> Hashable:
        return self.group.labels[self.entry(row, col)]


class ReesMatrixSemigroup:
    """M[G; columns, rows; P] with an optional distinguished all-identity cell.

    If some row and column consist entirely of the group identity, the first
    such pair (in declaration order) is recorded as `normalized_at`
    (column label, row label); an explicit pair may be supplied instead and
    is verified.
    """

    __slots__ = ("group", "matrix", "normalized_at")

    def __init__(self, group: FiniteGroup, matrix: SandwichMatrix,
                 normalized_at: Optional[tuple[ColLabel, RowLabel]] = None):
        if matrix.group is not group:
            raise UnknownLabel("matrix group does not match the semigroup group")
        self.group = group
        self.matrix = matrix
        if normalized_at is not None:
            col, row = normalized_at
            if not self._cell_is_identity(col, row):
                raise NotNormalized(
                    f"row {row!r} and column {col!r} are not identity-filled")
            self.normalized_at = (col, row)
        else:
            self.normalized_at = self._detect_normalization()

    @classmethod
    def from_rows(cls, group: FiniteGroup, entry_rows: Sequence[Sequence[Hashable]],
                  rows: Optional[Sequence[RowLabel]] = None,
                  cols: Optional[Sequence[ColLabel]] = None) -> "ReesMatrixSemigroup":
        nrows = len(entry_rows)
        ncols = len(entry_rows[0]) if entry_rows else 0
        rows = tuple(rows) if rows is not None else tuple(range(1, nrows + 1))
        cols = tuple(cols) if cols is not None else tuple(range(1, ncols + 1))
        return cls(group, SandwichMatrix(group, rows, cols, entry_rows))

    def _cell_is_identity(self, col: ColLabel, row: RowLabel) -> bool:
        e = self.group.identity
        m = self.matrix
        i = m.col_pos(col)
        l = m.row_pos(row)
        return (all(x == e for x in m.entries[l])
                and all(m.entries[k][i] == e for k in range(len(m.rows))))

    def _detect_normalization(self) -> Optional[tuple[ColLabel, RowLabel]]:
        e = self.group.identity
        m = self.matrix
        row = next((lab for k, lab in enumerate(m.rows)
                    if all(x == e for x in m.entries[k])), None)
        if row is None:
            return None
        col = next((lab for j, lab in enumerate(m.cols)
                    if all(m.entries[k][j] == e for k in range(len(m.rows)))), None)
        if col is None:
            return None
        return (col, row)

    # -- basic structure -------------------------------------------------

    @property
    def rows(self) -> tuple:
        return self.matrix.rows

    @property
    def cols(self) -> tuple:
        return self.matrix.cols

    @property
    def order(self) -> int:
        return len(self.rows) * len(self.cols) * self.group.order

    @property
    def is_normalized(self) -> bool:
        return self.normalized_at is not None

    def require_normalized(self) -> tuple[ColLabel, RowLabel]:
        if self.normalized_at is None:
            raise NotNormalized("no all-identity row/column pair")
        return self.normalized_at

    def elements(self) -> list[RmsElement]:
        return [RmsElement(i, self.group.labels[g], l)
                for i in self.cols for g in range(self.group.order) for l in self.rows]

    def check_element(self, x: RmsElement) -> None:
        self.matrix.col_pos(x.col)
        self.matrix.row_pos(x.row)
        self.group.index(x.element)

    def __repr__(self) -> str:
        return (f"ReesMatrixSemigroup(|G|={self.group.order}, "
                f"cols={len(self.cols)}, rows={len(self.rows)})")


def multiply(s: ReesMatrixSemigroup, x: RmsElement, y: RmsElement) -> RmsElement:
    s.check_element(x)
    s.check_element(y)
    g = s.group
    mid = g.mul(g.mul(g.index(x.element), s.matrix.entry(x.row, y.col)),
                g.index(y.element))
    return RmsElement(x.col, g.labels[mid], y.row)


def idempotent_at(s: ReesMatrixSemigroup, col: ColLabel, row: RowLabel) -> RmsElement:
    """The unique idempotent with the given coordinates: entry-inverse inside."""
    g = s.group
    return RmsElement(col, g.labels[g.inv(s.matrix.entry(row, col))], row)


def idempotents(s: ReesMatrixSemigroup) -> list[RmsElement]:
    return [idempotent_at(s, i, l) for i in s.cols for l in s.rows]


def normalize(s: ReesMatrixSemigroup, col: ColLabel, row: RowLabel):
    """Equivalent presentation whose given row and column are identity-filled.

    Returns (semigroup, morphism); the morphism is an isomorphism from `s`
    onto the result and is verified by the caller-facing validator.
    """
    from .morphisms import RmsMorphism  # local import to avoid a cycle

    g = s.group
    m = s.matrix
    l0 = m.row_pos(row)
    i0 = m.col_pos(col)
    base = m.entries[l0][i0]
    q_rows = []
    for l in range(len(m.rows)):
        q_rows.append([
            g.labels[g.mul(g.mul(base, g.inv(m.entries[l][i0])),
                           g.mul(m.entries[l][j], g.inv(m.entries[l0][j])))]
            for j in range(len(m.cols))])
    target = ReesMatrixSemigroup(
        g, SandwichMatrix(g, m.rows, m.cols, q_rows), normalized_at=(col, row))
    left = {c: g.labels[m.entries[l0][m.col_pos(c)]] for c in s.cols}
    right = {r: g.labels[g.mul(m.entries[m.row_pos(r)][i0], g.inv(base))]
             for r in s.rows}
    morphism = RmsMorphism(
        source=s, target=target,
        group_map=_identity_map(g),
        col_map={c: c for c in s.cols},
        row_map={r: r for r in s.rows},
        left_factor=left,
        right_factor=right,
    )
    report = morphism.validate()
    if not report.ok:
        raise AssertionError(f"normalization failed to validate at {report.failing_cell}")
    return target, morphism


def _identity_map(g: FiniteGroup):
    from .groups import GroupMorphism
    return GroupMorphism.identity(g)


def entry_group_data(s: ReesMatrixSemigroup):
    """Entry sets of the sandwich matrix.

    Returns (entry set, subgroup generated by it, column label -> column
    entry set, row label -> row entry set), all as label sets.
    """
    g = s.group
    m = s.matrix
    col_sets: dict = {}
    row_sets: dict = {}
    all_entries: set[int] = set()
    for l, rlab in enumerate(m.rows):
        row_sets[rlab] = frozenset(g.labels[x] for x in m.entries[l])
        all_entries.update(m.entries[l])
    for j, clab in enumerate(m.cols):
        col_sets[clab] = frozenset(g.labels[m.entries[l][j]] for l in range(len(m.rows)))
    entry_set = frozenset(g.labels[x] for x in all_entries)
    generated = frozenset(g.labels[x] for x in closure_indices(g, all_entries))
    return entry_set, generated, col_sets, row_sets


def idempotent_generated(s: ReesMatrixSemigroup) -> ReesMatrixSemigroup:
    """The subsemigroup generated by the idempotents, as a Rees matrix
    semigroup over the subgroup generated by the sandwich entries."""
    s.require_normalized()
    g = s.group
    _, generated, _, _ = entry_group_data(s)
    sub = g.subgroup_table(g.index(x) for x in generated)
    rows = [[g.labels[x] for x in row] for row in s.matrix.entries]
    return ReesMatrixSemigroup(
        sub, SandwichMatrix(sub, s.rows, s.cols, rows),
        normalized_at=s.normalized_at)


def induced_graphs(s: ReesMatrixSemigroup):
    """(complete monochromatic graph on rows x columns, entry-coloured graph
    on the non-distinguished rows and columns)."""
    col0, row0 = s.require_normalized()
    g = s.group
    full = EdgeColouredBipartiteGraph(
        left=s.rows, right=s.cols, colours=(FULL_GRAPH_COLOUR,),
        colour_of={(l, r): FULL_GRAPH_COLOUR for l in s.rows for r in s.cols})
    rows = [r for r in s.rows if r != row0]
    cols = [c for c in s.cols if c != col0]
    cmap = {(l, c): g.labels[s.matrix.entry(l, c)] for l in rows for c in cols}
    seen = []
    for l in rows:
        for c in cols:
            if cmap[(l, c)] not in seen:
                seen.append(cmap[(l, c)])
    entry_graph = EdgeColouredBipartiteGraph(tuple(rows), tuple(cols), tuple(seen), cmap)
    return full, entry_graph


def graph_of_matrix(matrix: SandwichMatrix,
                    drop: Optional[tuple[RowLabel, ColLabel]] = None
                    ) -> EdgeColouredBipartiteGraph:
    """The matrix as an entry-coloured bipartite graph (rows = left side),
    optionally dropping one row and one column."""
    rows = list(matrix.rows)
    cols = list(matrix.cols)
    if drop is not None:
        row, col = drop
        matrix.row_pos(row)
        matrix.col_pos(col)
        rows.remove(row)
        cols.remove(col)
    g = matrix.group
    cmap = {(l, c): g.labels[matrix.entry(l, c)] for l in rows for c in cols}
    seen = []
    for l in rows:
        for c in cols:
            if cmap[(l, c)] not in seen:
                seen.append(cmap[(l, c)])
    return EdgeColouredBipartiteGraph(tuple(rows), tuple(cols), tuple(seen), cmap)
