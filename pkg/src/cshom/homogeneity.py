"""Structural homogeneity deciders for finite completely simple semigroups.

Three routes, kept deliberately independent so they can cross-check each
other: the necessary-condition screen on the sandwich matrix, the
classification against the four finite pattern cases, and the
decomposition test (maximal subgroup + idempotent-generated part +
characteristic entry set).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import NotCompletelySimple, NotNormalized
from .groups import FiniteGroup, is_characteristic, is_subgroup
from .rees import ReesMatrixSemigroup, entry_group_data, idempotent_generated, normalize
from .search import Deadline, NO_DEADLINE
from .semigroups import (DEFAULT_SUBSEMIGROUP_CAP, FiniteSemigroup, from_rees,
                         is_completely_simple, is_homogeneous, rees_coordinatize)

FAILED_SCREEN = "FailedScreen"
GROUP_NOT_HOMOGENEOUS = "GroupNotHomogeneous"
GP_NOT_CHARACTERISTIC = "GPNotCharacteristic"
PATTERN_MISMATCH = "PatternMismatch"

PATTERN_ALL_IDENTITY = "AllIdentity"
PATTERN_SINGLE_CELL = "SingleNonIdentityCell"
PATTERN_INVERSE_PAIR_MATCHING = "InversePairMatching"
PATTERN_IDENTITY_MATCHING = "IdentityMatching"


@dataclass
class ScreenViolation:
    kind: str
    detail: tuple

    def __str__(self) -> str:
        return f"{self.kind}{self.detail}"


def screen_necessary(s: ReesMatrixSemigroup,
                     deadline: Deadline = NO_DEADLINE) -> list[ScreenViolation]:
    """Necessary conditions on the sandwich matrix of a normalized instance.

    (a) the entry set is closed under product and inverse; (b) every
    non-distinguished column and row realizes the whole entry set; (c) the
    entry set is characteristic in the group.  Returns the violations (empty
    means pass).
    """
    col0, row0 = s.require_normalized()
    g = s.group
    entry_set, _, col_sets, row_sets = entry_group_data(s)
    violations: list[ScreenViolation] = []
    idx = {g.index(x) for x in entry_set}
    for a in idx:
        if g.inv(a) not in idx:
            violations.append(ScreenViolation(
                "entry_set_not_closed", ("inverse", g.labels[a])))
            break
    closed = True
    for a in idx:
        for b in idx:
            if g.table[a][b] not in idx:
                violations.append(ScreenViolation(
                    "entry_set_not_closed", ("product", g.labels[a], g.labels[b])))
                closed = False
                break
        if not closed:
            break
    for i in s.cols:
        if i != col0 and col_sets[i] != entry_set:
            violations.append(ScreenViolation("column_entries_differ", (i,)))
    for l in s.rows:
        if l != row0 and row_sets[l] != entry_set:
            violations.append(ScreenViolation("row_entries_differ", (l,)))
    if closed and not any(v.kind == "entry_set_not_closed" for v in violations):
        ok, witness = is_characteristic(g, entry_set, deadline=deadline)
        if not ok:
            violations.append(ScreenViolation("entry_set_not_characteristic", (witness,)))
    return violations


@dataclass
class ClassificationOutcome:
    homogeneous: bool
    case: Optional[int] = None           # 1..4 when homogeneous
    reason: Optional[str] = None         # machine-readable when not
    normalization_used: Optional[tuple] = None  # (column, row)
    entry_set: tuple = ()
    entry_set_characteristic: Optional[bool] = None
    pattern: Optional[str] = None

    def verdict(self) -> str:
        if self.homogeneous:
            return f"Homogeneous(case {self.case})"
        return f"NotHomogeneous({self.reason})"


def _group_table_fingerprint(s: FiniteSemigroup) -> tuple:
    return (s.labels, s.table)


_HOMOGENEITY_MEMO: dict[tuple, bool] = {}


def table_homogeneous(s: FiniteSemigroup, cap: int = DEFAULT_SUBSEMIGROUP_CAP,
                      deadline: Deadline = NO_DEADLINE) -> bool:
    """Memoized brute-force homogeneity of a multiplication table."""
    key = _group_table_fingerprint(s)
    if key not in _HOMOGENEITY_MEMO:
        _HOMOGENEITY_MEMO[key] = is_homogeneous(s, cap=cap, deadline=deadline).homogeneous
    return _HOMOGENEITY_MEMO[key]


def group_homogeneous(g: FiniteGroup, deadline: Deadline = NO_DEADLINE) -> bool:
    """Brute-force homogeneity of a group via its Cayley table (subsemigroups
    of a finite group are exactly its subgroups)."""
    return table_homogeneous(FiniteSemigroup.from_group(g), deadline=deadline)


def _match_pattern(s: ReesMatrixSemigroup) -> Optional[tuple[int, str]]:
    """Which finite case the normalized matrix realizes, if any."""
    col0, row0 = s.require_normalized()
    g = s.group
    entry_set, _, _, _ = entry_group_data(s)
    e_label = g.labels[g.identity]
    rows = [r for r in s.rows if r != row0]
    cols = [c for c in s.cols if c != col0]
    sub = [[s.matrix.entry(l, c) for c in cols] for l in rows]
    if all(x == g.identity for row in sub for x in row) and len(entry_set) == 1:
        return 1, PATTERN_ALL_IDENTITY
    if len(entry_set) == 2:
        other = next(x for x in entry_set if x != e_label)
        a = g.index(other)
        if g.table[a][a] != g.identity:
            return None
        if len(s.rows) == len(s.cols) == 2:
            if sub == [[a]]:
                return 2, PATTERN_SINGLE_CELL
            return None
        if len(s.rows) == len(s.cols) == 4:
            if all(x in (g.identity, a) for row in sub for x in row) and \
                    _is_permutation_pattern(sub, g.identity):
                return 4, PATTERN_IDENTITY_MATCHING
            return None
        return None
    if len(entry_set) == 3 and len(s.rows) == len(s.cols) == 3:
        non_identity = sorted(g.index(x) for x in entry_set if x != e_label)
        if len(non_identity) != 2:
            return None
        a, b = non_identity
        if g.inv(a) != b or g.table[a][a] == g.identity:
            return None
        flat = {x for row in sub for x in row}
        if flat != {a, b}:
            return None
        if _is_permutation_pattern(sub, a) or _is_permutation_pattern(sub, b):
            return 3, PATTERN_INVERSE_PAIR_MATCHING
    return None


def _is_permutation_pattern(sub, value) -> bool:
    for row in sub:
        if sum(1 for x in row if x == value) != 1:
            return False
    n = len(sub)
    for j in range(len(sub[0])):
        if sum(1 for row in sub if row[j] == value) != 1:
            return False
    return len(sub) == len(sub[0])


def classify_homogeneous(s: Union[ReesMatrixSemigroup, FiniteSemigroup],
                         deadline: Deadline = NO_DEADLINE) -> ClassificationOutcome:
    """Decide homogeneity structurally, reporting the case or the reason.

    Tables are coordinatized first.  Pattern matching is attempted at every
    normalization cell; the first matching cell is recorded.
    """
    if isinstance(s, FiniteSemigroup):
        rms, _ = rees_coordinatize(s)
    else:
        rms = s
        if not is_completely_simple(from_rees(rms)[0]):
            raise NotCompletelySimple("input is not completely simple")

    cell0 = rms.normalized_at or (rms.cols[0], rms.rows[0])
    norm0 = rms if rms.normalized_at else normalize(rms, *cell0)[0]
    entry_set, _, _, _ = entry_group_data(norm0)
    g = norm0.group

    violations = screen_necessary(norm0, deadline=deadline)
    if any(v.kind in ("entry_set_not_closed", "column_entries_differ",
                      "row_entries_differ") for v in violations):
        return ClassificationOutcome(
            False, reason=FAILED_SCREEN, normalization_used=cell0,
            entry_set=tuple(sorted(map(str, entry_set))))
    characteristic = not any(v.kind == "entry_set_not_characteristic"
                             for v in violations)
    if not characteristic:
        return ClassificationOutcome(
            False, reason=GP_NOT_CHARACTERISTIC, normalization_used=cell0,
            entry_set=tuple(sorted(map(str, entry_set))),
            entry_set_characteristic=False)
    if not group_homogeneous(g, deadline=deadline):
        return ClassificationOutcome(
            False, reason=GROUP_NOT_HOMOGENEOUS, normalization_used=cell0,
            entry_set=tuple(sorted(map(str, entry_set))),
            entry_set_characteristic=True)

    for col in rms.cols:
        for row in rms.rows:
            deadline.check()
            candidate = rms if rms.normalized_at == (col, row) \
                else normalize(rms, col, row)[0]
            match = _match_pattern(candidate)
            if match is not None:
                case, pattern = match
                cand_entries, _, _, _ = entry_group_data(candidate)
                return ClassificationOutcome(
                    True, case=case, normalization_used=(col, row),
                    entry_set=tuple(sorted(map(str, cand_entries))),
                    entry_set_characteristic=True, pattern=pattern)
    return ClassificationOutcome(
        False, reason=PATTERN_MISMATCH, normalization_used=cell0,
        entry_set=tuple(sorted(map(str, entry_set))),
        entry_set_characteristic=True)


@dataclass
class DecompositionReport:
    group_homogeneous: bool
    idempotent_generated_homogeneous: bool
    entry_set_characteristic: bool

    @property
    def homogeneous(self) -> bool:
        return (self.group_homogeneous
                and self.idempotent_generated_homogeneous
                and self.entry_set_characteristic)


def decompose_check(s: ReesMatrixSemigroup,
                    deadline: Deadline = NO_DEADLINE) -> DecompositionReport:
    """The three-way decomposition: group homogeneous, idempotent-generated
    part homogeneous, entry set characteristic; homogeneity is their
    conjunction."""
    s.require_normalized()
    g = s.group
    flag_group = group_homogeneous(g, deadline=deadline)
    egen_table, _ = from_rees(idempotent_generated(s))
    flag_egen = table_homogeneous(egen_table, deadline=deadline)
    entry_set, _, _, _ = entry_group_data(s)
    if is_subgroup(g, entry_set):
        flag_char, _ = is_characteristic(g, entry_set, deadline=deadline)
    else:
        flag_char = False
    return DecompositionReport(flag_group, flag_egen, flag_char)


# -- the sweep --------------------------------------------------------------


@dataclass
class SweepRow:
    group_name: str
    n_cols: int
    n_rows: int
    inner_matrix: tuple  # entries of the non-distinguished block, as labels
    brute: bool
    classifier: bool
    case: Optional[int]
    decomposition: bool

    @property
    def agree(self) -> bool:
        return self.brute == self.classifier == self.decomposition


@dataclass
class SweepReport:
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def disagreements(self) -> list[SweepRow]:
        return [r for r in self.rows if not r.agree]


def small_groups(max_order: int) -> list[tuple[str, FiniteGroup]]:
    """All groups of order <= max_order up to isomorphism (supported to 6)."""
    if max_order > 6:
        raise ValueError("group catalog covers orders up to 6")
    catalog = [
        ("Z1", lambda: FiniteGroup.cyclic(1)),
        ("Z2", lambda: FiniteGroup.cyclic(2)),
        ("Z3", lambda: FiniteGroup.cyclic(3)),
        ("Z4", lambda: FiniteGroup.cyclic(4)),
        ("Z2xZ2", lambda: FiniteGroup.direct_product(
            FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))),
        ("Z5", lambda: FiniteGroup.cyclic(5)),
        ("Z6", lambda: FiniteGroup.cyclic(6)),
        ("S3", lambda: FiniteGroup.symmetric(3)),
    ]
    out = []
    for name, build in catalog:
        g = build()
        if g.order <= max_order:
            out.append((name, g))
    return out


def normalized_instances(group: FiniteGroup, n_cols: int, n_rows: int):
    """Every normalized sandwich matrix of the given shape over the group."""
    import itertools
    e = group.labels[group.identity]
    inner_cells = (n_rows - 1) * (n_cols - 1)
    for inner in itertools.product(group.labels, repeat=inner_cells):
        rows = [[e] * n_cols]
        k = 0
        for _ in range(n_rows - 1):
            row = [e]
            for _ in range(n_cols - 1):
                row.append(inner[k])
                k += 1
            rows.append(row)
        yield inner, ReesMatrixSemigroup.from_rows(group, rows)


def sweep(max_group_order: int, max_index: int,
          extra: tuple = (),
          cap: int = DEFAULT_SUBSEMIGROUP_CAP,
          deadline: Deadline = NO_DEADLINE,
          progress=None) -> SweepReport:
    """Compare the three verdicts on every normalized instance in the grid.

    `extra` adds (group order, max index) grids beyond the main one, e.g.
    ((4, 2),) appends all order-4 groups with indices up to 2.
    """
    grids = [(max_group_order, max_index, 1)] + \
        [(order, idx, order) for order, idx in extra]
    report = SweepReport()
    for order_cap, idx_cap, order_min in grids:
        for name, group in small_groups(order_cap):
            if group.order < order_min:
                continue
            for n_cols in range(1, idx_cap + 1):
                for n_rows in range(1, idx_cap + 1):
                    for inner, rms in normalized_instances(group, n_cols, n_rows):
                        deadline.check()
                        table, _ = from_rees(rms)
                        brute = table_homogeneous(table, cap=cap, deadline=deadline)
                        outcome = classify_homogeneous(rms, deadline=deadline)
                        decomp = decompose_check(rms, deadline=deadline)
                        row = SweepRow(name, n_cols, n_rows, inner, brute,
                                       outcome.homogeneous, outcome.case,
                                       decomp.homogeneous)
                        report.rows.append(row)
                        if progress is not None:
                            progress(row)
    return report


def acceptance_sweep(cap: int = DEFAULT_SUBSEMIGROUP_CAP,
                     deadline: Deadline = NO_DEADLINE, progress=None) -> SweepReport:
    """Groups of order up to 3 with indices up to 3, plus order-4 groups
    with indices up to 2."""
    return sweep(3, 3, extra=((4, 2),), cap=cap, deadline=deadline,
                 progress=progress)
