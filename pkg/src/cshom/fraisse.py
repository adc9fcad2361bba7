"""Bounded Fraïssé machinery: ages, joint embedding and amalgamation checks,
the completely-simple amalgam constructor, and generic Rees matrix growth.

Everything here works with finite structures only; witnesses are searched
within explicitly bounded samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Hashable, Optional, Sequence

from .errors import CoreMismatch, NoGroupAmalgamFound, NotASubgroup
from .graphs import k_generic_defects
from .groups import FiniteGroup, GroupMorphism, all_subgroups, closure_indices, \
    enumerate_group_morphisms, is_subgroup
from .morphisms import RmsMorphism
from .rees import ReesMatrixSemigroup, SandwichMatrix, graph_of_matrix
from .search import Deadline, NO_DEADLINE
from .semigroups import (DEFAULT_SUBSEMIGROUP_CAP, FiniteSemigroup,
                         all_subsemigroups, enumerate_homomorphisms,
                         enumerate_isomorphisms)


@dataclass
class AgeSample:
    """Pairwise non-isomorphic finite semigroups, up to a size bound."""
    bound: int
    members: list[FiniteSemigroup] = field(default_factory=list)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def age(s: FiniteSemigroup, bound: int, cap: int = DEFAULT_SUBSEMIGROUP_CAP,
        deadline: Deadline = NO_DEADLINE) -> AgeSample:
    """Isomorphism-class representatives of the subsemigroups of size <= bound."""
    sample = AgeSample(bound)
    for sub in all_subsemigroups(s, cap=cap, deadline=deadline):
        if len(sub) > bound:
            continue
        table = s.subtable([s.index(x) for x in sub])
        if not any(enumerate_isomorphisms(table, m, deadline=deadline)
                   for m in sample.members):
            sample.members.append(table)
    return sample


def sample_from_members(members: Sequence[FiniteSemigroup], bound: int,
                        deadline: Deadline = NO_DEADLINE) -> AgeSample:
    """An AgeSample from explicit members, dropping isomorphic duplicates."""
    sample = AgeSample(bound)
    for m in members:
        if m.order <= bound and not any(
                enumerate_isomorphisms(m, seen, deadline=deadline)
                for seen in sample.members):
            sample.members.append(m)
    return sample


@dataclass
class JepWitness:
    first: int
    second: int
    member: FiniteSemigroup
    embed_first: dict
    embed_second: dict


def check_jep(structures: Sequence[FiniteSemigroup], within: AgeSample,
              deadline: Deadline = NO_DEADLINE
              ) -> tuple[bool, list[JepWitness], Optional[tuple[int, int]]]:
    """Search a common extension for every pair.

    Returns (ok, witnesses, first failing pair or None).
    """
    witnesses = []
    for i, a in enumerate(structures):
        for j, b in enumerate(structures):
            if j < i:
                continue
            found = None
            for m in sorted(within.members, key=lambda t: t.order):
                deadline.check()
                if m.order < max(a.order, b.order):
                    continue
                fs = enumerate_homomorphisms(a, m, injective=True, deadline=deadline)
                if not fs:
                    continue
                gs = enumerate_homomorphisms(b, m, injective=True, deadline=deadline)
                if gs:
                    found = JepWitness(i, j, m, fs[0], gs[0])
                    break
            if found is None:
                return False, witnesses, (i, j)
            witnesses.append(found)
    return True, witnesses, None


@dataclass
class Amalgam:
    """A core with two wings and verified embeddings into each."""
    core: FiniteSemigroup
    wing1: FiniteSemigroup
    wing2: FiniteSemigroup
    into1: dict
    into2: dict

    def __post_init__(self):
        if self.core.order == 0:
            raise CoreMismatch("the core must be nonempty")
        for wing, emb in ((self.wing1, self.into1), (self.wing2, self.into2)):
            if not _is_embedding(self.core, wing, emb):
                raise CoreMismatch("a wing map is not an embedding")


def _is_embedding(a: FiniteSemigroup, b: FiniteSemigroup, mapping: dict) -> bool:
    if set(mapping) != set(a.labels):
        return False
    if len(set(mapping.values())) != a.order:
        return False
    try:
        img = [b.index(mapping[lab]) for lab in a.labels]
    except Exception:
        return False
    return all(img[a.table[x][y]] == b.table[img[x]][img[y]]
               for x in range(a.order) for y in range(a.order))


@dataclass
class ApWitness:
    member: FiniteSemigroup
    embed1: dict
    embed2: dict


def check_ap(amalgams: Sequence[Amalgam], within: AgeSample,
             deadline: Deadline = NO_DEADLINE
             ) -> tuple[bool, list[Optional[ApWitness]]]:
    """Search, for each amalgam, a member receiving both wings compatibly."""
    witnesses: list[Optional[ApWitness]] = []
    ok = True
    for am in amalgams:
        witnesses.append(_solve_amalgam(am, within, deadline))
        if witnesses[-1] is None:
            ok = False
    return ok, witnesses


def _solve_amalgam(am: Amalgam, within: AgeSample,
                   deadline: Deadline) -> Optional[ApWitness]:
    # wings may overlap beyond the core, so only max(|B1|, |B2|) is forced
    need = max(am.wing1.order, am.wing2.order)
    for m in sorted(within.members, key=lambda t: t.order):
        deadline.check()
        if m.order < need:
            continue
        for g1 in enumerate_homomorphisms(am.wing1, m, injective=True,
                                          deadline=deadline):
            partial = {am.into2[lab]: g1[am.into1[lab]] for lab in am.core.labels}
            g2s = enumerate_homomorphisms(am.wing2, m, injective=True,
                                          pinned=partial, limit=1,
                                          deadline=deadline)
            if g2s:
                return ApWitness(m, g1, g2s[0])
    return None


# -- completely simple amalgamation ----------------------------------------


@dataclass
class RmsAmalgam:
    """Wings sharing the core by label identity: common index labels carry
    the same sandwich entries, and all three share the normalization cell."""
    core: ReesMatrixSemigroup
    wing1: ReesMatrixSemigroup
    wing2: ReesMatrixSemigroup

    def __post_init__(self):
        cell = self.core.require_normalized()
        if self.wing1.require_normalized() != cell or \
                self.wing2.require_normalized() != cell:
            raise CoreMismatch("wings must share the core's normalization cell")
        core_cols = set(self.core.cols)
        core_rows = set(self.core.rows)
        overlap_cols = set(self.wing1.cols) & set(self.wing2.cols)
        overlap_rows = set(self.wing1.rows) & set(self.wing2.rows)
        if overlap_cols != core_cols or overlap_rows != core_rows:
            raise CoreMismatch("wing index overlaps must equal the core index sets")
        if not (core_cols <= set(self.wing1.cols) and core_rows <= set(self.wing1.rows)):
            raise CoreMismatch("core indices missing from a wing")
        for wing in (self.wing1, self.wing2):
            for l in self.core.rows:
                for i in self.core.cols:
                    if wing.group.labels[wing.matrix.entry(l, i)] != \
                            self.core.group.labels[self.core.matrix.entry(l, i)]:
                        raise CoreMismatch(f"wing entry at ({l}, {i}) differs from the core")


def amalgamate_cs(amalgam: RmsAmalgam, group: FiniteGroup, sub: frozenset,
                  group_amalgam_bound: int,
                  deadline: Deadline = NO_DEADLINE
                  ) -> tuple[ReesMatrixSemigroup, RmsMorphism, RmsMorphism]:
    """Amalgamate two completely simple wings over their shared core.

    The combined index sets are the label unions; a group receiving both wing
    groups compatibly is searched among the subgroups of `group` up to the
    bound, requiring the combined entry subgroup to embed into `sub`; the
    combined matrix takes wing entries through the embeddings and identity
    elsewhere.
    """
    if not is_subgroup(group, sub):
        raise NotASubgroup("the entry-set parameter must be a subgroup")
    w1, w2 = amalgam.wing1, amalgam.wing2
    core = amalgam.core
    g1, g2, g0 = w1.group, w2.group, core.group
    sub_idx = frozenset(group.index(x) for x in sub)
    entries1 = {x for row in w1.matrix.entries for x in row}
    entries2 = {x for row in w2.matrix.entries for x in row}

    result = _search_group_amalgam(g0, g1, g2, entries1, entries2, group,
                                   sub_idx, group_amalgam_bound, deadline)
    if result is None:
        raise NoGroupAmalgamFound(
            f"no subgroup of order <= {group_amalgam_bound} receives both wings")
    k_group, phi1, phi2 = result

    cols = list(w1.cols) + [c for c in w2.cols if c not in set(w1.cols)]
    rows = list(w1.rows) + [r for r in w2.rows if r not in set(w1.rows)]
    e = k_group.labels[k_group.identity]
    w1_cols, w1_rows = set(w1.cols), set(w1.rows)
    w2_cols, w2_rows = set(w2.cols), set(w2.rows)
    entry_rows = []
    for l in rows:
        row_out = []
        for c in cols:
            if l in w1_rows and c in w1_cols:
                row_out.append(k_group.labels[phi1(w1.matrix.entry(l, c))])
            elif l in w2_rows and c in w2_cols:
                row_out.append(k_group.labels[phi2(w2.matrix.entry(l, c))])
            else:
                row_out.append(e)
        entry_rows.append(row_out)
    combined = ReesMatrixSemigroup(
        k_group, SandwichMatrix(k_group, rows, cols, entry_rows),
        normalized_at=core.normalized_at)

    def embedding(wing, phi):
        m = RmsMorphism(
            source=wing, target=combined,
            group_map=GroupMorphism(wing.group, k_group,
                                    [phi(x) for x in range(wing.group.order)],
                                    validate=False),
            col_map={c: c for c in wing.cols},
            row_map={l: l for l in wing.rows},
            left_factor={c: e for c in wing.cols},
            right_factor={l: e for l in wing.rows})
        report = m.validate()
        if not report.ok:
            raise CoreMismatch(f"wing embedding failed at {report.failing_cell}")
        return m

    return combined, embedding(w1, phi1), embedding(w2, phi2)


def _search_group_amalgam(g0: FiniteGroup, g1: FiniteGroup, g2: FiniteGroup,
                          entries1: set, entries2: set,
                          ambient: FiniteGroup, sub_idx: frozenset,
                          bound: int, deadline: Deadline):
    """A subgroup of `ambient` receiving both wing groups, agreeing on the
    core labels, with the combined entry subgroup landing inside the chosen
    subgroup up to isomorphism."""
    core_labels = set(g0.labels)
    candidates = [s for s in all_subgroups(ambient) if len(s) <= bound]
    candidates.sort(key=lambda s: (len(s), sorted(map(str, s))))
    sub_group = ambient.subgroup_table(sub_idx)
    sub_subgroups = all_subgroups(sub_group)
    for members in candidates:
        deadline.check()
        k_group = ambient.subgroup_table(ambient.index(x) for x in members)
        for phi1 in enumerate_group_morphisms(g1, k_group, deadline=deadline):
            if len(set(phi1.images)) != g1.order:
                continue
            pinned = {lab: phi1(g1.index(lab)) for lab in core_labels}
            for phi2 in enumerate_group_morphisms(g2, k_group, deadline=deadline):
                if len(set(phi2.images)) != g2.order:
                    continue
                if any(phi2(g2.index(lab)) != img for lab, img in pinned.items()):
                    continue
                if _entry_subgroup_fits(k_group, phi1, phi2, entries1, entries2,
                                        sub_group, sub_subgroups, deadline):
                    return k_group, phi1, phi2
    return None


def _entry_subgroup_fits(k_group, phi1, phi2, entries1, entries2, sub_group,
                         sub_subgroups, deadline) -> bool:
    """Whether the subgroup generated by the images of both wings' sandwich
    entries is isomorphic to a subgroup of the target."""
    seeds = {phi1(x) for x in entries1} | {phi2(x) for x in entries2}
    generated = closure_indices(k_group, seeds)
    gen_group = k_group.subgroup_table(generated)
    for members in sub_subgroups:
        if len(members) != gen_group.order:
            continue
        other = sub_group.subgroup_table(sub_group.index(x) for x in members)
        if enumerate_group_morphisms(gen_group, other, bijective_only=True,
                                     deadline=deadline):
            return True
    return False


def random_cs_amalgams(group: FiniteGroup, sub: frozenset, count: int,
                       max_index: int, rng: random.Random) -> list[RmsAmalgam]:
    """Seeded random amalgams of normalized instances with entries in `sub`.

    Wings extend a shared random core; overlaps are by label identity with
    disjoint fresh labels elsewhere.
    """
    if not is_subgroup(group, sub):
        raise NotASubgroup("entry parameter must be a subgroup")
    sub_labels = sorted(map(str, sub))
    e = group.labels[group.identity]
    out = []
    for _ in range(count):
        core_cols = rng.randint(1, max_index)
        core_rows = rng.randint(1, max_index)

        def build(n_rows, n_cols, base_rows, base_cols, base_entries):
            rows = []
            for l in range(n_rows):
                row = []
                for c in range(n_cols):
                    if l == 0 or c == 0:
                        row.append(e)
                    elif l < base_rows and c < base_cols:
                        row.append(base_entries[l][c])
                    else:
                        row.append(rng.choice(sub_labels))
                rows.append(row)
            return rows

        core_entries = build(core_rows, core_cols, 0, 0, None)
        w1_rows = rng.randint(core_rows, max_index)
        w1_cols = rng.randint(core_cols, max_index)
        w2_rows = rng.randint(core_rows, max_index)
        w2_cols = rng.randint(core_cols, max_index)
        w1_entries = build(w1_rows, w1_cols, core_rows, core_cols, core_entries)
        w2_entries = build(w2_rows, w2_cols, core_rows, core_cols, core_entries)

        def labels(n, shared, prefix):
            return [k + 1 if k < shared else f"{prefix}{k + 1}" for k in range(n)]

        core = ReesMatrixSemigroup.from_rows(group, core_entries)
        wing1 = ReesMatrixSemigroup.from_rows(
            group, w1_entries, rows=labels(w1_rows, core_rows, "r1_"),
            cols=labels(w1_cols, core_cols, "c1_"))
        wing2 = ReesMatrixSemigroup.from_rows(
            group, w2_entries, rows=labels(w2_rows, core_rows, "r2_"),
            cols=labels(w2_cols, core_cols, "c2_"))
        out.append(RmsAmalgam(core, wing1, wing2))
    return out


# -- bounded generic growth --------------------------------------------------


def grow_generic_rms(group: FiniteGroup, sub: frozenset, level: int,
                     seed: Optional[ReesMatrixSemigroup] = None,
                     passes: int = 1) -> ReesMatrixSemigroup:
    """Grow a normalized instance whose entry set is `sub` and whose reduced
    entry graph witnesses every level-bounded colour constraint.

    Each pass clears all defects over the vertex set present at pass start,
    adding witness columns for row constraints and witness rows for column
    constraints; fresh vertices are identity-filled and then topped up with
    any missing colours so every row and column realizes the whole entry
    set.  Stops early when a pass finds nothing to do, so an already
    satisfying seed is returned unchanged.
    """
    if not is_subgroup(group, sub):
        raise NotASubgroup("the colour set must be a subgroup of the group")
    e = group.labels[group.identity]
    colours = [e] + [x for _, x in sorted((str(x), x) for x in sub if x != e)]

    if seed is None:
        rms = ReesMatrixSemigroup.from_rows(group, [[e, e], [e, e]])
    else:
        seed_entries, _, _, _ = _entry_data(seed)
        if not seed_entries <= set(sub):
            raise NotASubgroup("seed entries must lie inside the colour subgroup")
        rms = seed
    col0, row0 = rms.require_normalized()

    rows = list(rms.rows)
    cols = list(rms.cols)
    entries = {(l, c): group.labels[rms.matrix.entry(l, c)]
               for l in rows for c in cols}
    if len(sub) > 1 and (len(rows) < 2 or len(cols) < 2):
        _bootstrap(rows, cols, entries, e)

    changed_any = False
    for _ in range(max(passes, 1)):
        changed = _clear_defects(rows, cols, entries, row0, col0, colours, level, e)
        changed_any = changed_any or changed
        if not changed:
            break
    changed_any |= _complete_colours(rows, cols, entries, row0, col0, colours, e)

    if not changed_any and seed is not None:
        return seed
    entry_rows = [[entries[(l, c)] for c in cols] for l in rows]
    return ReesMatrixSemigroup(
        group, SandwichMatrix(group, rows, cols, entry_rows),
        normalized_at=(col0, row0))


def _entry_data(s: ReesMatrixSemigroup):
    from .rees import entry_group_data
    return entry_group_data(s)


def _bootstrap(rows, cols, entries, e):
    if len(rows) < 2:
        new = _fresh_label("l", rows, cols)
        for c in cols:
            entries[(new, c)] = e
        rows.append(new)
    if len(cols) < 2:
        new = _fresh_label("c", rows, cols)
        for l in rows:
            entries[(l, new)] = e
        cols.append(new)


def _fresh_label(prefix, rows, cols):
    taken = set(rows) | set(cols)
    k = 0
    while f"{prefix}{k}" in taken:
        k += 1
    return f"{prefix}{k}"


def _clear_defects(rows, cols, entries, row0, col0, colours, level, e) -> bool:
    """One pass over the current reduced graph; returns whether anything grew."""
    import itertools as it

    inner_rows = [l for l in rows if l != row0]
    inner_cols = [c for c in cols if c != col0]
    changed = False

    def add_column(assignment):
        nonlocal changed
        new = _fresh_label("c", rows, cols)
        fill = dict(assignment)
        missing = [x for x in colours if x not in set(fill.values()) | {e}]
        for l in rows:
            if l == row0:
                entries[(l, new)] = e
            elif l in fill:
                entries[(l, new)] = fill[l]
            elif missing:
                entries[(l, new)] = missing.pop(0)
            else:
                entries[(l, new)] = e
        cols.append(new)
        inner_cols.append(new)
        changed = True

    def add_row(assignment):
        nonlocal changed
        new = _fresh_label("l", rows, cols)
        fill = dict(assignment)
        missing = [x for x in colours if x not in set(fill.values()) | {e}]
        for c in cols:
            if c == col0:
                entries[(new, c)] = e
            elif c in fill:
                entries[(new, c)] = fill[c]
            elif missing:
                entries[(new, c)] = missing.pop(0)
            else:
                entries[(new, c)] = e
        rows.append(new)
        inner_rows.append(new)
        changed = True

    start_rows = list(inner_rows)
    start_cols = list(inner_cols)
    for k in range(1, level + 1):
        for subset in it.combinations(start_rows, k):
            for values in it.product(colours, repeat=k):
                if not any(all(entries[(l, c)] == v for l, v in zip(subset, values))
                           for c in inner_cols):
                    add_column(list(zip(subset, values)))
        for subset in it.combinations(start_cols, k):
            for values in it.product(colours, repeat=k):
                if not any(all(entries[(l, c)] == v for c, v in zip(subset, values))
                           for l in inner_rows):
                    add_row(list(zip(subset, values)))
    return changed


def _complete_colours(rows, cols, entries, row0, col0, colours, e) -> bool:
    """Top up rows/columns until each realizes every colour.

    Completion vertices assign one missing colour per deficient line and
    self-complete on the remaining positions; additions are monotone, so at
    most len(colours) rounds per side are needed.
    """
    if len(colours) == 1:
        return False
    changed = False

    def missing_of_row(l):
        have = {entries[(l, c)] for c in cols if c != col0} | {e}
        return [x for x in colours if x not in have]

    def missing_of_col(c):
        have = {entries[(l, c)] for l in rows if l != row0} | {e}
        return [x for x in colours if x not in have]

    # enough positions for a fresh line to realize every colour by itself
    while len(rows) - 1 < len(colours):
        new = _fresh_label("l", rows, cols)
        for c in cols:
            entries[(new, c)] = e
        rows.append(new)
        changed = True
    while len(cols) - 1 < len(colours):
        new = _fresh_label("c", rows, cols)
        for l in rows:
            entries[(l, new)] = e
        cols.append(new)
        changed = True

    for _ in range(len(colours)):
        deficient = {l: missing_of_row(l) for l in rows if l != row0}
        deficient = {l: m for l, m in deficient.items() if m}
        if not deficient:
            break
        new = _fresh_label("c", rows, cols)
        own = [x for x in colours if x != e]
        values = {}
        for l in rows:
            if l == row0:
                values[l] = e
            elif l in deficient:
                values[l] = deficient[l][0]
        for l in rows:
            if l in values:
                continue
            values[l] = own.pop(0) if own else e
        placed = set(values.values())
        for l in rows:
            own = [x for x in colours if x not in placed]
            if not own:
                break
        for l, v in values.items():
            entries[(l, new)] = v
        cols.append(new)
        changed = True

    for _ in range(len(colours)):
        deficient = {c: missing_of_col(c) for c in cols if c != col0}
        deficient = {c: m for c, m in deficient.items() if m}
        if not deficient:
            break
        new = _fresh_label("l", rows, cols)
        own = [x for x in colours if x != e]
        values = {}
        for c in cols:
            if c == col0:
                values[c] = e
            elif c in deficient:
                values[c] = deficient[c][0]
        for c in cols:
            if c in values:
                continue
            values[c] = own.pop(0) if own else e
        for c, v in values.items():
            entries[(new, c)] = v
        rows.append(new)
        changed = True
    return changed


def reduced_graph_defects(s: ReesMatrixSemigroup, sub: frozenset, level: int):
    """Defect report of the reduced entry graph against the given colours."""
    col0, row0 = s.require_normalized()
    graph = graph_of_matrix(s.matrix, drop=(row0, col0))
    e = s.group.labels[s.group.identity]
    colours = [e] + [x for x in sorted(map(str, sub)) if x != e]
    # preserve actual label objects
    lookup = {str(x): x for x in sub}
    colour_list = [lookup.get(c, c) for c in colours]
    return k_generic_defects(graph, colour_list, level)
