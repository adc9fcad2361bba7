"""Abstract finite semigroups as multiplication tables.

Provides closure and subsemigroup enumeration, idempotent structure, Green's
relations, the completely-simple test with Rees coordinatization, generic
isomorphism search and the brute-force homogeneity decider.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional, Sequence

from .errors import CapExceeded, NotAssociative, NotCompletelySimple, UnknownElement
from .groups import FiniteGroup
from .rees import ReesMatrixSemigroup, RmsElement, SandwichMatrix
from .search import (Deadline, NO_DEADLINE, element_orders, enumerate_table_homs,
                     refine_profiles)

Label = Hashable

DEFAULT_SUBSEMIGROUP_CAP = 2_000_000


class FiniteSemigroup:
    """A semigroup presented by its multiplication table."""

    __slots__ = ("labels", "table", "_index", "_green", "_profiles")

    def __init__(self, labels: Sequence[Label], table: Sequence[Sequence[int]],
                 validate: bool = True):
        self.labels = tuple(labels)
        self.table = tuple(tuple(row) for row in table)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise UnknownElement("duplicate element labels")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise UnknownElement("table shape does not match element count")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._green = None
        self._profiles = None
        if validate:
            self.check_associative()

    def check_associative(self) -> None:
        t = self.table
        n = len(t)
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = ta[b]
                tb = t[b]
                for c in range(n):
                    if t[tab][c] != ta[tb[c]]:
                        raise NotAssociative(
                            (self.labels[a], self.labels[b], self.labels[c]))

    @classmethod
    def from_label_table(cls, labels: Sequence[Label],
                         rows: Sequence[Sequence[Label]],
                         validate: bool = True) -> "FiniteSemigroup":
        idx = {lab: i for i, lab in enumerate(labels)}
        try:
            table = [[idx[x] for x in row] for row in rows]
        except KeyError as exc:
            raise UnknownElement(
                f"table entry {exc.args[0]!r} is not a declared element") from None
        return cls(labels, table, validate=validate)

    @classmethod
    def from_group(cls, group: FiniteGroup) -> "FiniteSemigroup":
        return cls(group.labels, group.table, validate=False)

    @property
    def order(self) -> int:
        return len(self.labels)

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"{label!r} is not an element") from None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def subtable(self, members: Sequence[int]) -> "FiniteSemigroup":
        """The subsemigroup on `members` as its own table (must be closed)."""
        sub = sorted(members)
        pos = {x: i for i, x in enumerate(sub)}
        table = [[pos[self.table[a][b]] for b in sub] for a in sub]
        return FiniteSemigroup([self.labels[x] for x in sub], table, validate=False)

    def profiles(self) -> tuple:
        """Canonical isomorphism-invariant element profiles."""
        if self._profiles is None:
            green = self.green()
            orders = element_orders(self.table)
            n = self.order
            rsz = [0] * n
            lsz = [0] * n
            hsz = [0] * n
            for cls_ in green.r_classes:
                for x in cls_:
                    rsz[x] = len(cls_)
            for cls_ in green.l_classes:
                for x in cls_:
                    lsz[x] = len(cls_)
            for cls_ in green.h_classes:
                for x in cls_:
                    hsz[x] = len(cls_)
            initial = [
                (int(self.table[x][x] == x), orders[x], rsz[x], lsz[x], hsz[x])
                for x in range(n)]
            self._profiles = refine_profiles(self.table, initial)
        return self._profiles

    def green(self) -> "GreenData":
        if self._green is None:
            self._green = _compute_green(self)
        return self._green

    def __repr__(self) -> str:
        return f"FiniteSemigroup(order={self.order})"


@dataclass
class GreenData:
    """Green's relations: class partitions plus the right divisibility preorder."""
    r_classes: tuple[tuple[int, ...], ...]
    l_classes: tuple[tuple[int, ...], ...]
    h_classes: tuple[tuple[int, ...], ...]
    r_preorder: frozenset[tuple[int, int]]  # (a, b) with a <=_R b


def _compute_green(s: FiniteSemigroup) -> GreenData:
    n = s.order
    t = s.table
    right = [set(t[b]) | {b} for b in range(n)]  # principal right ideals
    left = [{t[x][b] for x in range(n)} | {b} for b in range(n)]
    r_pre = frozenset((a, b) for b in range(n) for a in right[b])

    def classes(ideals):
        cls_of = [-1] * n
        out = []
        for a in range(n):
            if cls_of[a] >= 0:
                continue
            members = tuple(sorted(
                b for b in range(n)
                if b in ideals[a] and a in ideals[b]))
            for m in members:
                cls_of[m] = len(out)
            out.append(members)
        return tuple(out)

    r_classes = classes(right)
    l_classes = classes(left)
    h_of = {}
    for rc in r_classes:
        rset = set(rc)
        for lc in l_classes:
            inter = tuple(sorted(rset & set(lc)))
            if inter:
                h_of[inter] = None
    return GreenData(r_classes, l_classes, tuple(sorted(h_of)), r_pre)


# -- closure and subsemigroups ------------------------------------------


def closure(s: FiniteSemigroup, seed: Iterable[Label]) -> frozenset[Label]:
    """Smallest product-closed superset; the empty seed yields the empty set."""
    idx = [s.index(x) for x in seed]
    return frozenset(s.labels[i] for i in closure_indices(s.table, idx))


def closure_indices(table, seed: Iterable[int]) -> frozenset[int]:
    members = set(seed)
    elems = list(members)
    k = 0
    while k < len(elems):
        x = elems[k]
        for y in elems[:k + 1]:
            for z in (table[x][y], table[y][x]):
                if z not in members:
                    members.add(z)
                    elems.append(z)
        k += 1
    return frozenset(members)


def all_subsemigroups(s: FiniteSemigroup, cap: int = DEFAULT_SUBSEMIGROUP_CAP,
                      deadline: Deadline = NO_DEADLINE) -> list[frozenset[Label]]:
    """Every nonempty product-closed subset, each exactly once."""
    found = _subsemigroup_index_sets(s, cap, deadline)
    out = [frozenset(s.labels[i] for i in sub) for sub in found]
    return sorted(out, key=lambda t: (len(t), sorted(map(str, t))))


def _subsemigroup_index_sets(s: FiniteSemigroup, cap: int,
                             deadline: Deadline) -> list[frozenset[int]]:
    table = s.table
    n = s.order
    found: set[frozenset[int]] = set()
    queue: list[frozenset[int]] = []

    def register(c: frozenset[int]) -> None:
        if c not in found:
            if len(found) >= cap:
                raise CapExceeded(len(found))
            found.add(c)
            queue.append(c)

    for x in range(n):
        register(closure_indices(table, [x]))
    while queue:
        deadline.check()
        base = queue.pop()
        base_list = list(base)
        for x in range(n):
            if x not in base:
                register(closure_indices(table, base_list + [x]))
    return sorted(found, key=lambda c: (len(c), sorted(c)))


# -- idempotents and structural predicates -------------------------------


@dataclass
class IdempotentStructure:
    idempotents: tuple[Label, ...]
    natural_order: frozenset[tuple[Label, Label]]  # (e, f) with e <= f
    primitive: tuple[Label, ...]


def idempotent_structure(s: FiniteSemigroup) -> IdempotentStructure:
    """Idempotents, their natural order (e <= f iff ef = fe = e) and the
    minimal (primitive) ones."""
    t = s.table
    idem = [x for x in range(s.order) if t[x][x] == x]
    order = {(e, f) for e in idem for f in idem
             if t[e][f] == e and t[f][e] == e}
    primitive = [e for e in idem
                 if not any(f != e and (f, e) in order for f in idem)]
    return IdempotentStructure(
        tuple(s.labels[e] for e in idem),
        frozenset((s.labels[e], s.labels[f]) for e, f in order),
        tuple(s.labels[e] for e in primitive))


def is_regular(s: FiniteSemigroup) -> bool:
    t = s.table
    n = s.order
    return all(any(t[t[x][y]][x] == x for y in range(n)) for x in range(n))


def is_completely_simple(s: FiniteSemigroup) -> bool:
    """No proper two-sided ideal, and some idempotent is primitive."""
    t = s.table
    n = s.order
    full = set(range(n))
    for x in range(n):
        ideal = {x}
        ideal.update(t[x])
        ideal.update(t[y][x] for y in range(n))
        for y in range(n):
            ideal.update(t[t[y][x]])
        if ideal != full:
            return False
    return bool(idempotent_structure(s).primitive)


# -- Rees coordinatization ------------------------------------------------


def rees_coordinatize(s: FiniteSemigroup):
    """A Rees matrix presentation of a completely simple semigroup.

    Columns index the R-classes, rows the L-classes, and the group is the
    H-class of the first idempotent.  Returns (rms, mapping) where mapping
    sends each RmsElement to the corresponding label of `s`; it is verified
    to be an isomorphism.
    """
    if not is_completely_simple(s):
        raise NotCompletelySimple("input has a proper ideal or no primitive idempotent")
    t = s.table
    green = s.green()
    idem = [x for x in range(s.order) if t[x][x] == x]
    e = idem[0]
    r_of = {}
    l_of = {}
    for k, cls_ in enumerate(green.r_classes):
        for x in cls_:
            r_of[x] = k
    for k, cls_ in enumerate(green.l_classes):
        for x in cls_:
            l_of[x] = k
    i0, l0 = r_of[e], l_of[e]
    group_members = sorted(x for x in range(s.order)
                           if r_of[x] == i0 and l_of[x] == l0)
    pos = {x: i for i, x in enumerate(group_members)}
    gtable = [[pos[t[a][b]] for b in group_members] for a in group_members]
    group = FiniteGroup([s.labels[x] for x in group_members], gtable, validate=False)

    col_reps = []  # one representative per R-class, inside the L-class of e
    for k, cls_ in enumerate(green.r_classes):
        if k == i0:
            col_reps.append(e)
        else:
            col_reps.append(next(x for x in cls_ if l_of[x] == l0))
    row_reps = []
    for k, cls_ in enumerate(green.l_classes):
        if k == l0:
            row_reps.append(e)
        else:
            row_reps.append(next(x for x in cls_ if r_of[x] == i0))

    cols = tuple(range(1, len(col_reps) + 1))
    rows = tuple(range(1, len(row_reps) + 1))
    entry_rows = [[s.labels[t[rrep][crep]] for crep in col_reps]
                  for rrep in row_reps]
    rms = ReesMatrixSemigroup(group, SandwichMatrix(group, rows, cols, entry_rows))

    mapping = {}
    for ci, crep in enumerate(col_reps):
        for g in group_members:
            cg = t[crep][g]
            for ri, rrep in enumerate(row_reps):
                elt = RmsElement(cols[ci], s.labels[g], rows[ri])
                mapping[elt] = s.labels[t[cg][rrep]]
    _verify_coordinatization(s, rms, mapping)
    return rms, mapping


def _verify_coordinatization(s: FiniteSemigroup, rms: ReesMatrixSemigroup,
                             mapping: dict) -> None:
    from .rees import multiply
    if len(mapping) != s.order or len(set(mapping.values())) != s.order:
        raise NotCompletelySimple("coordinatization is not bijective")
    elems = rms.elements()
    for x in elems:
        for y in elems:
            lhs = mapping[multiply(rms, x, y)]
            rhs = s.labels[s.table[s.index(mapping[x])][s.index(mapping[y])]]
            if lhs != rhs:
                raise NotCompletelySimple("coordinatization failed verification")


def from_rees(s: ReesMatrixSemigroup):
    """The multiplication table of a Rees matrix semigroup.

    Returns (semigroup, element list) with element k of the table equal to
    the k-th RmsElement in the list; labels are 'col:element:row' strings.
    """
    elems = s.elements()
    labels = [f"{e.col}:{e.element}:{e.row}" for e in elems]
    if len(set(labels)) != len(labels):
        labels = [f"e{k}" for k in range(len(elems))]
    g = s.group
    ng = g.order
    nrows = len(s.rows)
    gidx = {lab: k for k, lab in enumerate(g.labels)}
    row_pos = {lab: k for k, lab in enumerate(s.rows)}
    col_pos = {lab: k for k, lab in enumerate(s.cols)}
    entries = s.matrix.entries

    def code(e: RmsElement) -> int:
        return (col_pos[e.col] * ng + gidx[e.element]) * nrows + row_pos[e.row]

    order = [code(e) for e in elems]
    lookup = {c: k for k, c in enumerate(order)}
    table = []
    for x in elems:
        gx = gidx[x.element]
        lx = row_pos[x.row]
        cx = col_pos[x.col]
        row_out = []
        for y in elems:
            mid = g.table[g.table[gx][entries[lx][col_pos[y.col]]]][gidx[y.element]]
            row_out.append(lookup[(cx * ng + mid) * nrows + row_pos[y.row]])
        table.append(row_out)
    return FiniteSemigroup(labels, table, validate=False), elems


# -- isomorphisms and homomorphisms ---------------------------------------


def enumerate_homomorphisms(a: FiniteSemigroup, b: FiniteSemigroup,
                            injective: bool = False, bijective: bool = False,
                            pinned: Optional[dict] = None,
                            limit: Optional[int] = None,
                            deadline: Deadline = NO_DEADLINE
                            ) -> list[dict[Label, Label]]:
    """All product-preserving maps a -> b, as label dictionaries.

    `pinned` maps source labels to forced target labels; `limit` stops the
    search after that many maps.
    """
    maps = _hom_images(a, b, injective, bijective, deadline,
                       pinned=pinned, limit=limit)
    return [{a.labels[x]: b.labels[m[x]] for x in range(a.order)} for m in maps]


def _hom_images(a: FiniteSemigroup, b: FiniteSemigroup,
                injective: bool, bijective: bool,
                deadline: Deadline, pinned: Optional[dict] = None,
                limit: Optional[int] = None) -> list[tuple[int, ...]]:
    pinned_idx = None
    if pinned:
        pinned_idx = {a.index(k): b.index(v) for k, v in pinned.items()}
    if bijective:
        if a.order != b.order:
            return []
        return enumerate_table_homs(
            a.table, b.table, bijective=True,
            src_profiles=a.profiles(), dst_profiles=b.profiles(),
            pinned=pinned_idx, limit=limit, deadline=deadline)
    orders_a = element_orders(a.table)
    tb = b.table

    def feasible(x, y):
        # the monogenic relation x^(i+p) = x^i must hold at the image
        i, p = orders_a[x]
        cur = y
        powers = [y]
        for _ in range(i + p - 1):
            cur = tb[cur][y]
            powers.append(cur)
        return powers[i + p - 1] == powers[i - 1]

    return enumerate_table_homs(a.table, b.table, injective=injective,
                                candidate_filter=feasible, pinned=pinned_idx,
                                limit=limit, deadline=deadline)


def enumerate_isomorphisms(a: FiniteSemigroup, b: FiniteSemigroup,
                           deadline: Deadline = NO_DEADLINE) -> list[dict[Label, Label]]:
    """All multiplication-preserving bijections a -> b."""
    return enumerate_homomorphisms(a, b, bijective=True, deadline=deadline)


def automorphism_images(s: FiniteSemigroup,
                        deadline: Deadline = NO_DEADLINE) -> list[tuple[int, ...]]:
    return _hom_images(s, s, True, True, deadline)


# -- homogeneity -----------------------------------------------------------


@dataclass
class OrbitWitness:
    representative: tuple[Label, ...]
    orbit_size: int
    isomorphisms_checked: int


@dataclass
class HomogeneityResult:
    homogeneous: bool
    witnesses: list[OrbitWitness] = field(default_factory=list)
    counterexample: Optional[tuple] = None  # (domain labels, codomain labels, mapping)
    automorphism_count: int = 0

    def __bool__(self) -> bool:
        return self.homogeneous


def is_homogeneous(s: FiniteSemigroup, cap: int = DEFAULT_SUBSEMIGROUP_CAP,
                   deadline: Deadline = NO_DEADLINE) -> HomogeneityResult:
    """Whether every isomorphism between subsemigroups extends to an
    automorphism.

    Automorphisms are computed once; subsemigroups are reduced to orbit
    representatives under their action, and each isomorphism out of a
    representative is tested against the automorphism restrictions.
    """
    subs = _subsemigroup_index_sets(s, cap, deadline)
    autos = automorphism_images(s, deadline)
    by_size: dict[int, list[frozenset[int]]] = {}
    for sub in subs:
        by_size.setdefault(len(sub), []).append(sub)

    seen: set[frozenset[int]] = set()
    reps: list[tuple[frozenset[int], int]] = []
    for sub in subs:
        if sub in seen:
            continue
        orbit = {frozenset(aut[x] for x in sub) for aut in autos}
        seen.update(orbit)
        reps.append((sub, len(orbit)))

    tables: dict[frozenset[int], tuple] = {}

    def descriptor(members: frozenset[int]):
        if members not in tables:
            ordered = sorted(members)
            tables[members] = (ordered, s.subtable(ordered))
        return tables[members]

    witnesses = []
    for rep, orbit_size in reps:
        deadline.check()
        rep_sorted, rep_table = descriptor(rep)
        restrictions = {tuple(aut[x] for x in rep_sorted) for aut in autos}
        checked = 0
        for other in by_size[len(rep)]:
            other_sorted, other_table = descriptor(other)
            for iso in _hom_images(rep_table, other_table, True, True, deadline):
                checked += 1
                if tuple(other_sorted[y] for y in iso) not in restrictions:
                    mapping = {s.labels[rep_sorted[k]]: s.labels[other_sorted[iso[k]]]
                               for k in range(len(rep_sorted))}
                    return HomogeneityResult(
                        False,
                        counterexample=(
                            tuple(s.labels[x] for x in rep_sorted),
                            tuple(s.labels[x] for x in other_sorted),
                            mapping),
                        automorphism_count=len(autos))
        witnesses.append(OrbitWitness(
            tuple(s.labels[x] for x in rep_sorted), orbit_size, checked))
    return HomogeneityResult(True, witnesses=witnesses, automorphism_count=len(autos))


def extending_automorphisms(s: FiniteSemigroup, mapping: dict[Label, Label],
                            deadline: Deadline = NO_DEADLINE) -> list[dict[Label, Label]]:
    """Automorphisms of `s` whose restriction equals the given partial map."""
    idx_pairs = [(s.index(x), s.index(y)) for x, y in mapping.items()]
    out = []
    for aut in automorphism_images(s, deadline):
        if all(aut[x] == y for x, y in idx_pairs):
            out.append({s.labels[k]: s.labels[aut[k]] for k in range(s.order)})
    return out
