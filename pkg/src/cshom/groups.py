"""Finite groups as Cayley tables, with subgroup and morphism machinery.

Elements are identified internally by dense indices in declaration order;
labels appear only at the API boundary.
"""

from __future__ import annotations

import itertools
from typing import Hashable, Iterable, Optional, Sequence

from .errors import NotAGroup, NotASubgroup, UnknownElement
from .search import Deadline, NO_DEADLINE, enumerate_table_homs

Label = Hashable


class FiniteGroup:
    """A group presented by its multiplication table.

    `table[a][b]` is the index of the product of elements `a` and `b`.
    Construction verifies the group axioms (Latin square, two-sided
    identity, inverses, associativity by full triple scan) unless
    `validate=False`.
    """

    __slots__ = ("labels", "table", "identity", "inverse", "_index", "_abelian")

    def __init__(self, labels: Sequence[Label], table: Sequence[Sequence[int]],
                 validate: bool = True):
        self.labels = tuple(labels)
        self.table = tuple(tuple(row) for row in table)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise NotAGroup("duplicate element labels")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise NotAGroup("table shape does not match element count")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if validate:
            self._check_axioms()
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()
        self._abelian: Optional[bool] = None

    def _check_axioms(self) -> None:
        n = len(self.labels)
        rng = range(n)
        for row in self.table:
            for x in row:
                if not (0 <= x < n):
                    raise NotAGroup("table entry out of range")
        for i in rng:
            if len(set(self.table[i])) != n:
                raise NotAGroup(f"row {self.labels[i]!r} is not a permutation")
            if len({self.table[j][i] for j in rng}) != n:
                raise NotAGroup(f"column {self.labels[i]!r} is not a permutation")
        t = self.table
        for a in rng:
            ta = t[a]
            for b in rng:
                tab = ta[b]
                tb = t[b]
                for c in rng:
                    if t[tab][c] != ta[tb[c]]:
                        raise NotAGroup(
                            "not associative at "
                            f"({self.labels[a]!r}, {self.labels[b]!r}, {self.labels[c]!r})")

    def _find_identity(self) -> int:
        n = len(self.labels)
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return e
        raise NotAGroup("no two-sided identity")

    def _find_inverses(self) -> tuple[int, ...]:
        n = len(self.labels)
        inv = [-1] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == self.identity and self.table[b][a] == self.identity:
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise NotAGroup(f"{self.labels[a]!r} has no inverse")
        return tuple(inv)

    # -- basic queries -------------------------------------------------

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

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def element_order(self, a: int) -> int:
        k, cur = 1, a
        while cur != self.identity:
            cur = self.table[cur][a]
            k += 1
        return k

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            t = self.table
            n = self.order
            self._abelian = all(t[a][b] == t[b][a]
                                for a in range(n) for b in range(a + 1, n))
        return self._abelian

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_label_table(cls, labels: Sequence[Label],
                         rows: Sequence[Sequence[Label]]) -> "FiniteGroup":
        idx = {lab: i for i, lab in enumerate(labels)}
        try:
            table = [[idx[x] for x in row] for row in rows]
        except KeyError as exc:
            raise NotAGroup(f"table entry {exc.args[0]!r} is not a declared element") from None
        return cls(labels, table)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        labels = [str(i) for i in range(n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls(labels, table, validate=False)

    @classmethod
    def direct_product(cls, g: "FiniteGroup", h: "FiniteGroup") -> "FiniteGroup":
        labels = [f"({a},{b})" for a in g.labels for b in h.labels]
        nh = h.order
        table = []
        for a in range(g.order):
            for b in range(nh):
                table.append([g.table[a][c] * nh + h.table[b][d]
                              for c in range(g.order) for d in range(nh)])
        return cls(labels, table, validate=False)

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        perms = sorted(itertools.permutations(range(n)))
        idx = {p: i for i, p in enumerate(perms)}

        def name(p):
            seen, cycles = set(), []
            for start in range(n):
                if start in seen or p[start] == start:
                    seen.add(start)
                    continue
                cyc, cur = [], start
                while cur not in seen:
                    seen.add(cur)
                    cyc.append(cur + 1)
                    cur = p[cur]
                cycles.append("(" + "".join(map(str, cyc)) + ")")
            return "".join(cycles) or "e"

        # x*y applies x first, then y (left-to-right composition).
        table = [[idx[tuple(q[p[i]] for i in range(n))] for q in perms] for p in perms]
        return cls([name(p) for p in perms], table, validate=False)

    def subgroup_table(self, members: Iterable[int]) -> "FiniteGroup":
        """The subgroup on `members` as its own group, inheriting labels."""
        sub = sorted(set(members))
        pos = {x: i for i, x in enumerate(sub)}
        try:
            table = [[pos[self.table[a][b]] for b in sub] for a in sub]
        except KeyError:
            raise NotASubgroup("subset is not closed under the product") from None
        return FiniteGroup([self.labels[x] for x in sub], table, validate=False)


class GroupMorphism:
    """A product-preserving map between two groups, stored as an image tuple."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: FiniteGroup, target: FiniteGroup,
                 images: Sequence[int], validate: bool = True):
        self.source = source
        self.target = target
        self.images = tuple(images)
        if validate and not self._is_morphism():
            raise NotAGroup("map does not preserve products")

    def _is_morphism(self) -> bool:
        s, t, img = self.source.table, self.target.table, self.images
        n = self.source.order
        return all(img[s[a][b]] == t[img[a]][img[b]]
                   for a in range(n) for b in range(n))

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupMorphism)
                and self.source is other.source
                and self.target is other.target
                and self.images == other.images)

    def __hash__(self) -> int:
        return hash((id(self.source), id(self.target), self.images))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{self.source.labels[a]!r}->{self.target.labels[self.images[a]]!r}"
                          for a in range(self.source.order))
        return f"GroupMorphism({pairs})"

    @property
    def is_bijective(self) -> bool:
        return (self.source.order == self.target.order
                and len(set(self.images)) == self.source.order)

    def compose(self, other: "GroupMorphism") -> "GroupMorphism":
        """self followed by other."""
        if other.source is not self.target:
            raise NotAGroup("composition sources do not match")
        return GroupMorphism(self.source, other.target,
                             [other.images[x] for x in self.images], validate=False)

    def inverted(self) -> "GroupMorphism":
        if not self.is_bijective:
            raise NotAGroup("only bijective morphisms can be inverted")
        inv = [0] * self.source.order
        for a, b in enumerate(self.images):
            inv[b] = a
        return GroupMorphism(self.target, self.source, inv, validate=False)

    @staticmethod
    def identity(g: FiniteGroup) -> "GroupMorphism":
        return GroupMorphism(g, g, range(g.order), validate=False)


def subgroup_closure(group: FiniteGroup, seed: Iterable[Label]) -> frozenset[Label]:
    """Smallest subgroup containing `seed` (always contains the identity)."""
    indices = closure_indices(group, [group.index(x) for x in seed])
    return frozenset(group.labels[i] for i in indices)


def closure_indices(group: FiniteGroup, seed: Iterable[int]) -> frozenset[int]:
    members = {group.identity}
    members.update(seed)
    elems = list(members)
    table = group.table
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


def all_subgroups(group: FiniteGroup) -> list[frozenset[Label]]:
    """Every subgroup, ordered by size then lexicographically on sorted labels.

    Closure-BFS: start from cyclic subgroups, repeatedly extend by one
    element and close.
    """
    found: set[frozenset[int]] = set()
    queue: list[frozenset[int]] = []
    for x in range(group.order):
        c = closure_indices(group, [x])
        if c not in found:
            found.add(c)
            queue.append(c)
    while queue:
        base = queue.pop()
        for x in range(group.order):
            if x not in base:
                c = closure_indices(group, list(base) + [x])
                if c not in found:
                    found.add(c)
                    queue.append(c)
    as_labels = [frozenset(group.labels[i] for i in sub) for sub in found]
    return sorted(as_labels, key=lambda s: (len(s), sorted(map(str, s))))


def is_subgroup(group: FiniteGroup, members: Iterable[Label]) -> bool:
    idx = {group.index(x) for x in members}
    if not idx or group.identity not in idx:
        return False
    return all(group.table[a][b] in idx for a in idx for b in idx)


def enumerate_group_morphisms(source: FiniteGroup, target: FiniteGroup,
                              bijective_only: bool = False,
                              deadline: Deadline = NO_DEADLINE) -> list[GroupMorphism]:
    """All product-preserving maps source -> target (isomorphisms only if asked).

    Backtracks over images of a generating sequence, pruning candidates whose
    order does not divide the generator's, then validates on the full table.
    """
    src_orders = [source.element_order(a) for a in range(source.order)]
    dst_orders = [target.element_order(a) for a in range(target.order)]
    if bijective_only:
        def feasible(a, b):
            return src_orders[a] == dst_orders[b]
    else:
        def feasible(a, b):
            return src_orders[a] % dst_orders[b] == 0

    maps = enumerate_table_homs(
        source.table, target.table,
        bijective=bijective_only,
        candidate_filter=feasible,
        deadline=deadline,
    )
    return [GroupMorphism(source, target, m, validate=False) for m in maps]


def automorphisms(group: FiniteGroup, deadline: Deadline = NO_DEADLINE) -> list[GroupMorphism]:
    return enumerate_group_morphisms(group, group, bijective_only=True, deadline=deadline)


def inner_automorphism(group: FiniteGroup, label: Label) -> GroupMorphism:
    """Conjugation g -> u * g * u^-1 by the element `label`."""
    u = group.index(label)
    ui = group.inv(u)
    t = group.table
    return GroupMorphism(group, group,
                         [t[t[u][g]][ui] for g in range(group.order)], validate=False)


def is_characteristic(group: FiniteGroup, members: Iterable[Label],
                      deadline: Deadline = NO_DEADLINE
                      ) -> tuple[bool, Optional[GroupMorphism]]:
    """Whether the subgroup is fixed setwise by every automorphism.

    Returns (True, None) or (False, violating automorphism).
    """
    subset = {group.index(x) for x in members}
    if not is_subgroup(group, [group.labels[i] for i in subset]):
        raise NotASubgroup("the given set is not a subgroup")
    for theta in automorphisms(group, deadline=deadline):
        if {theta(i) for i in subset} != subset:
            return False, theta
    return True, None


def is_simple_abelian(group: FiniteGroup) -> bool:
    """Abelian with no proper nontrivial subgroup (trivial or prime cyclic)."""
    if not group.is_abelian:
        return False
    expected = 1 if group.order == 1 else 2
    return len(all_subgroups(group)) == expected
