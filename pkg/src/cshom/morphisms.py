"""Parametric morphisms between Rees matrix semigroups.

A morphism is a quadruple: a group morphism, a pair of index maps
(columns and rows), and per-column / per-row correction factors in the
target group.  It acts by

    (i, g, l)  ->  (col_map(i), left_factor(i) * theta(g) * right_factor(l), row_map(l))

and is a well-defined homomorphism exactly when every sandwich entry
satisfies  theta(P[l][i]) = right_factor(l) * Q[row_map(l)][col_map(i)] * left_factor(i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Optional

from .errors import (ComponentMismatch, CshomError, NormalizationNotFixed,
                     NotNormalized, NotValidated)
from .groups import FiniteGroup, GroupMorphism, closure_indices, enumerate_group_morphisms
from .rees import ReesMatrixSemigroup, RmsElement, idempotent_generated, normalize
from .search import Deadline, NO_DEADLINE


@dataclass
class ValidationReport:
    ok: bool
    failing_cell: Optional[tuple] = None  # (row label, column label)

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class RmsMorphism:
    source: ReesMatrixSemigroup
    target: ReesMatrixSemigroup
    group_map: GroupMorphism
    col_map: Mapping
    row_map: Mapping
    left_factor: Mapping   # column label -> target group element label
    right_factor: Mapping  # row label -> target group element label
    _validated: Optional[bool] = field(default=None, repr=False, compare=False)

    def components_fit(self) -> bool:
        return (self.group_map.source is self.source.group
                and self.group_map.target is self.target.group
                and set(self.col_map) == set(self.source.cols)
                and set(self.row_map) == set(self.source.rows)
                and set(self.left_factor) == set(self.source.cols)
                and set(self.right_factor) == set(self.source.rows))

    def validate(self) -> ValidationReport:
        """Check the compatibility equation on every sandwich cell."""
        if not self.components_fit():
            raise ComponentMismatch("morphism components do not match source/target")
        h = self.target.group
        theta = self.group_map
        src_m = self.source.matrix
        dst_m = self.target.matrix
        for l in self.source.rows:
            v = h.index(self.right_factor[l])
            dst_row = self.row_map[l]
            for i in self.source.cols:
                lhs = theta(src_m.entry(l, i))
                q = dst_m.entry(dst_row, self.col_map[i])
                rhs = h.mul(h.mul(v, q), h.index(self.left_factor[i]))
                if lhs != rhs:
                    self._validated = False
                    return ValidationReport(False, (l, i))
        self._validated = True
        return ValidationReport(True)

    def ensure_valid(self) -> None:
        if self._validated is None:
            self.validate()
        if not self._validated:
            raise NotValidated("morphism failed validation")

    def apply(self, x: RmsElement) -> RmsElement:
        if self._validated is not True:
            raise NotValidated("validate the morphism before applying it")
        h = self.target.group
        mid = h.mul(h.mul(h.index(self.left_factor[x.col]),
                          self.group_map(self.source.group.index(x.element))),
                    h.index(self.right_factor[x.row]))
        return RmsElement(self.col_map[x.col], h.labels[mid], self.row_map[x.row])

    def as_dict(self) -> dict[RmsElement, RmsElement]:
        self.ensure_valid()
        return {x: self.apply(x) for x in self.source.elements()}

    @property
    def is_bijective(self) -> bool:
        return (self.group_map.is_bijective
                and len(set(self.col_map.values())) == len(self.target.cols) == len(self.source.cols)
                and len(set(self.row_map.values())) == len(self.target.rows) == len(self.source.rows))

    def compose(self, other: "RmsMorphism") -> "RmsMorphism":
        """self followed by other."""
        if other.source is not self.target:
            raise ComponentMismatch("composition endpoints do not match")
        h = other.target.group
        theta2 = other.group_map
        left = {}
        for i in self.source.cols:
            a = h.index(other.left_factor[self.col_map[i]])
            b = theta2(self.target.group.index(self.left_factor[i]))
            left[i] = h.labels[h.mul(a, b)]
        right = {}
        for l in self.source.rows:
            a = theta2(self.target.group.index(self.right_factor[l]))
            b = h.index(other.right_factor[self.row_map[l]])
            right[l] = h.labels[h.mul(a, b)]
        return RmsMorphism(
            source=self.source, target=other.target,
            group_map=self.group_map.compose(other.group_map),
            col_map={i: other.col_map[self.col_map[i]] for i in self.source.cols},
            row_map={l: other.row_map[self.row_map[l]] for l in self.source.rows},
            left_factor=left, right_factor=right)

    def inverted(self) -> "RmsMorphism":
        if not self.is_bijective:
            raise ComponentMismatch("only bijective morphisms can be inverted")
        g = self.source.group
        theta_inv = self.group_map.inverted()
        col_inv = {v: k for k, v in self.col_map.items()}
        row_inv = {v: k for k, v in self.row_map.items()}
        left = {j: g.labels[g.inv(theta_inv(self.target.group.index(
            self.left_factor[col_inv[j]])))] for j in self.target.cols}
        right = {m: g.labels[g.inv(theta_inv(self.target.group.index(
            self.right_factor[row_inv[m]])))] for m in self.target.rows}
        return RmsMorphism(
            source=self.target, target=self.source,
            group_map=theta_inv, col_map=col_inv, row_map=row_inv,
            left_factor=left, right_factor=right)

    @staticmethod
    def identity(s: ReesMatrixSemigroup) -> "RmsMorphism":
        e = s.group.labels[s.group.identity]
        return RmsMorphism(
            source=s, target=s, group_map=GroupMorphism.identity(s.group),
            col_map={i: i for i in s.cols}, row_map={l: l for l in s.rows},
            left_factor={i: e for i in s.cols}, right_factor={l: e for l in s.rows})


def equal(a: RmsMorphism, b: RmsMorphism) -> bool:
    """Whether two quadruples define the same map.

    Requires equal index maps, equal factor products on every cell, and
    group maps differing by the inner automorphism of the factor offset.
    """
    if a.source is not b.source or a.target is not b.target:
        raise ComponentMismatch("morphisms must share source and target")
    if a.col_map != b.col_map or a.row_map != b.row_map:
        return False
    h = a.target.group
    for i in a.source.cols:
        ua = h.index(a.left_factor[i])
        ub = h.index(b.left_factor[i])
        for l in a.source.rows:
            va = h.index(a.right_factor[l])
            vb = h.index(b.right_factor[l])
            if h.mul(ua, va) != h.mul(ub, vb):
                return False
    first = a.source.cols[0]
    x = h.mul(h.inv(h.index(a.left_factor[first])), h.index(b.left_factor[first]))
    xi = h.inv(x)
    theta_a, theta_b = a.group_map, b.group_map
    return all(theta_a(g) == h.mul(h.mul(x, theta_b(g)), xi)
               for g in range(a.source.group.order))


def canonical_normalized_form(phi: RmsMorphism) -> RmsMorphism:
    """The equal representative with trivial correction factors.

    Requires normalized source and target with the index maps fixing the
    distinguished row and column; the group map absorbs the constant factor
    as an inner automorphism.
    """
    src_col0, src_row0 = phi.source.require_normalized()
    dst_col0, dst_row0 = phi.target.require_normalized()
    if phi.col_map[src_col0] != dst_col0 or phi.row_map[src_row0] != dst_row0:
        raise NormalizationNotFixed("index maps move the distinguished row/column")
    phi.ensure_valid()
    h = phi.target.group
    u = h.index(phi.left_factor[src_col0])
    for i in phi.source.cols:
        if h.index(phi.left_factor[i]) != u:
            raise CshomError("left factors of a normalization-fixing morphism must be constant")
    ui = h.inv(u)
    for l in phi.source.rows:
        if h.index(phi.right_factor[l]) != ui:
            raise CshomError("right factors must invert the constant left factor")
    conj = GroupMorphism(
        phi.source.group, h,
        [h.mul(h.mul(u, phi.group_map(g)), ui)
         for g in range(phi.source.group.order)], validate=False)
    e = h.labels[h.identity]
    result = RmsMorphism(
        source=phi.source, target=phi.target, group_map=conj,
        col_map=dict(phi.col_map), row_map=dict(phi.row_map),
        left_factor={i: e for i in phi.source.cols},
        right_factor={l: e for l in phi.source.rows})
    result.validate()
    return result


def enumerate_rms_morphisms(source: ReesMatrixSemigroup, target: ReesMatrixSemigroup,
                            bijective_only: bool = False,
                            deadline: Deadline = NO_DEADLINE) -> list[RmsMorphism]:
    """All morphisms source -> target, one quadruple per distinct map.

    Group maps and index maps are enumerated; the correction factors are
    pinned by the distinguished row and column, which leaves exactly one
    representative (with trivial factor at the distinguished column) per
    map.  Non-normalized inputs are normalized first and conjugated back.
    """
    if not source.is_normalized or not target.is_normalized:
        src, to_norm = source, None
        if not source.is_normalized:
            src, to_norm = normalize(source, source.cols[0], source.rows[0])
        back = None
        if not target.is_normalized:
            dst, m = normalize(target, target.cols[0], target.rows[0])
            back = m.inverted()
            back.validate()
        else:
            dst = target
        out = []
        for phi in enumerate_rms_morphisms(src, dst, bijective_only, deadline):
            full = to_norm.compose(phi) if to_norm is not None else phi
            if back is not None:
                full = full.compose(back)
            full.validate()
            out.append(full)
        return out

    g, h = source.group, target.group
    src_col0, src_row0 = source.normalized_at
    thetas = enumerate_group_morphisms(g, h, bijective_only=bijective_only,
                                       deadline=deadline)
    col_maps = _index_maps(source.cols, target.cols, bijective_only)
    row_maps = _index_maps(source.rows, target.rows, bijective_only)
    dst_m = target.matrix
    out = []
    for theta in thetas:
        deadline.check()
        for col_map in col_maps:
            j0 = col_map[src_col0]
            for row_map in row_maps:
                m0 = row_map[src_row0]
                anchor = dst_m.entry(m0, j0)
                left = {i: h.labels[h.mul(h.inv(dst_m.entry(m0, col_map[i])), anchor)]
                        for i in source.cols}
                right = {l: h.labels[h.inv(dst_m.entry(row_map[l], j0))]
                         for l in source.rows}
                phi = RmsMorphism(source=source, target=target, group_map=theta,
                                  col_map=dict(col_map), row_map=dict(row_map),
                                  left_factor=left, right_factor=right)
                if phi.validate().ok:
                    if bijective_only and not phi.is_bijective:
                        continue
                    out.append(phi)
    return out


def _index_maps(src_labels, dst_labels, bijective_only):
    import itertools
    if bijective_only:
        if len(src_labels) != len(dst_labels):
            return []
        return [dict(zip(src_labels, perm))
                for perm in itertools.permutations(dst_labels)]
    return [dict(zip(src_labels, choice))
            for choice in itertools.product(dst_labels, repeat=len(src_labels))]


def restrict_to_idempotent_generated(phi: RmsMorphism) -> RmsMorphism:
    """The morphism induced between the idempotent-generated subsemigroups.

    Searches the one-parameter family of equal representatives for one whose
    factors lie in the subgroup generated by the target's sandwich entries
    and whose group map carries entry-subgroup into entry-subgroup.
    """
    phi.source.require_normalized()
    phi.target.require_normalized()
    phi.ensure_valid()
    g, h = phi.source.group, phi.target.group
    src_entries = closure_indices(
        g, {x for row in phi.source.matrix.entries for x in row})
    dst_entries = closure_indices(
        h, {x for row in phi.target.matrix.entries for x in row})
    theta = phi.group_map
    for x in range(h.order):
        xi = h.inv(x)
        left = {i: h.mul(h.index(phi.left_factor[i]), x) for i in phi.source.cols}
        if any(v not in dst_entries for v in left.values()):
            continue
        right = {l: h.mul(xi, h.index(phi.right_factor[l])) for l in phi.source.rows}
        if any(v not in dst_entries for v in right.values()):
            continue
        twisted = [h.mul(h.mul(xi, theta(a)), x) for a in range(g.order)]
        if any(twisted[a] not in dst_entries for a in src_entries):
            continue
        src_e = idempotent_generated(phi.source)
        dst_e = idempotent_generated(phi.target)
        sub_theta = GroupMorphism(
            src_e.group, dst_e.group,
            [dst_e.group.index(h.labels[twisted[g.index(lab)]])
             for lab in src_e.group.labels])
        result = RmsMorphism(
            source=src_e, target=dst_e, group_map=sub_theta,
            col_map=dict(phi.col_map), row_map=dict(phi.row_map),
            left_factor={i: h.labels[left[i]] for i in phi.source.cols},
            right_factor={l: h.labels[right[l]] for l in phi.source.rows})
        if result.validate().ok:
            return result
    raise CshomError("no representative lies inside the idempotent-generated subsemigroup")
