import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cshom.errors import NotAGroup, NotASubgroup, UnknownElement
from cshom.groups import (FiniteGroup, GroupMorphism, all_subgroups, automorphisms,
                          enumerate_group_morphisms, inner_automorphism,
                          is_characteristic, is_simple_abelian, is_subgroup,
                          subgroup_closure)

from conftest import cyclic, klein


def brute_force_subgroups(g):
    """Oracle: scan every subset containing the identity for closure."""
    n = g.order
    found = set()
    idx = list(range(n))
    for size in range(1, n + 1):
        for subset in itertools.combinations(idx, size):
            s = set(subset)
            if g.identity not in s:
                continue
            if all(g.table[a][b] in s for a in s for b in s):
                found.add(frozenset(g.labels[i] for i in s))
    return found


def brute_force_morphisms(src, dst):
    """Oracle: scan all |dst|^|src| maps for the product law."""
    out = []
    for images in itertools.product(range(dst.order), repeat=src.order):
        if all(images[src.table[a][b]] == dst.table[images[a]][images[b]]
               for a in range(src.order) for b in range(src.order)):
            out.append(images)
    return out


def test_subgroup_closure_examples(z4):
    assert subgroup_closure(z4, ["2"]) == frozenset({"0", "2"})
    assert subgroup_closure(z4, ["1"]) == frozenset({"0", "1", "2", "3"})
    k4 = klein()
    assert subgroup_closure(k4, ["(1,0)", "(0,1)"]) == frozenset(k4.labels)


def test_subgroup_closure_rejects_unknown(z4):
    with pytest.raises(UnknownElement):
        subgroup_closure(z4, ["9"])


def test_all_subgroups_against_brute_force():
    for g in (cyclic(4), klein(), cyclic(6), FiniteGroup.symmetric(3)):
        assert set(all_subgroups(g)) == brute_force_subgroups(g)


def test_all_subgroups_counts(z4):
    assert len(all_subgroups(z4)) == 3
    assert len(all_subgroups(klein())) == 5
    assert len(all_subgroups(cyclic(1))) == 1


def test_all_subgroups_ordering(z4):
    subs = all_subgroups(z4)
    assert [len(s) for s in subs] == sorted(len(s) for s in subs)


def test_morphism_enumeration_against_brute_force():
    pairs = [(cyclic(2), cyclic(2)), (cyclic(3), cyclic(2)),
             (cyclic(2), klein()), (cyclic(4), cyclic(4)),
             (klein(), cyclic(2)), (FiniteGroup.symmetric(3), cyclic(2))]
    for src, dst in pairs:
        got = {m.images for m in enumerate_group_morphisms(src, dst)}
        assert got == set(map(tuple, brute_force_morphisms(src, dst)))


def test_morphism_counts():
    assert len(enumerate_group_morphisms(cyclic(2), cyclic(2))) == 2
    assert len(enumerate_group_morphisms(cyclic(3), cyclic(2))) == 1
    assert len(enumerate_group_morphisms(cyclic(2), klein())) == 4


def test_bijective_only_gives_automorphism_group():
    for g in (cyclic(4), klein(), FiniteGroup.symmetric(3)):
        autos = automorphisms(g)
        assert all(a.is_bijective for a in autos)
        # closure and inverses under composition
        as_set = {a.images for a in autos}
        for a in autos:
            assert a.inverted().images in as_set
            for b in autos:
                assert a.compose(b).images in as_set


def test_morphisms_preserve_products_exhaustively():
    src, dst = klein(), cyclic(2)
    for theta in enumerate_group_morphisms(src, dst):
        for a in range(src.order):
            for b in range(src.order):
                assert theta(src.table[a][b]) == dst.table[theta(a)][theta(b)]


def test_inner_automorphism_examples(z4):
    ident = inner_automorphism(z4, "3")
    assert ident.images == tuple(range(4))  # abelian: conjugation is trivial
    s3 = FiniteGroup.symmetric(3)
    conj = inner_automorphism(s3, "(12)")
    assert s3.labels[conj(s3.index("(123)"))] == "(132)"
    assert inner_automorphism(s3, "e").images == tuple(range(6))


def test_inner_automorphism_unknown_element(z4):
    with pytest.raises(UnknownElement):
        inner_automorphism(z4, "x")


@given(st.integers(min_value=0, max_value=5))
def test_inner_automorphism_inverse_composes_to_identity(k):
    s3 = FiniteGroup.symmetric(3)
    u = s3.labels[k]
    forward = inner_automorphism(s3, u)
    backward = inner_automorphism(s3, s3.labels[s3.inv(s3.index(u))])
    assert forward.compose(backward).images == tuple(range(6))


def test_is_characteristic_examples(z4):
    ok, witness = is_characteristic(z4, {"0", "2"})
    assert ok and witness is None
    k4 = klein()
    ok, witness = is_characteristic(k4, subgroup_closure(k4, ["(1,0)"]))
    assert not ok
    moved = {k4.labels[witness(k4.index(x))] for x in ["(0,0)", "(1,0)"]}
    assert moved != {"(0,0)", "(1,0)"}
    assert is_characteristic(k4, k4.labels)[0]


def test_is_characteristic_rejects_non_subgroup(z4):
    with pytest.raises(NotASubgroup):
        is_characteristic(z4, {"1"})


def test_characteristic_subgroups_are_orbit_fixed(z4):
    # a characteristic subgroup is an automorphism-orbit of size one
    for g in (z4, klein(), cyclic(6)):
        autos = automorphisms(g)
        for sub in all_subgroups(g):
            orbit = {frozenset(g.labels[a(g.index(x))] for x in sub)
                     for a in autos}
            assert is_characteristic(g, sub)[0] == (len(orbit) == 1)


def test_is_simple_abelian():
    assert is_simple_abelian(cyclic(2))
    assert is_simple_abelian(cyclic(3))
    assert is_simple_abelian(cyclic(5))
    assert not is_simple_abelian(cyclic(4))
    assert not is_simple_abelian(klein())
    assert not is_simple_abelian(FiniteGroup.symmetric(3))
    assert is_simple_abelian(cyclic(1))


def test_group_axiom_validation():
    with pytest.raises(NotAGroup):
        FiniteGroup(["e", "x"], [[0, 0], [1, 1]])  # not a Latin square
    with pytest.raises(NotAGroup):
        # subtraction mod 3: a Latin square that is not associative
        FiniteGroup(["0", "1", "2"], [[0, 2, 1], [1, 0, 2], [2, 1, 0]])
    FiniteGroup(["e", "x"], [[0, 1], [1, 0]])


def test_subgroup_table_inherits_labels(z4):
    sub = z4.subgroup_table([0, 2])
    assert sub.labels == ("0", "2")
    assert sub.mul(sub.index("2"), sub.index("2")) == sub.index("0")
    assert is_subgroup(z4, sub.labels)
