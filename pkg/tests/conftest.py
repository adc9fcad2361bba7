import pytest

from cshom.groups import FiniteGroup
from cshom.rees import ReesMatrixSemigroup
from cshom.semigroups import FiniteSemigroup


def cyclic(n):
    return FiniteGroup.cyclic(n)


def klein():
    return FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))


def z2_z4():
    return FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(4))


def case2_rms(group=None, a="1"):
    """2x2 over Z2 (by default) with a single non-identity inner cell."""
    g = group or cyclic(2)
    e = g.labels[g.identity]
    return ReesMatrixSemigroup.from_rows(g, [[e, e], [e, a]])


def case3_rms():
    """3x3 over Z3 with the mutually inverse pair on the inner diagonal."""
    g = cyclic(3)
    return ReesMatrixSemigroup.from_rows(
        g, [["0", "0", "0"], ["0", "1", "2"], ["0", "2", "1"]])


def case4_rms():
    """4x4 over Z2 with identity entries on the inner diagonal."""
    g = cyclic(2)
    return ReesMatrixSemigroup.from_rows(
        g, [["0", "0", "0", "0"], ["0", "0", "1", "1"],
            ["0", "1", "0", "1"], ["0", "1", "1", "0"]])


def rectangular_band(n_rows, n_cols):
    g = cyclic(1)
    return ReesMatrixSemigroup.from_rows(g, [["0"] * n_cols] * n_rows)


def trivial_rms(group, n_rows, n_cols):
    e = group.labels[group.identity]
    return ReesMatrixSemigroup.from_rows(group, [[e] * n_cols] * n_rows)


def monogenic_collapsing():
    """The three-element semigroup generated by one element whose fourth
    power equals its square."""
    return FiniteSemigroup.from_label_table(
        ["a", "a2", "a3"],
        [["a2", "a3", "a2"], ["a3", "a2", "a3"], ["a2", "a3", "a2"]])


@pytest.fixture
def z2():
    return cyclic(2)


@pytest.fixture
def z3():
    return cyclic(3)


@pytest.fixture
def z4():
    return cyclic(4)
