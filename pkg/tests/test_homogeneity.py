import pytest

from cshom.errors import NotCompletelySimple, NotNormalized
from cshom.graphs import is_homogeneous_graph
from cshom.groups import FiniteGroup
from cshom.homogeneity import (FAILED_SCREEN, GP_NOT_CHARACTERISTIC,
                               GROUP_NOT_HOMOGENEOUS, PATTERN_MISMATCH,
                               classify_homogeneous, decompose_check,
                               group_homogeneous, screen_necessary,
                               small_groups, sweep)
from cshom.rees import ReesMatrixSemigroup, induced_graphs
from cshom.semigroups import FiniteSemigroup, from_rees, is_completely_simple, is_homogeneous

from conftest import (case2_rms, case3_rms, case4_rms, cyclic, klein,
                      monogenic_collapsing, rectangular_band, trivial_rms, z2_z4)


def test_screen_pass_on_case4():
    assert screen_necessary(case4_rms()) == []


def test_screen_column_violation(z2):
    bad = ReesMatrixSemigroup.from_rows(
        z2, [["0", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]])
    kinds = {v.kind for v in screen_necessary(bad)}
    assert "column_entries_differ" in kinds or "row_entries_differ" in kinds


def test_screen_not_closed(z4):
    bad = ReesMatrixSemigroup.from_rows(z4, [["0", "0"], ["0", "1"]])
    kinds = {v.kind for v in screen_necessary(bad)}
    assert "entry_set_not_closed" in kinds


def test_screen_characteristic_violation():
    k4 = klein()
    bad = ReesMatrixSemigroup.from_rows(k4, [["(0,0)", "(0,0)"], ["(0,0)", "(1,0)"]])
    kinds = {v.kind for v in screen_necessary(bad)}
    assert kinds == {"entry_set_not_characteristic"}


def test_screen_requires_normalized(z2):
    crooked = ReesMatrixSemigroup.from_rows(z2, [["1", "1"], ["1", "1"]])
    with pytest.raises(NotNormalized):
        screen_necessary(crooked)


def test_classify_cases():
    assert classify_homogeneous(case2_rms()).case == 2
    assert classify_homogeneous(case3_rms()).case == 3
    assert classify_homogeneous(case4_rms()).case == 4
    out = classify_homogeneous(trivial_rms(cyclic(4), 3, 2))
    assert out.case == 1 and out.homogeneous


def test_classify_rejections(z2):
    flat = ReesMatrixSemigroup.from_rows(
        z2, [["0", "0", "0"], ["0", "1", "1"], ["0", "1", "1"]])
    out = classify_homogeneous(flat)
    assert not out.homogeneous and out.reason == PATTERN_MISMATCH

    k4 = klein()
    out = classify_homogeneous(
        ReesMatrixSemigroup.from_rows(k4, [["(0,0)", "(0,0)"], ["(0,0)", "(1,0)"]]))
    assert out.reason == GP_NOT_CHARACTERISTIC

    out = classify_homogeneous(trivial_rms(z2_z4(), 2, 2))
    assert out.reason == GROUP_NOT_HOMOGENEOUS

    screen_fail = ReesMatrixSemigroup.from_rows(
        z2, [["0", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]])
    out = classify_homogeneous(screen_fail)
    assert out.reason == FAILED_SCREEN


def test_classify_accepts_tables():
    table, _ = from_rees(case2_rms())
    out = classify_homogeneous(table)
    assert out.homogeneous and out.case == 2
    with pytest.raises(NotCompletelySimple):
        classify_homogeneous(monogenic_collapsing())


def test_classify_tries_all_normalization_cells():
    # a case-2 instance presented without its distinguished cell at (1, 1)
    crooked = ReesMatrixSemigroup.from_rows(cyclic(2), [["1", "1"], ["1", "0"]])
    out = classify_homogeneous(crooked)
    assert out.homogeneous and out.case == 2


def test_decompose_examples():
    rep = decompose_check(case2_rms())
    assert (rep.group_homogeneous, rep.idempotent_generated_homogeneous,
            rep.entry_set_characteristic) == (True, True, True)
    assert rep.homogeneous

    k4 = klein()
    rep = decompose_check(
        ReesMatrixSemigroup.from_rows(k4, [["(0,0)", "(0,0)"], ["(0,0)", "(1,0)"]]))
    assert (rep.group_homogeneous, rep.idempotent_generated_homogeneous,
            rep.entry_set_characteristic) == (True, True, False)
    assert not rep.homogeneous

    rep = decompose_check(trivial_rms(z2_z4(), 2, 2))
    assert (rep.group_homogeneous, rep.idempotent_generated_homogeneous,
            rep.entry_set_characteristic) == (False, True, True)


def test_classify_implies_screen_passes():
    for rms in (case2_rms(), case3_rms(), case4_rms(), trivial_rms(cyclic(3), 2, 2)):
        out = classify_homogeneous(rms)
        if out.homogeneous:
            assert screen_necessary(rms) == []


def test_homogeneous_semigroup_has_homogeneous_entry_graph():
    for rms in (case2_rms(), case3_rms(), case4_rms(), trivial_rms(cyclic(2), 3, 3)):
        table, _ = from_rees(rms)
        if is_homogeneous(table).homogeneous:
            _, entry_graph = induced_graphs(rms)
            assert is_homogeneous_graph(entry_graph).homogeneous


def test_case1_matches_orthodoxy_and_group_check():
    for group in (cyclic(4), klein(), z2_z4()):
        rms = trivial_rms(group, 2, 2)
        out = classify_homogeneous(rms)
        table, _ = from_rees(rms)
        idem = [x for x in range(table.order) if table.table[x][x] == x]
        orthodox = all(table.table[a][b] in idem for a in idem for b in idem)
        assert orthodox
        assert out.homogeneous == group_homogeneous(group)


def test_small_groups_catalog():
    names = [name for name, _ in small_groups(6)]
    assert names == ["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3"]
    with pytest.raises(ValueError):
        small_groups(7)


def test_mini_sweep_consistency():
    report = sweep(2, 2)
    assert report.rows and not report.disagreements
    # every regular homogeneous instance in the sweep is completely simple
    # (they are Rees matrix semigroups, hence completely simple by build)
    for row in report.rows:
        assert row.agree
