import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cshom.errors import UnknownLabel
from cshom.graphs import (MATCHING_PLUS_COMPLEMENT, MONOCHROMATIC, OTHER,
                          EdgeColouredBipartiteGraph, classify_pattern,
                          enumerate_graph_isomorphisms, extend_to_k_generic,
                          is_homogeneous_graph, k_generic_defects)


def graph_of(rows, **kw):
    return EdgeColouredBipartiteGraph.from_rows(rows, **kw)


def test_classify_pattern_examples():
    assert classify_pattern(graph_of([["x"]])) == MONOCHROMATIC
    assert classify_pattern(graph_of([["x", "y"], ["y", "x"]])) \
        == MATCHING_PLUS_COMPLEMENT
    assert classify_pattern(graph_of([["x", "y"], ["x", "y"]])) == OTHER
    assert classify_pattern(graph_of([["x", "x"], ["x", "x"]])) == MONOCHROMATIC
    # two colours but not square
    assert classify_pattern(graph_of([["x", "y", "y"], ["y", "x", "y"]])) == OTHER
    # empty graph counts as monochromatic
    empty = EdgeColouredBipartiteGraph((), (), ("c",), {})
    assert classify_pattern(empty) == MONOCHROMATIC


def test_enumerate_graph_isomorphisms_counts():
    one = graph_of([["x"]])
    assert len(enumerate_graph_isomorphisms(one, one)) == 1
    matching = graph_of([["x", "y"], ["y", "x"]])
    assert len(enumerate_graph_isomorphisms(matching, matching)) == 2
    mono23 = graph_of([["e"] * 3, ["e"] * 3])
    assert len(enumerate_graph_isomorphisms(mono23, mono23)) == 2 * 6
    assert enumerate_graph_isomorphisms(one, matching) == []


def test_isomorphisms_preserve_colours():
    g = graph_of([["x", "y"], ["y", "x"]])
    for iso in enumerate_graph_isomorphisms(g, g):
        lmap, rmap = dict(iso.left_map), dict(iso.right_map)
        for l in g.left:
            for r in g.right:
                assert g.colour_of[(l, r)] == g.colour_of[(lmap[l], rmap[r])]


def test_is_homogeneous_graph_examples():
    assert is_homogeneous_graph(graph_of([["e"] * 3, ["e"] * 3])).homogeneous
    assert is_homogeneous_graph(graph_of([["x", "y"], ["y", "x"]])).homogeneous
    bad = is_homogeneous_graph(graph_of([["x", "y"], ["x", "y"]]))
    assert not bad.homogeneous
    assert bad.counterexample is not None


def brute_homogeneity_agreement(rows):
    g = graph_of(rows)
    pattern = classify_pattern(g)
    return (pattern in (MONOCHROMATIC, MATCHING_PLUS_COMPLEMENT)) \
        == is_homogeneous_graph(g).homogeneous


def test_pattern_matches_homogeneity_two_by_two():
    for rows in itertools.product(itertools.product("ab", repeat=2), repeat=2):
        assert brute_homogeneity_agreement([list(r) for r in rows])


def test_k_generic_defects_examples():
    all_e = graph_of([["e", "e"], ["e", "e"]])
    report = k_generic_defects(all_e, ["e", "a"], 1)
    kinds = {(d.side, d.assignment) for d in report}
    assert (("left", ((1, "a"),))) in kinds
    assert not report.truncated

    mono = graph_of([["e", "e"], ["e", "e"]])
    assert len(k_generic_defects(mono, ["e"], 2)) == 0

    with pytest.raises(ValueError):
        k_generic_defects(mono, ["e"], 0)


def test_k_generic_defect_cap():
    g = graph_of([["e"] * 3] * 3)
    report = k_generic_defects(g, ["e", "a", "b"], 3, cap=5)
    assert report.truncated and len(report) == 5


def test_extend_to_k_generic_examples():
    tiny = graph_of([["e"]], left=["l1"], right=["r1"])
    grown = extend_to_k_generic(tiny, ["e", "a"], 1)
    assert len(k_generic_defects(grown, ["e", "a"], 1).defects) == 0
    assert set(grown.left) >= {"l1"} and set(grown.right) >= {"r1"}
    # original edge colours unchanged
    assert grown.colour_of[("l1", "r1")] == "e"

    again = extend_to_k_generic(grown, ["e", "a"], 1)
    assert again is grown


def test_extend_rejects_foreign_colours():
    g = graph_of([["z"]])
    with pytest.raises(UnknownLabel):
        extend_to_k_generic(g, ["e", "a"], 1)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from("01"), min_size=4, max_size=4))
def test_extend_level2_clears_original_constraints(bits):
    rows = [[bits[0], bits[1]], [bits[2], bits[3]]]
    g = graph_of(rows, left=["l1", "l2"], right=["r1", "r2"])
    grown = extend_to_k_generic(g, ["0", "1"], 2)
    report = k_generic_defects(grown, ["0", "1"], 2)
    original = {"l1", "l2", "r1", "r2"}
    for defect in report:
        assert not {v for v, _ in defect.assignment} <= original


def test_extend_monotone_and_induced():
    g = graph_of([["0", "1"], ["1", "1"]], left=["l1", "l2"], right=["r1", "r2"])
    grown = extend_to_k_generic(g, ["0", "1"], 1)
    for l in g.left:
        for r in g.right:
            assert grown.colour_of[(l, r)] == g.colour_of[(l, r)]
