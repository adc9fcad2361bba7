"""Complete edge-coloured bipartite graphs: isomorphism, homogeneity, genericity.

A graph carries disjoint left/right vertex sets and a total colouring of
left x right.  Isomorphisms preserve sides and colours; there is no
side-swapping even for square graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .errors import UnknownLabel

Vertex = Hashable
Colour = Hashable


@dataclass(frozen=True)
class EdgeColouredBipartiteGraph:
    left: tuple
    right: tuple
    colours: tuple
    colour_of: Mapping[tuple[Vertex, Vertex], Colour] = field(hash=False)

    def __post_init__(self):
        for l in self.left:
            for r in self.right:
                if (l, r) not in self.colour_of:
                    raise UnknownLabel(f"missing colour for edge ({l!r}, {r!r})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Colour]],
                  left: Optional[Sequence[Vertex]] = None,
                  right: Optional[Sequence[Vertex]] = None,
                  colours: Optional[Sequence[Colour]] = None) -> "EdgeColouredBipartiteGraph":
        nl = len(rows)
        nr = len(rows[0]) if rows else 0
        left = tuple(left) if left is not None else tuple(range(1, nl + 1))
        right = tuple(right) if right is not None else tuple(range(1, nr + 1))
        cmap = {(left[i], right[j]): rows[i][j]
                for i in range(nl) for j in range(nr)}
        if colours is None:
            seen = []
            for row in rows:
                for c in row:
                    if c not in seen:
                        seen.append(c)
            colours = seen
        return cls(left, right, tuple(colours), cmap)

    def colour(self, l: Vertex, r: Vertex) -> Colour:
        try:
            return self.colour_of[(l, r)]
        except KeyError:
            raise UnknownLabel(f"({l!r}, {r!r}) is not an edge") from None

    def occurring_colours(self) -> list[Colour]:
        seen = []
        for l in self.left:
            for r in self.right:
                c = self.colour_of[(l, r)]
                if c not in seen:
                    seen.append(c)
        return seen

    def rows(self) -> list[list[Colour]]:
        return [[self.colour_of[(l, r)] for r in self.right] for l in self.left]

    def induced(self, left: Iterable[Vertex], right: Iterable[Vertex]
                ) -> "EdgeColouredBipartiteGraph":
        left = tuple(left)
        right = tuple(right)
        cmap = {(l, r): self.colour(l, r) for l in left for r in right}
        return EdgeColouredBipartiteGraph(left, right, self.colours, cmap)


MONOCHROMATIC = "Monochromatic"
MATCHING_PLUS_COMPLEMENT = "MatchingPlusComplement"
OTHER = "Other"


def classify_pattern(graph: EdgeColouredBipartiteGraph) -> str:
    """Trichotomy of the colouring pattern.

    Monochromatic: at most one occurring colour.  MatchingPlusComplement:
    exactly two colours on a square graph, one of them a perfect matching.
    Everything else: Other.
    """
    occurring = graph.occurring_colours()
    if len(occurring) <= 1:
        return MONOCHROMATIC
    if len(occurring) == 2 and len(graph.left) == len(graph.right):
        for c in occurring:
            if _is_perfect_matching(graph, c):
                return MATCHING_PLUS_COMPLEMENT
    return OTHER


def _is_perfect_matching(graph: EdgeColouredBipartiteGraph, colour: Colour) -> bool:
    for l in graph.left:
        if sum(1 for r in graph.right if graph.colour_of[(l, r)] == colour) != 1:
            return False
    for r in graph.right:
        if sum(1 for l in graph.left if graph.colour_of[(l, r)] == colour) != 1:
            return False
    return True


@dataclass(frozen=True)
class GraphIso:
    """A side-preserving colour-preserving vertex bijection, one map per side."""
    left_map: tuple  # pairs (a-left vertex, b-left vertex)
    right_map: tuple

    def left(self, v: Vertex) -> Vertex:
        return dict(self.left_map)[v]

    def right(self, v: Vertex) -> Vertex:
        return dict(self.right_map)[v]


def enumerate_graph_isomorphisms(a: EdgeColouredBipartiteGraph,
                                 b: EdgeColouredBipartiteGraph) -> list[GraphIso]:
    """All side-preserving colour-preserving vertex bijections a -> b."""
    if len(a.left) != len(b.left) or len(a.right) != len(b.right):
        return []
    out = []
    for lperm in itertools.permutations(b.left):
        for rperm in itertools.permutations(b.right):
            ok = True
            for i, l in enumerate(a.left):
                for j, r in enumerate(a.right):
                    if a.colour_of[(l, r)] != b.colour_of[(lperm[i], rperm[j])]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(GraphIso(tuple(zip(a.left, lperm)),
                                    tuple(zip(a.right, rperm))))
    return out


@dataclass
class GraphHomogeneityResult:
    homogeneous: bool
    counterexample: Optional[tuple] = None  # (sub_a, sub_b, mapping)

    def __bool__(self) -> bool:
        return self.homogeneous


def is_homogeneous_graph(graph: EdgeColouredBipartiteGraph) -> GraphHomogeneityResult:
    """Whether every isomorphism between induced subgraphs extends.

    Brute force: automorphism restrictions are precomputed per substructure
    and each subgraph isomorphism is tested for membership.
    """
    autos = enumerate_graph_isomorphisms(graph, graph)
    auto_lmaps = [dict(alpha.left_map) for alpha in autos]
    auto_rmaps = [dict(alpha.right_map) for alpha in autos]
    subs = []
    for lsub in _subsets(graph.left):
        for rsub in _subsets(graph.right):
            if lsub or rsub:
                subs.append((lsub, rsub))
    by_shape: dict[tuple[int, int], list] = {}
    for s in subs:
        by_shape.setdefault((len(s[0]), len(s[1])), []).append(s)
    for lsub, rsub in subs:
        sub_a = graph.induced(lsub, rsub)
        restrictions = {
            (tuple(lm[v] for v in lsub), tuple(rm[v] for v in rsub))
            for lm, rm in zip(auto_lmaps, auto_rmaps)}
        for lsub2, rsub2 in by_shape[(len(lsub), len(rsub))]:
            sub_b = graph.induced(lsub2, rsub2)
            for iso in enumerate_graph_isomorphisms(sub_a, sub_b):
                lmap, rmap = dict(iso.left_map), dict(iso.right_map)
                key = (tuple(lmap[v] for v in lsub), tuple(rmap[v] for v in rsub))
                if key not in restrictions:
                    return GraphHomogeneityResult(
                        False, ((lsub, rsub), (lsub2, rsub2), iso))
    return GraphHomogeneityResult(True)


def _subsets(items: Sequence) -> list[tuple]:
    out = []
    for k in range(len(items) + 1):
        out.extend(itertools.combinations(items, k))
    return out


@dataclass
class Defect:
    """A colour assignment on one side with no witness vertex on the other."""
    side: str  # "left" or "right"
    assignment: tuple  # ((vertex, colour), ...)


@dataclass
class DefectReport:
    defects: list[Defect]
    truncated: bool = False

    def __iter__(self):
        return iter(self.defects)

    def __len__(self):
        return len(self.defects)


DEFECT_CAP = 10_000


def k_generic_defects(graph: EdgeColouredBipartiteGraph, colours: Sequence[Colour],
                      level: int, cap: int = DEFECT_CAP) -> DefectReport:
    """Unmet witness constraints up to the given subset size.

    A constraint is a map from a nonempty subset of one side into the colour
    set; it is met when some vertex on the other side realizes it edgewise.
    """
    if level < 1:
        raise ValueError("level must be at least 1")
    defects: list[Defect] = []
    truncated = False

    def scan(side_name, side, other, key):
        nonlocal truncated
        for k in range(1, level + 1):
            for subset in itertools.combinations(side, k):
                for values in itertools.product(colours, repeat=k):
                    if not _has_witness(graph, subset, values, other, key):
                        if len(defects) >= cap:
                            truncated = True
                            return
                        defects.append(Defect(side_name, tuple(zip(subset, values))))

    scan("left", graph.left, graph.right, lambda l, r: (l, r))
    if not truncated:
        scan("right", graph.right, graph.left, lambda r, l: (l, r))
    return DefectReport(defects, truncated)


def _has_witness(graph, subset, values, other, key) -> bool:
    cmap = graph.colour_of
    for x in other:
        if all(cmap[key(y, x)] == v for y, v in zip(subset, values)):
            return True
    return False


def extend_to_k_generic(graph: EdgeColouredBipartiteGraph, colours: Sequence[Colour],
                        level: int) -> EdgeColouredBipartiteGraph:
    """Grow the graph until the original vertex set has no defects.

    New vertices are added as witnesses; their undetermined edges take the
    fill colour `colours[0]` (callers put the identity-like colour first).
    """
    for c in graph.occurring_colours():
        if c not in colours:
            raise UnknownLabel(f"colour {c!r} of the graph is outside the target set")
    fill = colours[0]
    left = list(graph.left)
    right = list(graph.right)
    cmap = dict(graph.colour_of)
    counter = itertools.count()

    def fresh(prefix):
        while True:
            v = f"{prefix}{next(counter)}"
            if v not in left and v not in right:
                return v

    current = EdgeColouredBipartiteGraph(tuple(left), tuple(right), tuple(colours), cmap)
    grew = False
    for defect in k_generic_defects(current, colours, level, cap=10**9):
        subset = [v for v, _ in defect.assignment]
        values = [c for _, c in defect.assignment]
        if defect.side == "left":
            if _has_witness(current, subset, values, right, lambda l, r: (l, r)):
                continue
            w = fresh("r")
            for l in left:
                cmap[(l, w)] = fill
            for v, c in defect.assignment:
                cmap[(v, w)] = c
            right.append(w)
        else:
            if _has_witness(current, subset, values, left, lambda r, l: (l, r)):
                continue
            w = fresh("l")
            for r in right:
                cmap[(w, r)] = fill
            for v, c in defect.assignment:
                cmap[(w, v)] = c
            left.append(w)
        grew = True
        current = EdgeColouredBipartiteGraph(tuple(left), tuple(right), tuple(colours), cmap)
    return current if grew else graph
