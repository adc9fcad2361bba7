"""Backtracking search shared by the group and semigroup morphism enumerators.

Structures are presented as dense multiplication tables (tuples of tuples of
element indices).  A *derivation plan* fixes a generating sequence and, for
every non-generator, one product of earlier elements producing it; candidate
morphisms are then determined by generator images alone and checked on the
full table.
"""

from __future__ import annotations

import time
from typing import Callable, Optional, Sequence

from .errors import DeadlineExceeded


class Deadline:
    """Best-effort cancellation checked between search branches."""

    def __init__(self, seconds: Optional[float]):
        self._until = None if seconds is None else time.monotonic() + seconds

    def check(self) -> None:
        if self._until is not None and time.monotonic() > self._until:
            raise DeadlineExceeded("deadline expired")


NO_DEADLINE = Deadline(None)


def element_orders(table: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Index/period of the cyclic subsemigroup of each element.

    Returns pairs (index, period): powers x, x^2, ... repeat for the first
    time at x^(index+period) = x^index.
    """
    n = len(table)
    out = []
    for x in range(n):
        seen = {x: 1}
        cur, k = x, 1
        while True:
            cur = table[cur][x]
            k += 1
            if cur in seen:
                first = seen[cur]
                out.append((first, k - first))
                break
            seen[cur] = k
    return out


def refine_profiles(table, initial: Sequence, rounds: int = 4) -> tuple:
    """Iterated colour refinement; profiles are isomorphism-invariant.

    Refined class names are ranks of sorted signatures, which keeps them
    comparable across isomorphic tables; the absolute `initial` value (e.g.
    a tuple of counts) is carried alongside the rank so that structurally
    different tables are still told apart.
    """
    n = len(table)
    colours = list(initial)
    for _ in range(rounds):
        sigs = []
        for x in range(n):
            row = sorted((colours[y], colours[table[x][y]], colours[table[y][x]])
                         for y in range(n))
            sigs.append((colours[x], tuple(row)))
        ranking = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        fresh = [ranking[sig] for sig in sigs]
        if fresh == colours:
            break
        colours = fresh
    return tuple(zip(initial, colours))


def derivation_plan(table, seed_order: Optional[Sequence[int]] = None):
    """Greedy generating sequence with one derivation per non-generator.

    Returns (generators, steps) where steps is a list of (target, left,
    right) triples in an order that only references already-known elements.
    """
    n = len(table)
    order = list(seed_order) if seed_order is not None else list(range(n))
    known = [False] * n
    gens: list[int] = []
    steps: list[tuple[int, int, int]] = []

    def close_over(new: int) -> None:
        known[new] = True
        frontier = [new]
        current = [x for x in range(n) if known[x]]
        while frontier:
            x = frontier.pop()
            for y in list(current):
                for a, b in ((x, y), (y, x)):
                    z = table[a][b]
                    if not known[z]:
                        known[z] = True
                        steps.append((z, a, b))
                        frontier.append(z)
                        current.append(z)

    for x in order:
        if not known[x]:
            gens.append(x)
            close_over(x)
    return gens, steps


def enumerate_table_homs(
    src_table,
    dst_table,
    *,
    injective: bool = False,
    bijective: bool = False,
    candidate_filter: Optional[Callable[[int, int], bool]] = None,
    src_profiles: Optional[Sequence] = None,
    dst_profiles: Optional[Sequence] = None,
    pinned: Optional[dict] = None,
    limit: Optional[int] = None,
    deadline: Deadline = NO_DEADLINE,
) -> list[tuple[int, ...]]:
    """All multiplication-preserving maps, as image tuples indexed by source.

    With `bijective`, profile equality prunes generator candidates;
    `candidate_filter(src_elt, dst_elt)` adds caller-specific pruning;
    `pinned` forces images of particular source elements; `limit` stops the
    search after that many maps.
    """
    ns, nd = len(src_table), len(dst_table)
    if bijective:
        injective = True
    if injective and ns > nd:
        return []
    if bijective and ns != nd:
        return []
    if pinned and injective and len(set(pinned.values())) != len(pinned):
        return []

    use_profiles = bijective and src_profiles is not None and dst_profiles is not None
    if use_profiles:
        if sorted(src_profiles) != sorted(dst_profiles):
            return []
        seed = sorted(range(ns), key=lambda x: (sum(
            1 for y in range(ns) if src_profiles[y] == src_profiles[x]), x))
        gens, steps = derivation_plan(src_table, seed)
    else:
        gens, steps = derivation_plan(src_table)

    candidates: list[list[int]] = []
    for g in gens:
        if pinned and g in pinned:
            opts = [pinned[g]]
        else:
            opts = []
            for h in range(nd):
                if use_profiles and src_profiles[g] != dst_profiles[h]:
                    continue
                if candidate_filter is not None and not candidate_filter(g, h):
                    continue
                opts.append(h)
        if not opts:
            return []
        candidates.append(opts)

    # Split derivation steps by the generator level at which they unlock.
    level_of = {}
    for pos, g in enumerate(gens):
        level_of[g] = pos
    staged: list[list[tuple[int, int, int]]] = [[] for _ in gens]
    known_level = {}
    for pos, g in enumerate(gens):
        known_level[g] = pos
    for z, a, b in steps:
        lvl = max(known_level[a], known_level[b])
        known_level[z] = lvl
        staged[lvl].append((z, a, b))

    results: list[tuple[int, ...]] = []
    img = [-1] * ns
    used = [False] * nd
    pin = pinned or {}

    def full_check() -> bool:
        for x in range(ns):
            ix = img[x]
            rowx = src_table[x]
            drow = dst_table[ix]
            for y in range(ns):
                if drow[img[y]] != img[rowx[y]]:
                    return False
        return True

    class Done(Exception):
        pass

    def descend(level: int) -> None:
        deadline.check()
        if level == len(gens):
            if full_check():
                results.append(tuple(img))
                if limit is not None and len(results) >= limit:
                    raise Done
            return
        g = gens[level]
        for h in candidates[level]:
            if injective and used[h]:
                continue
            img[g] = h
            if injective:
                used[h] = True
            assigned = [g]
            ok = True
            for z, a, b in staged[level]:
                w = dst_table[img[a]][img[b]]
                if use_profiles and src_profiles[z] != dst_profiles[w]:
                    ok = False
                    break
                if injective and used[w]:
                    ok = False
                    break
                if z in pin and pin[z] != w:
                    ok = False
                    break
                img[z] = w
                assigned.append(z)
                if injective:
                    used[w] = True
            if ok:
                descend(level + 1)
            for z in assigned:
                if injective:
                    used[img[z]] = False
                img[z] = -1
        return

    try:
        descend(0)
    except Done:
        pass
    results.sort()
    return results
