"""Exact minimum feedback arc set.

Small digraphs use a subset dynamic program over placed prefixes. Larger ones
fall back to a bounded search that branches on the arcs of a shortest cycle,
which is exact as long as the optimum fits the budget.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .errors import CapExceeded
from .instance import Digraph
from .kernels import fas_table

__all__ = ["OrderedFas", "min_fas", "back_arcs", "leftward_arcs", "DEFAULT_FAS_CAP", "DEFAULT_FAS_BUDGET"]

DEFAULT_FAS_CAP = 20
DEFAULT_FAS_BUDGET = 8


@dataclass(frozen=True)
class OrderedFas:
    ordering: tuple[int, ...]
    back_arcs: frozenset[tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.back_arcs)

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.ordering)}


def back_arcs(digraph: Digraph, ordering) -> frozenset[tuple[int, int]]:
    """Arcs ``xy`` whose head ``y`` comes before ``x`` in ``ordering``."""
    pos = {v: i for i, v in enumerate(ordering)}
    return frozenset((x, y) for x, y in digraph.arcs if pos[y] < pos[x])


def leftward_arcs(digraph: Digraph, ordering) -> int:
    return len(back_arcs(digraph, ordering))


def min_fas(digraph: Digraph, n_cap: int = DEFAULT_FAS_CAP, budget: int = DEFAULT_FAS_BUDGET) -> OrderedFas:
    """Minimum FAS together with the ordering that witnesses it.

    Up to ``n_cap`` players the subset DP runs and the lexicographically
    smallest optimal ordering (by player index) is returned. Beyond that the
    bounded search handles FAS sizes up to ``budget``; the ordering is then
    the smallest topological order of the digraph minus the FAS.
    """
    n = digraph.n
    if n == 0:
        return OrderedFas((), frozenset())
    if n > n_cap:
        return _bounded_fas(digraph, budget)
    out = digraph.out_masks()
    g = fas_table(out)
    order = []
    mask = 0
    for _ in range(n):
        for v in range(n):
            bit = 1 << v
            if mask & bit:
                continue
            if bin(int(out[v]) & mask).count("1") + int(g[mask | bit]) == int(g[mask]):
                order.append(v)
                mask |= bit
                break
    order = tuple(order)
    result = OrderedFas(order, back_arcs(digraph, order))
    assert result.size == int(g[0])
    return result


def _shortest_cycle(n: int, arcs) -> list[tuple[int, int]] | None:
    succ = [[] for _ in range(n)]
    for x, y in sorted(arcs):
        succ[x].append(y)
    best = None
    for s in range(n):
        parent = {s: None}
        queue = deque([s])
        found = None
        while queue and found is None:
            u = queue.popleft()
            for w in succ[u]:
                if w == s:
                    found = u
                    break
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
        if found is None:
            continue
        cyc = [(found, s)]
        v = found
        while parent[v] is not None:
            cyc.append((parent[v], v))
            v = parent[v]
        if best is None or len(cyc) < len(best):
            best = cyc
            if len(best) == 3:
                break
    return best


def _bounded_fas(digraph: Digraph, budget: int) -> OrderedFas:
    n = digraph.n

    def search(arcs: frozenset, left: int):
        cyc = _shortest_cycle(n, arcs)
        if cyc is None:
            return frozenset()
        if left == 0:
            return None
        for a in cyc:
            sub = search(arcs - {a}, left - 1)
            if sub is not None:
                return sub | {a}
        return None

    for size in range(budget + 1):
        fas = search(digraph.arcs, size)
        if fas is not None:
            break
    else:
        raise CapExceeded(
            f"min_fas: {n} players exceeds the DP cap and the FAS is larger than the search budget {budget}"
        )
    order = _topological(n, digraph.arcs - fas)
    return OrderedFas(order, back_arcs(digraph, order))


def _topological(n: int, arcs) -> tuple[int, ...]:
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for x, y in arcs:
        succ[x].append(y)
        indeg[y] += 1
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return tuple(order)
