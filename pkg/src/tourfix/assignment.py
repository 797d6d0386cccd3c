"""Leaf-group / player-type assignment system built from a blueprint.

Rows ``s`` are leaf groups (bags) whose leaves may only receive flexible types
``t`` at or to the right of ``s``; columns are the remaining players per
flexible type. Feasibility of the transportation system is decided by an
integral maximum flow.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .blueprint import Blueprint, ImportantVertexRecord
from .typesys import TypeSystem

__all__ = [
    "AssignmentInstance",
    "AssignmentWitness",
    "Group",
    "build_assignment",
    "solve_assignment",
    "validate_witness",
    "dominance_forbidden",
]


def dominance_forbidden(flex) -> frozenset[tuple[int, int]]:
    """Cells ``(s, t)`` with ``t`` strictly left of ``s``."""
    return frozenset((s, t) for s in flex for t in flex if t < s)


@dataclass(frozen=True)
class Group:
    """Leaves below important vertex ``w`` that go to bag ``bag``.

    ``pinned`` is the flexible type of the one leaf reserved for the label
    change (K tuples), else ``None``.
    """

    w: int
    bag: int
    pinned: int | None


@dataclass(frozen=True)
class AssignmentInstance:
    flex: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    forbidden: frozenset[tuple[int, int]] = None
    groups: tuple[Group, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.forbidden is None:
            object.__setattr__(self, "forbidden", dominance_forbidden(self.flex))
        if len(self.b) != len(self.flex) or len(self.c) != len(self.flex):
            raise ValueError("b and c must align with flex")

    @property
    def key(self):
        return (self.flex, self.b, self.c, self.forbidden)

    def demand(self, s: int) -> int:
        return self.b[self.flex.index(s)]

    def supply(self, t: int) -> int:
        return self.c[self.flex.index(t)]


@dataclass(frozen=True)
class AssignmentWitness:
    x: dict[tuple[int, int], int]

    def get(self, s: int, t: int) -> int:
        return self.x.get((s, t), 0)


def build_assignment(bp: Blueprint, ivr: ImportantVertexRecord, ts: TypeSystem) -> AssignmentInstance | None:
    """Demands/supplies for a checked blueprint, or ``None`` when rejected."""
    flex = ts.flex
    idx = {t: i for i, t in enumerate(flex)}
    b = [0] * len(flex)
    c = [ts.count(t) for t in flex]
    tree = bp.tree
    groups = []
    for u, v, w in ivr.j_tuples:
        q = ts.weakest_flex_not_above(bp[v])
        b[idx[q]] += 1 << tree.height(w)
        groups.append(Group(w, q, None))
    for u, v, w, i in ivr.k_tuples:
        t = bp[v][i]
        b[idx[t]] += (1 << tree.height(w)) - 1
        c[idx[t]] -= 1
        groups.append(Group(w, t, t))
    if min(c) < 0:
        return None
    return AssignmentInstance(flex, tuple(b), tuple(c), None, tuple(groups))


def validate_witness(inst: AssignmentInstance, wit: AssignmentWitness) -> bool:
    for (s, t), val in wit.x.items():
        if s not in inst.flex or t not in inst.flex or val < 0:
            return False
        if val and (s, t) in inst.forbidden:
            return False
    for i, s in enumerate(inst.flex):
        if sum(wit.get(s, t) for t in inst.flex) != inst.b[i]:
            return False
    for i, t in enumerate(inst.flex):
        if sum(wit.get(s, t) for s in inst.flex) != inst.c[i]:
            return False
    return True


def solve_assignment(inst: AssignmentInstance) -> AssignmentWitness | None:
    """Integral witness for the transportation system, or ``None`` if infeasible."""
    if any(v < 0 for v in inst.b + inst.c) or sum(inst.b) != sum(inst.c):
        return None
    total = sum(inst.b)
    if total == 0:
        return AssignmentWitness({})
    F = len(inst.flex)
    # nodes: 0 source, 1..F rows, F+1..2F columns, 2F+1 sink
    size = 2 * F + 2
    cap = np.zeros((size, size), dtype=np.int32)
    for i in range(F):
        cap[0, 1 + i] = inst.b[i]
        cap[1 + F + i, size - 1] = inst.c[i]
    for i, s in enumerate(inst.flex):
        for j, t in enumerate(inst.flex):
            if (s, t) not in inst.forbidden:
                cap[1 + i, 1 + F + j] = total
    res = maximum_flow(csr_matrix(cap), 0, size - 1)
    if res.flow_value != total:
        return None
    flow = res.flow.toarray()
    x = {}
    for i, s in enumerate(inst.flex):
        for j, t in enumerate(inst.flex):
            val = int(flow[1 + i, 1 + F + j])
            if val > 0:
                x[(s, t)] = val
    return AssignmentWitness(x)
