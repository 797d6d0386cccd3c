"""Affected vertices, the type function and Types-digraphs.

Types are encoded as integer *ranks* along the FAS ordering: flexible type
``j`` (1-based) has rank ``2(j-1)`` and the affected vertex ``a_j`` has rank
``2j-1``. A smaller rank sits further left, so outside pairs of affected
vertices the smaller rank wins.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .fas import OrderedFas
from .instance import StfInstance

__all__ = ["TypeSystem", "TypesDigraph", "compute_types", "types_digraph", "types_digraphs", "affected_vertices"]


@dataclass(frozen=True)
class TypeSystem:
    players: tuple[str, ...]
    order: tuple[int, ...]
    affected: tuple[int, ...]
    type_of: tuple[int, ...]

    @property
    def n_types(self) -> int:
        return 2 * len(self.affected) + 1

    @property
    def types(self) -> tuple[int, ...]:
        return tuple(range(self.n_types))

    @property
    def flex(self) -> tuple[int, ...]:
        return tuple(range(0, self.n_types, 2))

    @property
    def singular(self) -> tuple[int, ...]:
        return tuple(range(1, self.n_types, 2))

    @staticmethod
    def is_flex(t: int) -> bool:
        return t % 2 == 0

    def player_of(self, t: int) -> int:
        """The affected player behind a singular type."""
        return self.affected[(t - 1) // 2]

    def singular_type(self, player: int) -> int:
        return 2 * self.affected.index(player) + 1

    @cached_property
    def members(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {t: [] for t in self.types}
        for p, t in enumerate(self.type_of):
            out[t].append(p)
        return {t: tuple(ps) for t, ps in out.items()}

    def count(self, t: int) -> int:
        return len(self.members[t])

    def name(self, t: int) -> str:
        if self.is_flex(t):
            return f"#{t // 2 + 1}"
        return self.players[self.player_of(t)]

    def weakest_flex_not_above(self, labels) -> int:
        """Strongest flexible type that every label beats or equals.

        Labels beat every flexible type of larger rank, so the answer is the
        flexible type just right of the weakest label (or the label itself
        when that label is flexible).
        """
        worst = max(labels)
        return worst if self.is_flex(worst) else worst + 1


def affected_vertices(stf: StfInstance, ofas: OrderedFas) -> set[int]:
    shared = frozenset.intersection(*(t.arcs for t in stf.tournaments))
    out = {stf.favorite_index}
    for x, y in ofas.back_arcs:
        out.update((x, y))
    for x, y in stf.tournaments[0].arcs - shared:
        out.update((x, y))
    return out


def compute_types(stf: StfInstance, ofas: OrderedFas) -> TypeSystem:
    pos = ofas.position()
    affected = tuple(sorted(affected_vertices(stf, ofas), key=pos.__getitem__))
    apos = [pos[a] for a in affected]
    type_of = []
    for v in range(stf.n):
        if v in affected:
            type_of.append(2 * affected.index(v) + 1)
            continue
        j = next((i for i, p in enumerate(apos) if pos[v] < p), len(affected))
        type_of.append(2 * j)
    return TypeSystem(stf.players, tuple(ofas.ordering), affected, tuple(type_of))


@dataclass(frozen=True, eq=False)
class TypesDigraph:
    """Tournament over types for one scenario; ``beats[x, y]`` iff x beats y."""

    ts: TypeSystem
    beats: np.ndarray

    def winner(self, x: int, y: int) -> int:
        if x == y or self.beats[x, y]:
            return x
        return y

    @cached_property
    def table(self) -> tuple[tuple[int, ...], ...]:
        T = self.ts.n_types
        return tuple(tuple(self.winner(x, y) for y in range(T)) for x in range(T))

    def arcs(self) -> frozenset[tuple[int, int]]:
        T = self.ts.n_types
        return frozenset((x, y) for x in range(T) for y in range(T) if self.beats[x, y])


def types_digraph(stf: StfInstance, ts: TypeSystem, i: int) -> TypesDigraph:
    T = ts.n_types
    d = stf.tournaments[i]
    beats = np.zeros((T, T), dtype=bool)
    for x in range(T):
        for y in range(T):
            if x == y:
                continue
            if not ts.is_flex(x) and not ts.is_flex(y):
                beats[x, y] = d.has_arc(ts.player_of(x), ts.player_of(y))
            else:
                beats[x, y] = x < y
    beats.setflags(write=False)
    return TypesDigraph(ts, beats)


def types_digraphs(stf: StfInstance, ts: TypeSystem) -> list[TypesDigraph]:
    return [types_digraph(stf, ts, i) for i in range(stf.m)]
