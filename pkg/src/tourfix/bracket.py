"""The implicit perfect binary bracket, deterministic and probabilistic play.

Nodes are heap indexed: root ``1``, children of ``v`` are ``2v`` and ``2v+1``,
leaves are ``n .. 2n-1`` and leaf position ``p`` (left to right) is node
``n + p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Sequence

from .errors import InstanceError
from .instance import ProbabilityInstance, TournamentDigraph, is_power_of_two

__all__ = [
    "BracketTree",
    "BracketLabeling",
    "evaluate_bracket",
    "evaluate_labels",
    "evaluate_types_bracket",
    "win_probability",
    "count_type_changes",
    "check_seeding",
]


@dataclass(frozen=True)
class BracketTree:
    n: int

    def __post_init__(self):
        if not is_power_of_two(self.n):
            raise InstanceError(f"n = {self.n} is not a power of 2")

    @property
    def depth(self) -> int:
        return self.n.bit_length() - 1

    @property
    def size(self) -> int:
        return 2 * self.n - 1

    def height(self, v: int) -> int:
        return self.depth - (v.bit_length() - 1)

    def is_leaf(self, v: int) -> bool:
        return v >= self.n

    def leaf(self, position: int) -> int:
        return self.n + position

    def position(self, leaf: int) -> int:
        return leaf - self.n

    def leaf_range(self, v: int) -> range:
        """Leaf positions below ``v``."""
        h = self.height(v)
        first = (v << h) - self.n
        return range(first, first + (1 << h))

    def ancestors(self, v: int) -> list[int]:
        """``v`` and its ancestors, bottom-up."""
        out = []
        while v >= 1:
            out.append(v)
            v >>= 1
        return out

    def sibling(self, v: int) -> int:
        return v ^ 1


@dataclass(frozen=True)
class BracketLabeling:
    """Heap-indexed labels; ``labels[0]`` is unused."""

    labels: tuple

    def __getitem__(self, v: int):
        return self.labels[v]

    @property
    def winner(self):
        return self.labels[1]

    @property
    def n(self) -> int:
        return len(self.labels) // 2

    def path_labels(self, position: int) -> list:
        """Labels from leaf ``position`` up to the root."""
        v = self.n + position
        out = []
        while v >= 1:
            out.append(self.labels[v])
            v >>= 1
        return out


def evaluate_labels(seeding: Sequence[Hashable], winner: Callable[[Hashable, Hashable], Hashable]) -> BracketLabeling:
    """Play the bracket bottom-up; ``winner(left, right)`` decides each match."""
    n = len(seeding)
    if not is_power_of_two(n):
        raise InstanceError(f"seeding length {n} is not a power of 2")
    labels: list = [None] * (2 * n)
    labels[n:] = list(seeding)
    for v in range(n - 1, 0, -1):
        labels[v] = winner(labels[2 * v], labels[2 * v + 1])
    return BracketLabeling(tuple(labels))


def check_seeding(seeding: Sequence[int], n: int) -> tuple[int, ...]:
    seeding = tuple(int(p) for p in seeding)
    if len(seeding) != n or sorted(seeding) != list(range(n)):
        raise InstanceError("seeding is not a bijection onto the players")
    return seeding


def evaluate_bracket(seeding: Sequence[int], tournament: TournamentDigraph) -> BracketLabeling:
    seeding = check_seeding(seeding, tournament.n)
    arcs = tournament.arcs
    return evaluate_labels(seeding, lambda u, w: u if (u, w) in arcs else w)


def evaluate_types_bracket(types_seeding: Sequence[int], types_digraph) -> BracketLabeling:
    """Bracket over a Types-seeding; equal labels leave the label unchanged."""
    return evaluate_labels(types_seeding, types_digraph.winner)


def win_probability(seeding: Sequence[int], inst: ProbabilityInstance) -> dict[int, Fraction]:
    """Exact probability of each player winning the bracket."""
    seeding = check_seeding(seeding, inst.n)
    P = inst.matrix
    level = [{p: Fraction(1)} for p in seeding]
    while len(level) > 1:
        nxt = []
        for left, right in zip(level[0::2], level[1::2]):
            dist = {}
            for p, rp in left.items():
                dist[p] = rp * sum((rq * P[p][q] for q, rq in right.items()), Fraction(0))
            for q, rq in right.items():
                dist[q] = rq * sum((rp * P[q][p] for p, rp in left.items()), Fraction(0))
            nxt.append(dist)
        level = nxt
    dist = level[0]
    return {p: dist.get(p, Fraction(0)) for p in range(inst.n)}


def count_type_changes(labeling: BracketLabeling, type_of: Callable[[Hashable], Hashable]) -> int:
    """Largest number of label-type changes along any leaf-to-root path."""
    worst = 0
    for pos in range(labeling.n):
        seq = [type_of(x) for x in labeling.path_labels(pos)]
        worst = max(worst, sum(1 for a, b in zip(seq, seq[1:]) if a != b))
    return worst
