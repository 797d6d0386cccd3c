"""Seeded random instance generators and the two-scenario hardness construction."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InstanceError
from .instance import ProbabilityInstance, StfInstance, TournamentDigraph, is_power_of_two

__all__ = ["GenSpec", "gen_random_stf", "gen_random_ptf", "hardness_stf_from_tf", "MAX_DENOMINATOR"]

MAX_DENOMINATOR = 64


@dataclass(frozen=True)
class GenSpec:
    n: int
    m: int = 1
    private_pairs: int = 0
    fractional_pairs: int = 0
    target_back_arcs: int = 0
    rng_seed: int = 0

    def __post_init__(self):
        if not is_power_of_two(self.n):
            raise InstanceError(f"n = {self.n} is not a power of 2")
        pairs = self.n * (self.n - 1) // 2
        for name in ("private_pairs", "fractional_pairs", "target_back_arcs"):
            val = getattr(self, name)
            if not 0 <= val <= pairs:
                raise InstanceError(f"{name} = {val} outside [0, {pairs}]")
        if self.m < 1:
            raise InstanceError("m must be positive")
        if self.m > 1 and self.m > 2 ** self.private_pairs:
            raise InstanceError(f"m = {self.m} distinct scenarios need at least log2(m) private pairs")


def _names(n: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(n))


def _base(rng: random.Random, n: int, back_arcs: int) -> set[tuple[int, int]]:
    order = list(range(n))
    rng.shuffle(order)
    arcs = {(order[i], order[j]) for i in range(n) for j in range(i + 1, n)}
    for u, v in rng.sample(sorted(arcs), back_arcs):
        arcs.remove((u, v))
        arcs.add((v, u))
    return arcs


def gen_random_stf(spec: GenSpec) -> StfInstance:
    """Transitive base with flipped arcs; scenarios re-orient a few private pairs."""
    rng = random.Random(spec.rng_seed)
    n = spec.n
    players = _names(n)
    base = _base(rng, n, spec.target_back_arcs)
    favorite = players[rng.randrange(n)]
    if spec.m == 1:
        return StfInstance((TournamentDigraph(players, frozenset(base)),), favorite)
    pairs = rng.sample(list(combinations(range(n), 2)), spec.private_pairs)
    p = len(pairs)
    # first two scenarios are complementary so every chosen pair is private
    first = tuple(rng.randrange(2) for _ in range(p))
    vectors = [first, tuple(1 - x for x in first)]
    while len(vectors) < spec.m:
        vec = tuple(rng.randrange(2) for _ in range(p))
        if vec not in vectors:
            vectors.append(vec)
    tournaments = []
    for vec in vectors:
        arcs = {a for a in base if tuple(sorted(a)) not in pairs}
        for (u, v), bit in zip(pairs, vec):
            arcs.add((u, v) if bit else (v, u))
        tournaments.append(TournamentDigraph(players, frozenset(arcs)))
    return StfInstance(tuple(tournaments), favorite)


def gen_random_ptf(spec: GenSpec) -> ProbabilityInstance:
    """Like :func:`gen_random_stf` with fractional pairs instead of scenarios."""
    rng = random.Random(spec.rng_seed)
    n = spec.n
    players = _names(n)
    base = _base(rng, n, spec.target_back_arcs)
    favorite = players[rng.randrange(n)]
    mat = [[Fraction(0)] * n for _ in range(n)]
    for u, v in base:
        mat[u][v] = Fraction(1)
    for u, v in rng.sample(list(combinations(range(n), 2)), spec.fractional_pairs):
        den = rng.randint(2, MAX_DENOMINATOR)
        q = Fraction(rng.randint(1, den - 1), den)
        mat[u][v], mat[v][u] = q, 1 - q
    target = Fraction(rng.randint(0, MAX_DENOMINATOR), MAX_DENOMINATOR)
    return ProbabilityInstance(players, tuple(map(tuple, mat)), target, favorite)


def hardness_stf_from_tf(tournament: TournamentDigraph, favorite: str) -> StfInstance:
    """Pair the tournament with an acyclic one where the favorite beats everyone.

    The acyclic tournament ranks the favorite first and the remaining players
    in input order.
    """
    alpha = tournament.players.index(favorite)
    order = [alpha] + [p for p in range(tournament.n) if p != alpha]
    second = TournamentDigraph.from_order(tournament.players, order)
    return StfInstance((tournament, second), favorite)
