import random
from itertools import combinations

import pytest
from hypothesis import settings, strategies as st

from tourfix.instance import StfInstance, TournamentDigraph

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def names(n):
    return tuple(f"p{i}" for i in range(n))


def tournament_from_bits(n, bits):
    arcs = set()
    for (u, v), b in zip(combinations(range(n), 2), bits):
        arcs.add((u, v) if b else (v, u))
    return TournamentDigraph(names(n), frozenset(arcs))


def random_tournament(rng: random.Random, n: int) -> TournamentDigraph:
    return tournament_from_bits(n, [rng.randrange(2) for _ in range(n * (n - 1) // 2)])


def all_tournaments(n):
    pairs = n * (n - 1) // 2
    for mask in range(1 << pairs):
        yield tournament_from_bits(n, [(mask >> i) & 1 for i in range(pairs)])


@st.composite
def tournaments(draw, sizes=(2, 4, 8)):
    n = draw(st.sampled_from(sizes))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return tournament_from_bits(n, bits)


@st.composite
def stf_instances(draw, sizes=(2, 4), max_m=3):
    n = draw(st.sampled_from(sizes))
    m = draw(st.integers(1, max_m))
    ts = tuple(draw(tournaments(sizes=(n,))) for _ in range(m))
    fav = draw(st.sampled_from(names(n)))
    return StfInstance(ts, fav)


@pytest.fixture
def rng():
    return random.Random(12345)


def brute_assignment(flex, b, c, forbidden) -> bool:
    """Exhaustive integer search: fill rows one at a time, bounded by column supplies."""
    F = len(flex)
    if sum(b) != sum(c) or min(b + c, default=0) < 0:
        return False
    allowed = [[j for j in range(F) if (flex[i], flex[j]) not in forbidden] for i in range(F)]

    def rows(i, left):
        if i == F:
            return all(x == 0 for x in left)
        return any(rows(i + 1, rest) for rest in compositions(b[i], allowed[i], left))

    def compositions(total, cols, left):
        if not cols:
            if total == 0:
                yield tuple(left)
            return
        j, more = cols[0], cols[1:]
        for take in range(min(total, left[j]) + 1):
            nl = list(left)
            nl[j] -= take
            yield from compositions(total - take, more, nl)

    return rows(0, list(c))


def random_assignment_instance(rng: random.Random):
    from tourfix.assignment import AssignmentInstance

    F = rng.randint(1, 4)
    flex = tuple(2 * i for i in range(F))
    total = rng.randint(0, 12)
    b = [0] * F
    for _ in range(total):
        b[rng.randrange(F)] += 1
    c = [0] * F
    for _ in range(total + rng.choice([0, 0, 0, -1, 1])):
        c[rng.randrange(F)] += 1
    if rng.random() < 0.5:
        forbidden = None
    else:
        forbidden = frozenset((s, t) for s in flex for t in flex if rng.random() < 0.3)
    return AssignmentInstance(flex, tuple(b), tuple(c), forbidden)
