"""Brute-force ground truth over all seedings (small n only)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from .bracket import win_probability
from .errors import CapExceeded
from .instance import ProbabilityInstance, StfInstance, TournamentDigraph
from .kernels import bracket_winners

__all__ = ["OracleReport", "all_seedings", "oracle_stf", "oracle_tf", "oracle_ptf", "DEFAULT_ORACLE_CAP"]

DEFAULT_ORACLE_CAP = 8


@dataclass(frozen=True)
class OracleReport:
    answer: bool
    witness: tuple[int, ...] | None = None
    best_probability: Fraction | None = None


def _draws(players: tuple[int, ...]):
    if len(players) == 1:
        yield players
        return
    first, rest = players[0], players[1:]
    half = len(players) // 2
    for left_rest in combinations(rest, half - 1):
        left = (first,) + left_rest
        right = tuple(p for p in rest if p not in left_rest)
        for a in _draws(left):
            for b in _draws(right):
                yield a + b


def all_seedings(n: int, symmetry: bool = True) -> np.ndarray:
    """Every seeding, or one per class under sibling swaps when ``symmetry``."""
    gen = _draws(tuple(range(n))) if symmetry else permutations(range(n))
    return np.array(list(gen), dtype=np.int64).reshape(-1, n)


def _cap(n: int, cap: int):
    if n > cap:
        raise CapExceeded(f"oracle: {n} players exceeds cap {cap}")


def oracle_stf(stf: StfInstance, symmetry: bool = True, cap: int = DEFAULT_ORACLE_CAP) -> OracleReport:
    _cap(stf.n, cap)
    seeds = all_seedings(stf.n, symmetry)
    winners = bracket_winners(seeds, stf.beats)
    ok = np.all(winners == stf.favorite_index, axis=1)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return OracleReport(False)
    return OracleReport(True, tuple(int(p) for p in seeds[hits[0]]))


def oracle_tf(tournament: TournamentDigraph, favorite: str, **kw) -> OracleReport:
    return oracle_stf(StfInstance((tournament,), favorite), **kw)


def oracle_ptf(inst: ProbabilityInstance, symmetry: bool = True, cap: int = DEFAULT_ORACLE_CAP) -> OracleReport:
    """Maximise the favorite's exact win probability over all seedings."""
    _cap(inst.n, cap)
    alpha = inst.favorite_index
    best, arg = None, None
    for seeding in all_seedings(inst.n, symmetry):
        seeding = tuple(int(p) for p in seeding)
        p = win_probability(seeding, inst)[alpha]
        if best is None or p > best:
            best, arg = p, seeding
    return OracleReport(best >= inst.target, arg, best)
