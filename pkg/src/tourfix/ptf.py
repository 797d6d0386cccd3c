"""Probabilistic tournament fixing by reduction to STF over completion events."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Sequence

from .blueprint import DEFAULT_K_CAP
from .bracket import win_probability
from .errors import CapExceeded
from .instance import ProbabilityInstance, StfInstance, TournamentDigraph, certainty_digraph
from .stf import solve_stf

__all__ = [
    "Completion",
    "Event",
    "PtfVerdict",
    "DEFAULT_UNCERTAINTY_CAP",
    "enumerate_completions",
    "enumerate_minimal_events",
    "enumerate_all_events",
    "solve_ptf",
]

DEFAULT_UNCERTAINTY_CAP = 4


@dataclass(frozen=True)
class Completion:
    tournament: TournamentDigraph
    probability: Fraction


@dataclass(frozen=True)
class Event:
    members: tuple[int, ...]
    weight: Fraction


@dataclass(frozen=True)
class PtfVerdict:
    answer: bool
    witness: tuple[int, ...] | None = None
    achieved: Fraction | None = None
    events_tried: int = field(default=0, compare=False)


def enumerate_completions(inst: ProbabilityInstance, cap: int = DEFAULT_UNCERTAINTY_CAP) -> list[Completion]:
    """All orientations of the fractional pairs on top of the certainty digraph."""
    pairs = inst.fractional_pairs()
    if len(pairs) > cap:
        raise CapExceeded(
            f"degree of uncertainty {len(pairs)} exceeds cap {cap}; "
            "the reduction visits up to 2^(2^k) events"
        )
    base = certainty_digraph(inst).arcs
    P = inst.matrix
    out = []
    for bits in product((0, 1), repeat=len(pairs)):
        arcs = set(base)
        prob = Fraction(1)
        for (u, v), bit in zip(pairs, bits):
            if bit:
                u, v = v, u
            arcs.add((u, v))
            prob *= P[u][v]
        out.append(Completion(TournamentDigraph(inst.players, frozenset(arcs)), prob))
    return out


def enumerate_minimal_events(completions: Sequence[Completion], target: Fraction) -> Iterator[Event]:
    """Nonempty events of weight >= target from which no member can be dropped.

    Dropping the only member of a singleton would leave the empty event, which
    is never allowed, so every heavy-enough singleton counts as minimal.
    """
    probs = [c.probability for c in completions]
    k = len(probs)
    suffix = [Fraction(0)] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] + probs[i]

    def walk(i: int, chosen: list[int], weight: Fraction):
        if chosen and weight >= target:
            if len(chosen) == 1 or weight - min(probs[j] for j in chosen) < target:
                yield Event(tuple(chosen), weight)
            return
        if i == k or weight + suffix[i] < target:
            return
        chosen.append(i)
        yield from walk(i + 1, chosen, weight + probs[i])
        chosen.pop()
        yield from walk(i + 1, chosen, weight)

    yield from walk(0, [], Fraction(0))


def enumerate_all_events(completions: Sequence[Completion], target: Fraction) -> Iterator[Event]:
    """Every nonempty event of weight >= target, smallest first."""
    k = len(completions)
    for size in range(1, k + 1):
        for members in combinations(range(k), size):
            w = sum((completions[j].probability for j in members), Fraction(0))
            if w >= target:
                yield Event(members, w)


def solve_ptf(
    inst: ProbabilityInstance,
    events: str = "minimal",
    uncertainty_cap: int = DEFAULT_UNCERTAINTY_CAP,
    k_cap: int = DEFAULT_K_CAP,
    threads: int = 1,
) -> PtfVerdict:
    """Decide whether some seeding makes the favorite win with probability >= target.

    ``events`` selects ``"minimal"`` (default) or ``"all"`` event enumeration.
    With ``threads > 1`` events are solved concurrently; the reported witness
    is still the one from the first successful event in enumeration order.
    """
    alpha = inst.favorite_index
    if inst.target == 0:
        seeding = tuple(range(inst.n))
        return PtfVerdict(True, seeding, win_probability(seeding, inst)[alpha])
    completions = enumerate_completions(inst, cap=uncertainty_cap)
    source = enumerate_minimal_events if events == "minimal" else enumerate_all_events
    evs = list(source(completions, inst.target))

    def run(ev: Event):
        stf = StfInstance(tuple(completions[j].tournament for j in ev.members), inst.favorite)
        return solve_stf(stf, k_cap=k_cap)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(run, evs))
        hits = [(i, r) for i, r in enumerate(results) if r.answer]
        if not hits:
            return PtfVerdict(False, events_tried=len(evs))
        i, verdict = hits[0]
        return PtfVerdict(True, verdict.witness, win_probability(verdict.witness, inst)[alpha], i + 1)
    for i, ev in enumerate(evs):
        verdict = run(ev)
        if verdict.answer:
            achieved = win_probability(verdict.witness, inst)[alpha]
            return PtfVerdict(True, verdict.witness, achieved, i + 1)
    return PtfVerdict(False, events_tried=len(evs))
