"""Simultaneous tournament fixing: blueprint search plus seeding reconstruction."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .assignment import AssignmentInstance, AssignmentWitness, build_assignment, solve_assignment
from .blueprint import DEFAULT_K_CAP, Blueprint, enumerate_blueprints, important_vertices
from .bracket import BracketTree, check_seeding, evaluate_bracket
from .errors import InternalError
from .fas import DEFAULT_FAS_CAP, OrderedFas, min_fas
from .instance import InstanceParameters, StfInstance, shared_structure
from .typesys import TypesDigraph, TypeSystem, compute_types, types_digraphs

__all__ = ["StfContext", "StfVerdict", "prepare", "solve_stf", "reconstruct_seeding", "verify_seeding"]


@dataclass(frozen=True)
class StfContext:
    """Everything derived from an instance before the blueprint search."""

    stf: StfInstance
    params: InstanceParameters
    ofas: OrderedFas
    ts: TypeSystem
    digraphs: tuple[TypesDigraph, ...]

    @property
    def k(self) -> int:
        return self.params.k

    def blueprints(self, winner: int | None = None, k_cap: int = DEFAULT_K_CAP):
        return enumerate_blueprints(self.digraphs, self.stf.n, self.ts, winner=winner, k=self.k, k_cap=k_cap)


@dataclass(frozen=True)
class StfVerdict:
    answer: bool
    witness: tuple[int, ...] | None = None
    per_scenario_winners: tuple[int, ...] | None = None
    params: InstanceParameters | None = field(default=None, compare=False)
    blueprints_examined: int = field(default=0, compare=False)


def prepare(stf: StfInstance, n_cap: int = DEFAULT_FAS_CAP) -> StfContext:
    params = shared_structure(stf, n_cap=n_cap)
    ofas = min_fas(params.shared_arcs, n_cap=n_cap)
    ts = compute_types(stf, ofas)
    return StfContext(stf, params, ofas, ts, tuple(types_digraphs(stf, ts)))


def verify_seeding(seeding: Sequence[int], stf: StfInstance) -> tuple[int, ...]:
    """Bracket winner in each scenario."""
    seeding = check_seeding(seeding, stf.n)
    return tuple(evaluate_bracket(seeding, t).winner for t in stf.tournaments)


def reconstruct_seeding(
    bp: Blueprint, witness: AssignmentWitness, inst: AssignmentInstance, ts: TypeSystem
) -> tuple[int, ...]:
    """Turn a blueprint and a feasible assignment into a player seeding.

    Ties are broken towards the lowest leaf position and lowest player index.
    """
    n = bp.n
    tree = BracketTree(n)
    seeding: list[int | None] = [None] * n
    pools = {t: list(ts.members[t]) for t in ts.flex}
    for v, vec in bp.labels:
        if v >= n:
            seeding[tree.position(v)] = ts.player_of(vec[0])
    bags: dict[int, list[int]] = {s: [] for s in ts.flex}
    for g in inst.groups:
        leaves = list(tree.leaf_range(g.w))
        if g.pinned is not None:
            z = leaves.pop(0)
            if not pools[g.pinned]:
                raise InternalError(f"no player of type {ts.name(g.pinned)} left for a pinned leaf")
            seeding[z] = pools[g.pinned].pop(0)
        bags[g.bag].extend(leaves)
    for s in ts.flex:
        leaves = sorted(bags[s])
        if len(leaves) != inst.demand(s):
            raise InternalError(f"bag {ts.name(s)} holds {len(leaves)} leaves, expected {inst.demand(s)}")
        for t in ts.flex:
            for _ in range(witness.get(s, t)):
                if not pools[t] or not leaves:
                    raise InternalError("witness does not match the available players")
                seeding[leaves.pop(0)] = pools[t].pop(0)
        if leaves:
            raise InternalError(f"bag {ts.name(s)} left unfilled")
    if any(p is None for p in seeding) or any(pools.values()):
        raise InternalError("reconstruction did not produce a bijection")
    return tuple(seeding)


def solve_stf(stf: StfInstance, k_cap: int = DEFAULT_K_CAP, n_cap: int = DEFAULT_FAS_CAP) -> StfVerdict:
    """Decide STF; a yes verdict carries a verified witness seeding."""
    ctx = prepare(stf, n_cap=n_cap)
    alpha = stf.favorite_index
    cache: dict = {}
    examined = 0
    for bp in ctx.blueprints(winner=alpha, k_cap=k_cap):
        examined += 1
        inst = build_assignment(bp, important_vertices(bp), ctx.ts)
        if inst is None:
            continue
        if inst.key in cache:
            wit = cache[inst.key]
        else:
            wit = cache[inst.key] = solve_assignment(inst)
        if wit is None:
            continue
        seeding = reconstruct_seeding(bp, wit, inst, ctx.ts)
        winners = verify_seeding(seeding, stf)
        if any(w != alpha for w in winners):
            raise InternalError(f"reconstructed seeding {seeding} loses: winners {winners}")
        return StfVerdict(True, seeding, winners, ctx.params, examined)
    return StfVerdict(False, None, None, ctx.params, examined)
