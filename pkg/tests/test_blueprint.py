import random

import pytest

from tourfix.blueprint import (
    Blueprint,
    blueprint_from_seeding,
    check_blueprint,
    enumerate_blueprints,
    important_vertices,
)
from tourfix.errors import CapExceeded
from tourfix.gen import GenSpec, gen_random_stf
from tourfix.instance import StfInstance, TournamentDigraph
from tourfix.oracle import oracle_stf
from tourfix.stf import prepare

from conftest import names


def two_player_ctx():
    t = TournamentDigraph(("a", "b"), frozenset({(0, 1)}))
    return prepare(StfInstance((t,), "a"))


def test_two_player_path_blueprint():
    ctx = two_player_ctx()
    alpha = ctx.ts.singular_type(0)
    bp = Blueprint(2, ctx.ts.affected, ((1, (alpha,)), (2, (alpha,))))
    assert check_blueprint(bp, ctx.digraphs, ctx.ts)


def test_two_player_bad_root():
    ctx = two_player_ctx()
    alpha = ctx.ts.singular_type(0)
    weak = ctx.ts.type_of[1]
    bp = Blueprint(2, ctx.ts.affected, ((1, (weak,)), (2, (alpha,))))
    assert not check_blueprint(bp, ctx.digraphs, ctx.ts)


def test_two_player_stream():
    ctx = two_player_ctx()
    every = list(ctx.blueprints())
    # root-leaf path of length 1; the root is alpha or the flexible type above it
    assert len(every) == 2
    assert all(bp.nodes == {1, 2} for bp in every)
    assert [bp[1] for bp in ctx.blueprints(winner=0)] == [(ctx.ts.singular_type(0),)]


def test_identity_seeding_blueprint_in_stream():
    t = TournamentDigraph.from_order(names(4), [0, 1, 2, 3])
    ctx = prepare(StfInstance((t,), "p0"))
    target = blueprint_from_seeding([0, 1, 2, 3], ctx.digraphs, ctx.ts)
    assert target in set(ctx.blueprints(winner=0))


def random_solvable(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = rng.choice([1, 2, 3])
        spec = GenSpec(n=8, m=m, private_pairs=rng.randint(2, 3) if m > 1 else 0,
                       target_back_arcs=rng.randint(0, 3), rng_seed=rng.randrange(2**31))
        stf = gen_random_stf(spec)
        rep = oracle_stf(stf)
        if rep.answer:
            out.append((stf, rep.witness))
    return out


@pytest.mark.parametrize("stf,witness", random_solvable(40, seed=7))
def test_witness_blueprint_checks_and_is_streamed(stf, witness):
    ctx = prepare(stf)
    bp = blueprint_from_seeding(witness, ctx.digraphs, ctx.ts)
    assert check_blueprint(bp, ctx.digraphs, ctx.ts)
    assert bp in set(ctx.blueprints(winner=stf.favorite_index))


@pytest.mark.parametrize("seed", range(8))
def test_stream_is_checked_and_duplicate_free(seed):
    rng = random.Random(seed)
    stf = gen_random_stf(GenSpec(n=8, m=2, private_pairs=2, target_back_arcs=1, rng_seed=seed))
    ctx = prepare(stf)
    seen = set()
    for bp in ctx.blueprints():
        assert check_blueprint(bp, ctx.digraphs, ctx.ts)
        assert bp not in seen
        seen.add(bp)
        if rng.random() < 0.2:
            assert Blueprint.from_encoding(bp.n, bp.leaf_order, bp.path_attach, bp.label_runs) == bp
    assert seen


def test_no_label_change_means_no_k_tuples():
    ctx = two_player_ctx()
    alpha = ctx.ts.singular_type(0)
    ivr = important_vertices(Blueprint(2, ctx.ts.affected, ((1, (alpha,)), (2, (alpha,)))))
    assert ivr.k_tuples == ()
    assert ivr.j_tuples == ((2, 1, 3),)


def test_single_change_at_root():
    # favorite is the weakest player; the strongest flexible type takes the root
    t = TournamentDigraph.from_order(names(4), [1, 2, 3, 0])
    ctx = prepare(StfInstance((t,), "p0"))
    a = ctx.ts.singular_type(0)
    top = ctx.ts.flex[0]
    bp = Blueprint(4, ctx.ts.affected, ((1, (top,)), (2, (a,)), (4, (a,))))
    assert check_blueprint(bp, ctx.digraphs, ctx.ts)
    ivr = important_vertices(bp)
    assert [k[2] for k in ivr.k_tuples] == [3]
    assert ivr.k_tuples[0][3] == 0
    assert [j[2] for j in ivr.j_tuples] == [5]


@pytest.mark.parametrize("seed", range(5))
def test_important_children_partition(seed):
    stf = gen_random_stf(GenSpec(n=8, m=2, private_pairs=2, target_back_arcs=2, rng_seed=100 + seed))
    ctx = prepare(stf)
    for count, bp in enumerate(ctx.blueprints()):
        ivr = important_vertices(bp)
        listed = [j[2] for j in ivr.j_tuples] + [k[2] for k in ivr.k_tuples]
        expected = [c for v in bp.nodes if v < bp.n for c in (2 * v, 2 * v + 1) if c not in bp.nodes]
        assert sorted(listed) == sorted(expected)
        if count > 200:
            break


def test_k_cap():
    stf = gen_random_stf(GenSpec(n=8, m=2, private_pairs=3, target_back_arcs=2, rng_seed=5))
    ctx = prepare(stf)
    with pytest.raises(CapExceeded):
        next(iter(ctx.blueprints(k_cap=ctx.k - 1)))


def test_dump_is_text():
    ctx = two_player_ctx()
    bp = next(iter(ctx.blueprints(winner=0)))
    assert isinstance(bp.dump(), str) and bp.dump()
