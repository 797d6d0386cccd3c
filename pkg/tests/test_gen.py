import pytest
from hypothesis import given, strategies as st

from tourfix.errors import InstanceError
from tourfix.fas import min_fas
from tourfix.gen import GenSpec, gen_random_ptf, gen_random_stf, hardness_stf_from_tf
from tourfix.instance import degree_of_uncertainty, parse_instance, serialize_instance, shared_structure
from tourfix.oracle import oracle_stf, oracle_tf

from conftest import all_tournaments, names


def test_deterministic_bytes():
    spec = GenSpec(n=8, m=3, private_pairs=3, target_back_arcs=2, rng_seed=99)
    assert serialize_instance(gen_random_stf(spec)) == serialize_instance(gen_random_stf(spec))
    pspec = GenSpec(n=8, fractional_pairs=3, rng_seed=99)
    assert serialize_instance(gen_random_ptf(pspec)) == serialize_instance(gen_random_ptf(pspec))


def test_transitive_default():
    stf = gen_random_stf(GenSpec(n=8))
    assert stf.tournaments[0].is_acyclic()
    assert shared_structure(stf).shared_fas_size == 0


def test_one_private_pair():
    stf = gen_random_stf(GenSpec(n=8, m=2, private_pairs=1, rng_seed=4))
    assert shared_structure(stf).private_arc_count == 1


@given(st.integers(0, 10**6), st.integers(0, 4))
def test_shared_fas_at_most_target(seed, back):
    stf = gen_random_stf(GenSpec(n=8, m=2, private_pairs=2, target_back_arcs=back, rng_seed=seed))
    assert shared_structure(stf).shared_fas_size <= back


def test_fractional_counts():
    assert degree_of_uncertainty(gen_random_ptf(GenSpec(n=4, rng_seed=1))) == 0
    assert degree_of_uncertainty(gen_random_ptf(GenSpec(n=4, fractional_pairs=2, rng_seed=1))) == 2


@given(st.integers(0, 10**6), st.sampled_from([2, 4, 8]))
def test_ptf_outputs_validate(seed, n):
    inst = gen_random_ptf(GenSpec(n=n, fractional_pairs=1, rng_seed=seed))
    assert parse_instance(serialize_instance(inst)) == inst
    assert all(x.denominator <= 64 for row in inst.matrix for x in row)


def test_bad_specs():
    with pytest.raises(InstanceError):
        GenSpec(n=6)
    with pytest.raises(InstanceError):
        GenSpec(n=4, m=3, private_pairs=1)
    with pytest.raises(InstanceError):
        GenSpec(n=4, target_back_arcs=7)


def test_hardness_on_all_four_player_tournaments():
    for t in all_tournaments(4):
        for fav in names(4):
            stf = hardness_stf_from_tf(t, fav)
            alpha = t.players.index(fav)
            second = stf.tournaments[-1]
            assert all(second.winner(alpha, v) == alpha for v in range(4) if v != alpha)
            assert shared_structure(stf).shared_fas_size == 0
            assert oracle_stf(stf).answer == oracle_tf(t, fav).answer
