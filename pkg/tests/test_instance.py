import json
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from tourfix.errors import InstanceError
from tourfix.fas import leftward_arcs
from tourfix.gen import GenSpec, gen_random_ptf, gen_random_stf
from tourfix.instance import (
    Digraph,
    ProbabilityInstance,
    StfInstance,
    TournamentDigraph,
    certainty_digraph,
    degree_of_uncertainty,
    format_rational,
    parse_instance,
    parse_rational,
    serialize_instance,
    shared_structure,
)


def ptf_text(players, matrix, target, favorite):
    return json.dumps({"kind": "ptf", "players": players, "matrix": matrix, "target": target, "favorite": favorite})


def test_two_player_ptf_file():
    inst = parse_instance(ptf_text(["a", "b"], [[0, "7/10"], ["3/10", 0]], "7/10", "a"))
    assert isinstance(inst, ProbabilityInstance)
    assert inst.matrix[0][1] == Fraction(7, 10)
    assert inst.target == Fraction(7, 10)


def test_three_players_rejected():
    text = json.dumps({"kind": "tf", "players": ["a", "b", "c"], "favorite": "a", "tournaments": [[]]})
    with pytest.raises(InstanceError, match="power of 2"):
        parse_instance(text)


def test_asymmetric_matrix_rejected():
    with pytest.raises(InstanceError):
        parse_instance(ptf_text(["a", "b"], [[0, 0.6], [0.6, 0]], "1/2", "a"))


def test_decimals_are_exact():
    inst = parse_instance(ptf_text(["a", "b"], [[0, 0.1], [0.9, 0]], 0.1, "a"))
    assert inst.matrix[0][1] == Fraction(1, 10)
    assert inst.target == Fraction(1, 10)


@pytest.mark.parametrize("bad", ["1/0", "abc", "-1/2x", True, None, [1]])
def test_parse_rational_rejects(bad):
    with pytest.raises(InstanceError):
        parse_rational(bad)


@pytest.mark.parametrize("text,val", [("3/4", Fraction(3, 4)), ("0.25", Fraction(1, 4)), ("1", Fraction(1)), ("1e-2", Fraction(1, 100))])
def test_parse_rational_accepts(text, val):
    assert parse_rational(text) == val
    assert parse_rational(format_rational(val)) == val


def test_out_of_range_target():
    with pytest.raises(InstanceError):
        parse_instance(ptf_text(["a", "b"], [[0, 1], [0, 0]], "3/2", "a"))


def test_unknown_favorite():
    with pytest.raises(InstanceError):
        parse_instance(ptf_text(["a", "b"], [[0, 1], [0, 0]], "1", "z"))


def test_incomplete_tournament_rejected():
    text = json.dumps({"kind": "tf", "players": ["a", "b", "c", "d"], "favorite": "a", "tournaments": [[["a", "b"]]]})
    with pytest.raises(InstanceError):
        parse_instance(text)


def test_double_orientation_rejected():
    with pytest.raises(InstanceError):
        Digraph(("a", "b"), frozenset({(0, 1), (1, 0)}))


def test_malformed_json():
    with pytest.raises(InstanceError):
        parse_instance("{not json")


def test_kind_mismatch():
    inst = gen_random_stf(GenSpec(n=4, m=2, private_pairs=1))
    with pytest.raises(InstanceError):
        parse_instance(serialize_instance(inst), kind="ptf")


def test_integral_matrix_is_tournament():
    inst = gen_random_ptf(GenSpec(n=4, fractional_pairs=0, rng_seed=3))
    c = certainty_digraph(inst)
    assert len(c.arcs) == 6
    TournamentDigraph(c.players, c.arcs)


def test_all_half_matrix():
    n = 4
    half = Fraction(1, 2)
    mat = tuple(tuple(Fraction(0) if i == j else half for j in range(n)) for i in range(n))
    inst = ProbabilityInstance(("a", "b", "c", "d"), mat, half, "a")
    assert certainty_digraph(inst).arcs == frozenset()
    assert degree_of_uncertainty(inst) == 6


def test_one_fractional_pair():
    inst = gen_random_ptf(GenSpec(n=4, fractional_pairs=1, rng_seed=9))
    assert len(certainty_digraph(inst).arcs) == 5
    assert degree_of_uncertainty(inst) == 1


def test_single_scenario_shares_everything():
    t = TournamentDigraph.from_order(("a", "b", "c", "d"), [2, 0, 3, 1])
    p = shared_structure(StfInstance((t,), "a"))
    assert p.shared_arcs.arcs == t.arcs
    assert p.private_arc_count == 0
    assert p.shared_fas_size == 0


def test_one_reversed_arc_is_private():
    t = TournamentDigraph.from_order(("a", "b", "c", "d"), [0, 1, 2, 3])
    u = TournamentDigraph(t.players, (t.arcs - {(1, 2)}) | {(2, 1)})
    assert shared_structure(StfInstance((t, u), "a")).private_arc_count == 1


def test_two_private_pairs_and_fas_against_orderings(rng):
    from conftest import random_tournament

    for _ in range(20):
        t = random_tournament(rng, 4)
        arcs = set(t.arcs)
        for a in rng.sample(sorted(arcs), 2):
            arcs.remove(a)
            arcs.add(a[::-1])
        u = TournamentDigraph(t.players, frozenset(arcs))
        p = shared_structure(StfInstance((t, u), "p0"))
        assert p.private_arc_count == 2
        best = min(leftward_arcs(p.shared_arcs, o) for o in permutations(range(4)))
        assert p.shared_fas_size == best


def test_duplicate_scenarios_collapse():
    t = TournamentDigraph.from_order(("a", "b"), [0, 1])
    assert StfInstance((t, t), "a").m == 1


@given(st.integers(0, 2**31), st.sampled_from([4, 8]), st.integers(1, 3))
def test_stf_roundtrip(seed, n, m):
    private = 2 if m > 1 else 0
    inst = gen_random_stf(GenSpec(n=n, m=m, private_pairs=min(private, n * (n - 1) // 2), rng_seed=seed))
    again = parse_instance(serialize_instance(inst))
    assert again == inst
    assert serialize_instance(again) == serialize_instance(inst)


@given(st.integers(0, 2**31), st.sampled_from([2, 4, 8]))
def test_ptf_roundtrip(seed, n):
    inst = gen_random_ptf(GenSpec(n=n, fractional_pairs=1, rng_seed=seed))
    assert parse_instance(serialize_instance(inst)) == inst


def test_tf_serialization_requires_one_tournament():
    inst = gen_random_stf(GenSpec(n=4, m=2, private_pairs=1))
    with pytest.raises(InstanceError):
        serialize_instance(inst, kind="tf")
