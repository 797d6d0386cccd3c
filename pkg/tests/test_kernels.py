import numpy as np
from hypothesis import given, strategies as st

from tourfix import _accel
from tourfix.kernels import (
    bracket_winners,
    bracket_winners_numba,
    bracket_winners_numpy,
    fas_table,
    fas_table_numba,
    fas_table_numpy,
)
from tourfix.oracle import all_seedings

from conftest import tournaments


@given(tournaments(sizes=(2, 4, 8)))
def test_bracket_kernels_agree(t):
    seeds = all_seedings(t.n, symmetry=True)
    beats = t.beats[None, :, :]
    a = bracket_winners_numba(seeds, beats)
    b = bracket_winners_numpy(seeds, beats)
    assert np.array_equal(a, b)
    assert np.array_equal(bracket_winners(seeds, beats), b)


def test_bracket_kernel_matches_python_evaluation(rng):
    from tourfix.bracket import evaluate_bracket
    from conftest import random_tournament

    t = random_tournament(rng, 8)
    seeds = all_seedings(8, symmetry=True)[:50]
    out = bracket_winners_numpy(seeds, t.beats[None])
    for row, w in zip(seeds, out[:, 0]):
        assert evaluate_bracket(list(row), t).winner == w


@given(tournaments(sizes=(2, 4, 8)))
def test_fas_kernels_agree(t):
    masks = t.out_masks()
    assert np.array_equal(fas_table_numba(masks), fas_table_numpy(masks))
    assert np.array_equal(fas_table(masks), fas_table_numpy(masks))


def test_env_flag_is_boolean():
    assert isinstance(_accel.HAVE_NUMBA, bool)


def test_fas_table_full_set_is_zero():
    masks = np.array([0b110, 0b100, 0b001], dtype=np.int64)
    g = fas_table_numpy(masks)
    assert g[0b111] == 0
    assert g[0] == 1
