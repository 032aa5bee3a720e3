"""Featurizer layouts: fixed dims, frozen spot values, determinism."""

import math

import numpy as np
import pytest

from querysynth.fspace import (
    KAREL_EXAMPLE_DIM,
    KAREL_PROGRAM_DIM,
    LIST_EXAMPLE_DIM,
    LIST_PROGRAM_DIM,
    TIMEOUT_RESPONSE,
    karel_example_features,
    karel_program_features,
    list_example_features,
    list_program_features,
    world_bits,
)
from querysynth.karel import build_start_world, parse_karel
from querysynth.listproc import NULL, parse_list_program


def test_list_example_dims_and_start_signal():
    feats = list_example_features((NULL, NULL, NULL), NULL)
    assert feats.shape == (LIST_EXAMPLE_DIM,)
    # four slots, each flagged NULL and otherwise zero
    per = LIST_EXAMPLE_DIM // 4
    for slot in range(4):
        chunk = feats[slot * per : (slot + 1) * per]
        assert chunk[0] == 1.0
        assert chunk[1:].sum() == 0.0


def test_list_example_value_layout():
    feats = list_example_features(((3, 1, 2),), 7)
    per = LIST_EXAMPLE_DIM // 4
    first = feats[:per]
    assert first[0] == 0.0 and first[1] == 0.0 and first[2] == 1.0
    assert first[5] == pytest.approx(3 / 20)
    assert first[6] == pytest.approx(3 / 255)
    assert first[7] == pytest.approx(1 / 255)
    assert first[8] == pytest.approx(2 / 255)
    assert first[6 + 20] == pytest.approx(math.tanh(3 / 8))
    assert first[6 + 40 : 6 + 43].tolist() == [1.0, 1.0, 1.0]
    # second slot padded with NULL
    second = feats[per : 2 * per]
    assert second[0] == 1.0
    out = feats[3 * per :]
    assert out[1] == 1.0 and out[3] == pytest.approx(7 / 255)
    assert out[4] == pytest.approx(math.tanh(7 / 8))


def test_list_example_rejects_too_many_inputs():
    with pytest.raises(ValueError):
        list_example_features((1, 2, 3, 4), NULL)


def test_list_program_features_distinct_and_deterministic():
    p1 = parse_list_program("v1 = INPUT LIST\nv2 = MAP (+1) v1")
    p2 = parse_list_program("v1 = INPUT LIST\nv2 = MAP (*2) v1")
    f1, f1b, f2 = list_program_features(p1), list_program_features(p1), list_program_features(p2)
    assert f1.shape == (LIST_PROGRAM_DIM,)
    assert np.array_equal(f1, f1b)
    assert not np.array_equal(f1, f2)


def test_karel_start_world_bits():
    bits = world_bits(build_start_world())
    assert bits.sum() == 1.0  # only the hero-facing bit at the start cell
    assert bits[(8 * 16 + 8) * 16 + 0] == 1.0


def test_karel_example_features_ok_and_timeout():
    w = build_start_world()
    ok = karel_example_features(w, w)
    assert ok.shape == (KAREL_EXAMPLE_DIM,)
    assert ok[-1] == 0.0
    half = (KAREL_EXAMPLE_DIM - 1) // 2
    assert np.array_equal(ok[:half], ok[half : 2 * half])
    timed = karel_example_features(w, TIMEOUT_RESPONSE)
    assert timed[-1] == 1.0
    assert timed[half : 2 * half].sum() == 0.0
    with pytest.raises(ValueError):
        karel_example_features(w, "nonsense")


def test_karel_program_features_token_count():
    prog = parse_karel("def run(): move()")
    feats = karel_program_features(prog)
    assert feats.shape == (KAREL_PROGRAM_DIM,)
    assert feats.sum() == 8.0  # def run ( ) : move ( )
    other = karel_program_features(parse_karel("def run(): turnLeft()"))
    assert not np.array_equal(feats, other)
