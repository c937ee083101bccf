import math
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings

from coopvalues.classic import (
    banzhaf,
    equal_division,
    equal_surplus_division,
    shapley,
    shapley_permutation_oracle,
)
from coopvalues.game import (
    Game,
    GameError,
    additive_game,
    are_symmetric,
    basis_game_e,
    null_game,
    unanimity_game,
)
from coopvalues.generators import GameGen, random_game

from .conftest import games, random_games

TOL = 1e-9
LINEAR = [shapley, banzhaf, equal_division, equal_surplus_division]
EFFICIENT = [shapley, equal_division, equal_surplus_division]


def test_shapley_elevator_tables(elevator_c, elevator_d):
    np.testing.assert_allclose(shapley(elevator_c), [33.3333, 38.3333, 48.3333], atol=5e-5)
    np.testing.assert_allclose(shapley(elevator_d), [0, 50, 60], atol=5e-5)


def test_shapley_council(council):
    # exact enumeration over the 6 arrival orders
    totals = [Fraction(0)] * 3
    for order in permutations(range(3)):
        mask = 0
        for p in order:
            totals[p] += Fraction(council(mask | 1 << p) - council(mask))
            mask |= 1 << p
    assert [t / 6 for t in totals] == [Fraction(2, 3), Fraction(1, 6), Fraction(1, 6)]
    np.testing.assert_allclose(shapley(council), [2 / 3, 1 / 6, 1 / 6], atol=TOL)


def test_permutation_oracle_examples(elevator_c):
    np.testing.assert_allclose(shapley_permutation_oracle(elevator_c), shapley(elevator_c))
    np.testing.assert_allclose(
        shapley_permutation_oracle(additive_game([3, -1, 2])), [3, -1, 2], atol=TOL
    )
    np.testing.assert_allclose(
        shapley_permutation_oracle(basis_game_e(3, 0b111)), [1 / 3] * 3, atol=TOL
    )
    with pytest.raises(GameError):
        shapley_permutation_oracle(null_game(11))


def test_banzhaf_examples(council):
    np.testing.assert_allclose(banzhaf(unanimity_game(3, 0b111)), [0.25] * 3, atol=TOL)
    np.testing.assert_allclose(banzhaf(additive_game([1, 2, -4])), [1, 2, -4], atol=TOL)
    np.testing.assert_allclose(banzhaf(council), [0.75, 0.25, 0.25], atol=TOL)


def test_equal_division_examples(elevator_c, elevator_d):
    np.testing.assert_allclose(equal_division(elevator_c), [40, 40, 40])
    np.testing.assert_allclose(equal_division(elevator_d), [36.6666] * 3, atol=1e-4)
    assert not equal_division(null_game(4)).any()


def test_equal_surplus_division_examples(elevator_c):
    np.testing.assert_allclose(equal_surplus_division(additive_game([1, 5])), [1, 5])
    np.testing.assert_allclose(equal_surplus_division(elevator_c), [30, 40, 50])
    np.testing.assert_allclose(
        equal_surplus_division(basis_game_e(3, 0b111)), [1 / 3] * 3, atol=TOL
    )


@pytest.mark.parametrize("value", EFFICIENT, ids=lambda f: f.__name__)
def test_efficiency_on_random_games(value):
    for g in random_games(1000, (1, 8), seed=1):
        assert abs(value(g).sum() - g.values[-1]) <= TOL


@pytest.mark.parametrize("value", [shapley, banzhaf], ids=lambda f: f.__name__)
def test_null_player_gets_zero(value):
    for seed in range(200):
        g = random_game(GameGen(seed, 2 + seed % 6, "with-null-player", player=seed % 2))
        assert abs(value(g)[seed % 2]) <= TOL


@pytest.mark.parametrize("value", [shapley, banzhaf], ids=lambda f: f.__name__)
def test_symmetric_players_equal(value):
    for seed in range(200):
        g = random_game(GameGen(seed, 2 + seed % 6, "symmetric-pair"))
        pay = value(g)
        pairs = [(i, j) for i in range(g.n) for j in range(i) if are_symmetric(g, i, j)]
        assert pairs
        for i, j in pairs:
            assert abs(pay[i] - pay[j]) <= TOL


@pytest.mark.parametrize("value", LINEAR, ids=lambda f: f.__name__)
@settings(max_examples=60, deadline=None)
@given(g=games())
def test_additivity(value, g):
    h = Game(g.n, np.r_[0.0, np.roll(g.values[1:], 1)])
    np.testing.assert_allclose(value(g + h), value(g) + value(h), atol=TOL)


def test_necessary_players_get_weighted_mean_and_mean():
    for seed in range(300):
        n = 2 + seed % 6
        i = seed % n
        g = random_game(GameGen(seed, n, "with-necessary-player", player=i))
        containing = [S for S in range(1, 1 << n) if S >> i & 1]
        weighted = sum(
            g(S) / math.comb(n - 1, bin(S).count("1") - 1) for S in containing
        ) / n
        mean = sum(g(S) for S in containing) / 2 ** (n - 1)
        assert abs(shapley(g)[i] - weighted) <= TOL
        assert abs(banzhaf(g)[i] - mean) <= TOL


def test_shapley_matches_permutation_oracle():
    for g in random_games(300, (1, 7), seed=2):
        np.testing.assert_allclose(shapley(g), shapley_permutation_oracle(g), atol=TOL, rtol=0)
