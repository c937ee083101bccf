"""Shapley, Banzhaf, equal division and equal surplus division."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .game import Game, GameError, popcounts

PERMUTATION_ORACLE_MAX_PLAYERS = 10


def allocation(payoffs) -> np.ndarray:
    """Coerce to a 1-D float array and reject non-finite payoffs."""
    out = np.asarray(payoffs, dtype=np.float64)
    if not np.all(np.isfinite(out)):
        raise FloatingPointError(f"non-finite payoff in {out}")
    return out


def _without(n: int, i: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    return masks[(masks >> i) & 1 == 0]


def shapley(g: Game) -> np.ndarray:
    n = g.n
    sizes = popcounts(n)
    # weight of a coalition of size s not containing i: 1 / (n * C(n-1, s))
    weight = np.array([1.0 / (n * math.comb(n - 1, s)) for s in range(n)])
    out = np.empty(n)
    for i in range(n):
        rest = _without(n, i)
        marginal = g.values[rest | (1 << i)] - g.values[rest]
        out[i] = np.dot(weight[sizes[rest]], marginal)
    return allocation(out)


def shapley_permutation_oracle(g: Game) -> np.ndarray:
    """Average marginal contribution over all ``n!`` arrival orders.

    Independent of :func:`shapley`; only meant for cross-checking small games.
    """
    if g.n > PERMUTATION_ORACLE_MAX_PLAYERS:
        raise GameError(
            f"permutation oracle is limited to {PERMUTATION_ORACLE_MAX_PLAYERS} players"
        )
    totals = [0.0] * g.n
    count = 0
    for order in itertools.permutations(range(g.n)):
        mask = 0
        for p in order:
            totals[p] += g.values[mask | (1 << p)] - g.values[mask]
            mask |= 1 << p
        count += 1
    return allocation([t / count for t in totals])


def banzhaf(g: Game) -> np.ndarray:
    n = g.n
    out = np.empty(n)
    for i in range(n):
        rest = _without(n, i)
        out[i] = np.sum(g.values[rest | (1 << i)] - g.values[rest]) / 2 ** (n - 1)
    return allocation(out)


def equal_division(g: Game) -> np.ndarray:
    return allocation(np.full(g.n, g.values[g.grand] / g.n))


def equal_surplus_division(g: Game) -> np.ndarray:
    singles = g.singletons()
    surplus = g.values[g.grand] - singles.sum()
    return allocation(singles + surplus / g.n)
