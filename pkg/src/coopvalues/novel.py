"""The G, gamma and Gamma values for TU games.

All three share the same skeleton: a signed average over the proper
non-empty coalitions, plus an equal share of ``v(N)``. They differ in how a
coalition's worth is weighted for members and non-members:

==========  ========================  ===========================
value       member of ``S``           non-member of ``S``
==========  ========================  ===========================
G           ``+v(S)``                 ``-s/(n-s) * v(S)``
gamma       ``+v(S)/s``               ``-v(S)/(n-s)``
==========  ========================  ===========================

Gamma applies gamma to the zero-normalized game and adds back each player's
stand-alone worth, which makes it invariant to S-equivalence.
"""

from __future__ import annotations

import numpy as np

from .classic import allocation
from .game import Game, popcounts, zero_normalize


def _proper(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Proper non-empty masks in ascending order, with their sizes."""
    masks = np.arange(1, (1 << n) - 1, dtype=np.int64)
    return masks, popcounts(n)[masks]


def _signed_average(g: Game, member_w: np.ndarray, outsider_w: np.ndarray) -> np.ndarray:
    n = g.n
    masks, _ = _proper(n)
    worth = g.values[masks]
    out = np.empty(n)
    for i in range(n):
        inside = (masks >> i) & 1 == 1
        out[i] = np.dot(worth[inside], member_w[inside]) - np.dot(
            worth[~inside], outsider_w[~inside]
        )
    return out / 2 ** (n - 1) + g.values[g.grand] / n


def g_value(g: Game) -> np.ndarray:
    _, s = _proper(g.n)
    return allocation(_signed_average(g, np.ones(len(s)), s / (g.n - s)))


def gamma_value(g: Game) -> np.ndarray:
    _, s = _proper(g.n)
    return allocation(_signed_average(g, 1.0 / s, 1.0 / (g.n - s)))


def big_gamma_value(g: Game) -> np.ndarray:
    return allocation(g.singletons() + gamma_value(zero_normalize(g)))


def big_gamma_expanded(g: Game) -> np.ndarray:
    """Gamma written out in terms of ``v`` and the singleton worths directly,
    without building the zero-normalized game. Used as a cross-check."""
    n = g.n
    singles = g.singletons()
    out = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for mask in range(1, (1 << n) - 1):
            s = bin(mask).count("1")
            surplus = g.values[mask] - sum(singles[j] for j in range(n) if mask >> j & 1)
            if mask >> i & 1:
                acc += surplus / s
            else:
                acc -= surplus / (n - s)
        out[i] = acc / 2 ** (n - 1)
    total = g.values[g.grand] - singles.sum()
    return allocation(out + total / n + singles)


def per_capita_correction(g: Game) -> np.ndarray:
    """``gamma - ED`` (or, applied to ``v⁰``, ``Gamma - ESD``), summed
    coalition by coalition in plain Python."""
    n = g.n
    out = []
    for i in range(n):
        acc = 0.0
        for mask in range(1, (1 << n) - 1):
            s = bin(mask).count("1")
            if mask >> i & 1:
                acc += g.values[mask] / s
            else:
                acc -= g.values[mask] / (n - s)
        out.append(acc / 2 ** (n - 1))
    return allocation(out)


def singleton_coefficient(n: int) -> float:
    """Coefficient of ``v({i})`` in ``Gamma_i`` for an ``n``-player game.

    Positive for every ``n >= 1``, which is why raising a stand-alone worth
    strictly raises that player's Gamma payoff.
    """
    return (n - 3) / n + (2 + n) / (2 ** (n - 1) * n)
