"""Seeded random games and partitions for property audits.

All randomness comes from :func:`numpy.random.default_rng` (PCG64), whose
streams are fixed per seed across platforms, so a ``GameGen`` always yields
the same game.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .game import Game, GameError, Partition, popcounts, zero_normalize

WORTH_RANGE = 10.0

GAME_CLASSES = (
    "uniform",
    "zero-normalized",
    "grand-zero",
    "voting",
    "with-necessary-player",
    "with-null-player",
    "additive-plus-noise",
    "symmetric-pair",
)


@dataclass(frozen=True)
class GameGen:
    seed: int
    n: int
    kind: str = "uniform"
    # player forced to be necessary / null / half of the symmetric pair;
    # drawn from the seed when omitted
    player: Optional[int] = None
    weights: Optional[tuple[float, ...]] = None
    quota: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind not in GAME_CLASSES:
            raise GameError(f"unknown game class {self.kind!r}")


def _uniform(rng: np.random.Generator, n: int) -> np.ndarray:
    values = rng.uniform(-WORTH_RANGE, WORTH_RANGE, size=1 << n)
    values[0] = 0.0
    return values


def weighted_voting_game(weights: Sequence[float], quota: float) -> Game:
    """``v(S) = 1`` if the weights in ``S`` reach ``quota``, else 0."""
    w = np.asarray(weights, dtype=np.float64)
    n = len(w)
    masks = np.arange(1 << n)
    totals = ((masks[:, None] >> np.arange(n)) & 1) @ w
    return Game(n, (totals >= quota).astype(np.float64))


def symmetrize(values: np.ndarray, n: int, sigma: Sequence[int]) -> np.ndarray:
    """Average ``values`` with its image under the player involution ``sigma``,
    so that ``v(S) == v(sigma(S))`` holds exactly."""
    masks = np.arange(1 << n, dtype=np.int64)
    image = np.zeros_like(masks)
    for j in range(n):
        image |= ((masks >> j) & 1) << sigma[j]
    return (values + values[image]) / 2


def transposition(n: int, i: int, j: int) -> list[int]:
    sigma = list(range(n))
    sigma[i], sigma[j] = j, i
    return sigma


def random_game(gen: GameGen) -> Game:
    n, kind = gen.n, gen.kind
    rng = np.random.default_rng(gen.seed)
    player = gen.player if gen.player is not None else int(rng.integers(n))
    masks = np.arange(1 << n)

    if kind == "voting":
        weights = gen.weights
        if weights is None:
            weights = tuple(int(x) for x in rng.integers(1, 11, size=n))
        if len(weights) != n:
            raise GameError(f"expected {n} voting weights")
        quota = gen.quota if gen.quota is not None else sum(weights) // 2 + 1
        return weighted_voting_game(weights, quota)

    values = _uniform(rng, n)
    if kind == "zero-normalized":
        return zero_normalize(Game(n, values))
    if kind == "grand-zero":
        values[-1] = 0.0
    elif kind == "with-necessary-player":
        values[(masks >> player) & 1 == 0] = 0.0
    elif kind == "with-null-player":
        without = masks[(masks >> player) & 1 == 0]
        values[without | (1 << player)] = values[without]
    elif kind == "additive-plus-noise":
        singles = rng.uniform(-WORTH_RANGE, WORTH_RANGE, size=n)
        noise = rng.uniform(-0.5, 0.5, size=1 << n)
        noise[popcounts(n) <= 1] = 0.0
        values = ((masks[:, None] >> np.arange(n)) & 1) @ singles + noise
    elif kind == "symmetric-pair":
        if n < 2:
            raise GameError("a symmetric pair needs two players")
        partner = int(rng.choice([j for j in range(n) if j != player]))
        values = symmetrize(values, n, transposition(n, player, partner))
    return Game(n, values)


def random_partition(n: int, seed: int | np.random.Generator) -> Partition:
    """Uniformly random labels in ``0..n-1``, with empty labels dropped."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    labels = rng.integers(n, size=n)
    unions: dict[int, int] = {}
    for i, lab in enumerate(labels):
        unions[int(lab)] = unions.get(int(lab), 0) | (1 << i)
    return Partition(n, tuple(unions[k] for k in sorted(unions)))
