"""TU games, coalition structures and the transformations between them.

Coalitions are plain ``int`` bitmasks: bit ``i`` set means player ``i``
(0-indexed) belongs to the coalition. A game with ``n`` players stores its
characteristic function as a dense float64 array of length ``2**n`` indexed
by mask, so ``game.values[0b101]`` is the worth of ``{0, 2}``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

MAX_PLAYERS = 26

Coalition = int


class GameError(ValueError):
    """Raised for malformed games, partitions or coalitions."""


def coalition(*players: int) -> Coalition:
    """Mask of the given 0-based players, e.g. ``coalition(0, 2) == 0b101``."""
    mask = 0
    for p in players:
        mask |= 1 << p
    return mask


def members(mask: Coalition) -> list[int]:
    """0-based players in ``mask`` in ascending order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def cardinality(mask: Coalition) -> int:
    return bin(mask).count("1")


def submasks(mask: Coalition) -> np.ndarray:
    """All submasks of ``mask`` (including 0 and ``mask``), ascending."""
    bits = members(mask)
    out = np.zeros(1 << len(bits), dtype=np.int64)
    for j, b in enumerate(bits):
        half = 1 << j
        out[half : 2 * half] = out[:half] | (1 << b)
    out.sort()
    return out


@lru_cache(maxsize=None)
def _popcounts(n: int) -> np.ndarray:
    sizes = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        half = 1 << j
        sizes[half : 2 * half] = sizes[:half] + 1
    sizes.flags.writeable = False
    return sizes


def popcounts(n: int) -> np.ndarray:
    """Read-only array ``sizes[mask] == |mask|`` for every mask of ``n`` players."""
    return _popcounts(n)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_PLAYERS:
        raise GameError(f"player count must be in 1..{MAX_PLAYERS}, got {n}")


@dataclass(frozen=True, eq=False)
class Game:
    """A TU game ``(N, v)`` on players ``0..n-1``.

    ``values`` is copied, frozen and must satisfy ``values[0] == 0``.
    """

    n: int
    values: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        _check_n(self.n)
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (1 << self.n,):
            raise GameError(
                f"expected {1 << self.n} coalition worths, got shape {values.shape}"
            )
        if values[0] != 0.0:
            raise GameError("the empty coalition must have worth 0")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        labels = tuple(self.labels) or tuple(str(i + 1) for i in range(self.n))
        if len(labels) != self.n:
            raise GameError(f"expected {self.n} labels, got {len(labels)}")
        object.__setattr__(self, "labels", labels)

    @property
    def grand(self) -> Coalition:
        return (1 << self.n) - 1

    def __call__(self, mask: Coalition) -> float:
        return float(self.values[mask])

    def singletons(self) -> np.ndarray:
        """``v({i})`` for every player, as an array."""
        return self.values[1 << np.arange(self.n)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Game):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.n, self.values.tobytes()))

    def __add__(self, other: Game) -> Game:
        if other.n != self.n:
            raise GameError(f"cannot add games with {self.n} and {other.n} players")
        return Game(self.n, self.values + other.values, self.labels)

    def __mul__(self, scalar: float) -> Game:
        return Game(self.n, self.values * scalar, self.labels)

    __rmul__ = __mul__

    def with_worth(self, mask: Coalition, worth: float) -> Game:
        """Copy of the game with ``v(mask)`` replaced by ``worth``."""
        if mask == 0:
            raise GameError("cannot change the worth of the empty coalition")
        values = self.values.copy()
        values[mask] = worth
        return Game(self.n, values, self.labels)

    def digest(self) -> str:
        return hashlib.sha1(self.values.tobytes()).hexdigest()[:12]


@dataclass(frozen=True)
class Partition:
    """A coalition structure: ordered, pairwise disjoint, non-empty unions
    covering all ``n`` players."""

    n: int
    unions: tuple[Coalition, ...]
    member_of: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        _check_n(self.n)
        unions = tuple(int(u) for u in self.unions)
        object.__setattr__(self, "unions", unions)
        seen = 0
        for u in unions:
            if u == 0:
                raise GameError("unions must be non-empty")
            if u >> self.n:
                raise GameError(f"union {u:b} names players beyond {self.n}")
            if u & seen:
                raise GameError("unions must be pairwise disjoint")
            seen |= u
        if seen != (1 << self.n) - 1:
            raise GameError("unions must cover every player")
        owner = [0] * self.n
        for k, u in enumerate(unions):
            for i in members(u):
                owner[i] = k
        object.__setattr__(self, "member_of", tuple(owner))

    @classmethod
    def from_lists(cls, n: int, groups: Iterable[Iterable[int]]) -> Partition:
        return cls(n, tuple(coalition(*g) for g in groups))

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def grand(cls, n: int) -> Partition:
        return cls(n, ((1 << n) - 1,))

    @property
    def m(self) -> int:
        return len(self.unions)

    def union_of(self, i: int) -> Coalition:
        return self.unions[self.member_of[i]]

    def expand(self, union_mask: Coalition) -> Coalition:
        """Player mask of the union of the unions selected by ``union_mask``
        (a mask over union indices)."""
        out = 0
        for r in members(union_mask):
            out |= self.unions[r]
        return out

    def expand_all(self) -> np.ndarray:
        """``table[R]`` is the player mask of ``∪_{r∈R} P_r``, for every ``R ⊆ M``."""
        table = np.zeros(1 << self.m, dtype=np.int64)
        for r, u in enumerate(self.unions):
            half = 1 << r
            table[half : 2 * half] = table[:half] | u
        return table


@dataclass(frozen=True)
class CSGame:
    """A game together with a coalition structure."""

    game: Game
    partition: Partition

    def __post_init__(self) -> None:
        if self.game.n != self.partition.n:
            raise GameError(
                f"partition is over {self.partition.n} players, game has {self.game.n}"
            )


def make_game(
    n: int,
    entries: Mapping[Coalition, float] | Iterable[tuple[Coalition, float]] = (),
    labels: Sequence[str] = (),
) -> Game:
    """Build a game from sparse ``(mask, worth)`` pairs; omitted coalitions
    are worth 0."""
    _check_n(n)
    items = entries.items() if isinstance(entries, Mapping) else entries
    values = np.zeros(1 << n, dtype=np.float64)
    seen: set[int] = set()
    for mask, worth in items:
        mask = int(mask)
        if mask < 0 or mask >> n:
            raise GameError(f"coalition {mask:#b} is not valid for {n} players")
        if mask in seen:
            raise GameError(f"duplicate coalition {mask:#b}")
        seen.add(mask)
        if mask == 0:
            if worth != 0:
                raise GameError("the empty coalition must have worth 0")
            continue
        values[mask] = float(worth)
    return Game(n, values, tuple(labels))


def null_game(n: int) -> Game:
    return Game(n, np.zeros(1 << n))


def additive_game(worths: Sequence[float]) -> Game:
    """``v(S) = Σ_{j∈S} worths[j]``."""
    worths = np.asarray(worths, dtype=np.float64)
    n = len(worths)
    _check_n(n)
    masks = np.arange(1 << n)
    bits = (masks[:, None] >> np.arange(n)) & 1
    return Game(n, bits @ worths)


def _additive_part(n: int, per_player: np.ndarray) -> np.ndarray:
    """``out[S] = Σ_{j∈S} per_player[j]`` for every mask."""
    out = np.zeros(1 << n, dtype=np.float64)
    for j in range(n):
        half = 1 << j
        out[half : 2 * half] = out[:half] + per_player[j]
    return out


def zero_normalize(g: Game) -> Game:
    """``v⁰(S) = v(S) − Σ_{j∈S} v({j})``."""
    return Game(g.n, g.values - _additive_part(g.n, g.singletons()), g.labels)


def partition_normalize(csg: CSGame) -> Game:
    """``v⁰′``: subtract the worth of every union fully inside ``S`` and the
    singleton worth of each remaining member of ``S``."""
    g, p = csg.game, csg.partition
    masks = np.arange(1 << g.n, dtype=np.int64)
    singles = g.singletons()
    out = g.values.copy()
    for u in p.unions:
        full = (masks & u) == u
        out[full] -= g.values[u]
        # members of partially covered unions pay their singleton worth
        partial = ~full
        for j in members(u):
            out[partial & ((masks >> j) & 1 == 1)] -= singles[j]
    return Game(g.n, out, g.labels)


def quotient_game(csg: CSGame) -> Game:
    """The game among unions: ``v^P(R) = v(∪_{r∈R} P_r)``."""
    p = csg.partition
    labels = tuple("+".join(csg.game.labels[i] for i in members(u)) for u in p.unions)
    return Game(p.m, csg.game.values[p.expand_all()], labels)


def basis_game_e(n: int, s: Coalition) -> Game:
    """Canonical basis game: worth 1 on exactly ``s``."""
    if s == 0:
        raise GameError("basis games need a non-empty coalition")
    return make_game(n, {s: 1.0})


def unanimity_game(n: int, s: Coalition) -> Game:
    """Worth 1 on every superset of ``s``."""
    if s == 0:
        raise GameError("unanimity games need a non-empty coalition")
    _check_n(n)
    if s >> n:
        raise GameError(f"coalition {s:#b} is not valid for {n} players")
    masks = np.arange(1 << n, dtype=np.int64)
    return Game(n, ((masks & s) == s).astype(np.float64))


def s_equivalent(g: Game, a: float, b: Sequence[float]) -> Game:
    """``w(T) = a·v(T) + Σ_{j∈T} b_j`` with ``a > 0``."""
    if not a > 0:
        raise GameError(f"scale must be positive, got {a}")
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (g.n,):
        raise GameError(f"translation must have {g.n} entries")
    return Game(g.n, a * g.values + _additive_part(g.n, b), g.labels)


def _check_player(g: Game, i: int) -> None:
    if not 0 <= i < g.n:
        raise GameError(f"player {i} out of range for {g.n} players")


def is_necessary(g: Game, i: int) -> bool:
    """True if every coalition without ``i`` is worth exactly 0."""
    _check_player(g, i)
    masks = np.arange(1 << g.n)
    return bool(np.all(g.values[(masks >> i) & 1 == 0] == 0.0))


def is_null(g: Game, i: int) -> bool:
    """True if ``i`` never changes the worth of a coalition it joins."""
    _check_player(g, i)
    masks = np.arange(1 << g.n)
    without = masks[(masks >> i) & 1 == 0]
    return bool(np.array_equal(g.values[without], g.values[without | (1 << i)]))


def are_symmetric(g: Game, i: int, j: int) -> bool:
    _check_player(g, i)
    _check_player(g, j)
    if i == j:
        raise GameError("symmetry needs two distinct players")
    masks = np.arange(1 << g.n)
    rest = masks[(masks & ((1 << i) | (1 << j))) == 0]
    return bool(np.array_equal(g.values[rest | (1 << i)], g.values[rest | (1 << j)]))


def are_symmetric_unions(csg: CSGame, k: int, l: int) -> bool:
    """True if ``v(S ∪ P_k) = v(S ∪ P_l)`` for every union ``S`` of complete
    unions other than ``P_k`` and ``P_l``."""
    p = csg.partition
    if k == l:
        raise GameError("union symmetry needs two distinct unions")
    if not (0 <= k < p.m and 0 <= l < p.m):
        raise GameError(f"union index out of range for {p.m} unions")
    table = p.expand_all()
    others = submasks(((1 << p.m) - 1) & ~(1 << k) & ~(1 << l))
    v = csg.game.values
    pk, pl = p.unions[k], p.unions[l]
    return bool(np.array_equal(v[table[others] | pk], v[table[others] | pl]))
