"""Property checkers and characterization-theorem audits.

Each ``check_*`` function measures how far a value is from satisfying one
property on one game and returns a :class:`Check`. A check is *vacuous*
when the game has nothing to test (no null players, no symmetric pair, ...)
and raises :class:`Inapplicable` when the property's precondition on the
game fails (for instance ``v(N) != 0`` for the per-capita mean).

:func:`audit` runs a value against the full axiom bundle of one
characterization theorem on seeded random games. Sampling can show that a
value satisfies the axioms; it cannot show uniqueness, so bundles are paired
with negative controls instead (a wrong value must fail).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from .coalitional import union_totals
from .game import (
    CSGame,
    Coalition,
    Game,
    GameError,
    Partition,
    are_symmetric,
    are_symmetric_unions,
    basis_game_e,
    is_necessary,
    is_null,
    members,
    partition_normalize,
    quotient_game,
    s_equivalent,
    zero_normalize,
)
from .generators import GameGen, random_game, random_partition, symmetrize, transposition
from .values import ValueKind, value_function

TOLERANCE = 1e-9
PRECONDITION_TOLERANCE = 1e-9

Target = Union[Game, CSGame]


class Inapplicable(Exception):
    """The game does not meet the property's precondition."""


@dataclass(frozen=True)
class Check:
    magnitude: float
    vacuous: bool = False

    def passed(self, tol: float = TOLERANCE) -> bool:
        return self.magnitude <= tol

    def __float__(self) -> float:
        return self.magnitude


VACUOUS = Check(0.0, vacuous=True)


def _game(x: Target) -> Game:
    return x.game if isinstance(x, CSGame) else x


def _resolve(f) -> Callable:
    return value_function(f) if isinstance(f, (str, ValueKind)) else f


def _max(gaps) -> float:
    gaps = list(gaps)
    return float(max(gaps)) if gaps else 0.0


# -- generic axioms ---------------------------------------------------------


def check_efficiency(f, x: Target) -> Check:
    g = _game(x)
    return Check(abs(float(np.sum(_resolve(f)(x))) - g.values[g.grand]))


def check_additivity(f, x1: Target, x2: Target) -> Check:
    f = _resolve(f)
    g1, g2 = _game(x1), _game(x2)
    if g1.n != g2.n:
        raise GameError(f"cannot add games with {g1.n} and {g2.n} players")
    if isinstance(x1, CSGame):
        if not isinstance(x2, CSGame) or x1.partition != x2.partition:
            raise GameError("additivity for coalitional values needs one shared partition")
        total: Target = CSGame(g1 + g2, x1.partition)
    else:
        total = g1 + g2
    return Check(float(np.max(np.abs(f(total) - f(x1) - f(x2)))))


def check_symmetry(f, x: Target) -> Check:
    g = _game(x)
    pairs = [(i, j) for i in range(g.n) for j in range(i + 1, g.n) if are_symmetric(g, i, j)]
    if not pairs:
        return VACUOUS
    pay = _resolve(f)(x)
    return Check(_max(abs(pay[i] - pay[j]) for i, j in pairs))


def check_null_player(f, x: Target) -> Check:
    g = _game(x)
    nulls = [i for i in range(g.n) if is_null(g, i)]
    if not nulls:
        return VACUOUS
    pay = _resolve(f)(x)
    return Check(_max(abs(pay[i]) for i in nulls))


def check_inv(f, g: Game, a: float, b: Sequence[float]) -> Check:
    f = _resolve(f)
    w = s_equivalent(g, a, b)
    return Check(float(np.max(np.abs(f(w) - a * f(g) - np.asarray(b)))))


def check_coalitional_monotonicity(f, g: Game, t: Coalition, delta: float) -> Check:
    """Largest drop in a member's payoff after raising ``v(t)`` by ``delta``."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    f = _resolve(f)
    raised = g.with_worth(t, g.values[t] + delta)
    before, after = f(g), f(raised)
    return Check(_max(max(0.0, before[i] - after[i]) for i in members(t)))


# -- necessary players, plain games ----------------------------------------

NECESSARY_VARIANTS = ("weighted-mean", "mean", "weak-mean", "per-capita", "zero-norm-per-capita")


def _containing(n: int, i: int):
    for mask in range(1, 1 << n):
        if mask >> i & 1:
            yield mask, bin(mask).count("1")


def necessary_prescription(g: Game, i: int, variant: str) -> float:
    """The payoff the named necessary-player property assigns to player ``i``."""
    n = g.n
    v = g.values
    if variant == "weighted-mean":
        return sum(v[S] / math.comb(n - 1, s - 1) for S, s in _containing(n, i)) / n
    if variant in ("mean", "weak-mean"):
        return sum(v[S] for S, _ in _containing(n, i)) / 2 ** (n - 1)
    if variant == "per-capita":
        return sum(v[S] / s for S, s in _containing(n, i)) / 2 ** (n - 1)
    if variant == "zero-norm-per-capita":
        v0 = zero_normalize(g).values
        return v[1 << i] + sum(v0[S] / s for S, s in _containing(n, i)) / 2 ** (n - 1)
    raise ValueError(f"unknown necessary-player variant {variant!r}")


def _require_plain(g: Game, variant: str) -> None:
    grand = g.values[g.grand]
    if variant in ("weak-mean", "per-capita") and abs(grand) > PRECONDITION_TOLERANCE:
        raise Inapplicable(f"{variant} needs v(N) = 0, got {grand}")
    if variant == "zero-norm-per-capita":
        total = float(g.singletons().sum())
        if abs(grand - total) > PRECONDITION_TOLERANCE:
            raise Inapplicable(f"{variant} needs v(N) = sum of singleton worths")


def check_necessary_property(f, g: Game, variant: str) -> Check:
    if variant not in NECESSARY_VARIANTS:
        raise ValueError(f"unknown necessary-player variant {variant!r}")
    _require_plain(g, variant)
    needed = [i for i in range(g.n) if is_necessary(g, i)]
    if not needed:
        return VACUOUS
    pay = _resolve(f)(g)
    return Check(_max(abs(pay[i] - necessary_prescription(g, i, variant)) for i in needed))


# -- necessary players, coalition structures --------------------------------

COALITIONAL_VARIANTS = (
    "weighted-coalitional",
    "coalitional",
    "per-capita-coalitional",
    "zero-norm-per-capita-coalitional",
)


def coalitional_prescription(csg: CSGame, i: int, variant: str) -> float:
    """The payoff the named coalitional necessary-player property assigns to ``i``.

    Sums use each property's own index ranges. Terms whose denominator
    would be a zero cardinality are worth ``v(∅) = 0`` and are skipped.
    """
    g, p = csg.game, csg.partition
    m = p.m
    k = p.member_of[i]
    own = p.unions[k]
    pk = bin(own).count("1")
    full_m = (1 << m) - 1
    other_rs = [R for R in range(1 << m) if not R >> k & 1]
    own_ts = [T for T in range(own + 1) if T & own == T]

    if variant in ("weighted-coalitional", "coalitional"):
        v = g.values
        acc = 0.0
        for R in other_rs:
            q = p.expand(R)
            r = bin(R).count("1")
            for T in own_ts:
                t = bin(T).count("1")
                if variant == "coalitional":
                    acc += v[q | T]
                elif t > 0:
                    acc += v[q | T] / (math.comb(m - 1, r) * math.comb(pk - 1, t - 1))
        if variant == "coalitional":
            return acc / (2 ** (m - 1) * 2 ** (pk - 1))
        return acc / (m * pk)

    if variant == "per-capita-coalitional":
        v = g.values
        intra = sum(
            v[p.expand(R) | T] / bin(T).count("1")
            for R in other_rs
            for T in own_ts
            if T != own and T >> i & 1
        )
        between = sum(
            v[p.expand(R)] / bin(R).count("1") for R in range(1, full_m + 1) if R >> k & 1
        )
        return (intra / 2 ** (pk - 1) + between / pk) / 2 ** (m - 1)

    if variant == "zero-norm-per-capita-coalitional":
        v = g.values
        w = partition_normalize(csg).values
        singles = g.singletons()
        head = v[1 << i] + (v[own] - singles[members(own)].sum()) / pk
        intra = sum(
            w[p.expand(R) | T] / bin(T).count("1")
            for R in other_rs
            for T in own_ts
            if T not in (0, own)
        )
        between = sum(w[p.expand(R)] / bin(R).count("1") for R in range(1, full_m + 1))
        return head + intra / (2 ** (m - 1) * 2 ** (pk - 1)) + between / (2 ** (m - 1) * pk)

    raise ValueError(f"unknown coalitional necessary-player variant {variant!r}")


def _require_coalitional(csg: CSGame, variant: str) -> None:
    g = csg.game
    grand = g.values[g.grand]
    if variant == "per-capita-coalitional" and abs(grand) > PRECONDITION_TOLERANCE:
        raise Inapplicable(f"{variant} needs v(N) = 0, got {grand}")
    if variant == "zero-norm-per-capita-coalitional":
        total = sum(g.values[u] for u in csg.partition.unions)
        if abs(grand - total) > PRECONDITION_TOLERANCE:
            raise Inapplicable(f"{variant} needs v(N) = sum of union worths")


def check_coalitional_necessary_property(f, csg: CSGame, variant: str) -> Check:
    if variant not in COALITIONAL_VARIANTS:
        raise ValueError(f"unknown coalitional necessary-player variant {variant!r}")
    _require_coalitional(csg, variant)
    g = csg.game
    needed = [i for i in range(g.n) if is_necessary(g, i)]
    if not needed:
        return VACUOUS
    pay = _resolve(f)(csg)
    return Check(_max(abs(pay[i] - coalitional_prescription(csg, i, variant)) for i in needed))


# -- coalition-structure axioms --------------------------------------------


def check_quotient_property(f, csg: CSGame) -> Check:
    """Gap between each union's total payoff and its payoff in the quotient game."""
    f = _resolve(f)
    totals = union_totals(csg, f(csg))
    quotient = quotient_game(csg)
    direct = f(CSGame(quotient, Partition.singletons(quotient.n)))
    return Check(float(np.max(np.abs(totals - direct))))


def check_union_symmetries(f, csg: CSGame) -> tuple[Check, Check]:
    """(symmetry inside unions, symmetry among unions)."""
    g, p = csg.game, csg.partition
    inside_pairs = [
        (i, j)
        for i in range(g.n)
        for j in range(i + 1, g.n)
        if p.member_of[i] == p.member_of[j] and are_symmetric(g, i, j)
    ]
    among_pairs = [
        (k, l) for k in range(p.m) for l in range(k + 1, p.m) if are_symmetric_unions(csg, k, l)
    ]
    if not inside_pairs and not among_pairs:
        return VACUOUS, VACUOUS
    pay = _resolve(f)(csg)
    inside = (
        Check(_max(abs(pay[i] - pay[j]) for i, j in inside_pairs)) if inside_pairs else VACUOUS
    )
    if among_pairs:
        totals = union_totals(csg, pay)
        among = Check(_max(abs(totals[k] - totals[l]) for k, l in among_pairs))
    else:
        among = VACUOUS
    return inside, among


# -- the incompatibility of efficiency with "necessary players get the mean"


@dataclass(frozen=True)
class IncompatibilityReport:
    n: int
    prescribed_total: Fraction
    grand_worth: Fraction

    @property
    def compatible(self) -> bool:
        return self.prescribed_total == self.grand_worth


def incompatibility_report(n: int) -> IncompatibilityReport:
    """Total payoff that "necessary players get the mean" forces on ``e_N``.

    Every player is necessary in ``e_N`` and each is owed ``1/2^(n-1)``, so
    the total is ``n/2^(n-1)``; efficiency demands ``e_N(N) = 1``. The two
    disagree for every ``n > 2``.
    """
    g = basis_game_e(n, (1 << n) - 1)
    total = Fraction(0)
    for i in range(n):
        assert is_necessary(g, i)
        share = sum(Fraction(g.values[S]) for S, _ in _containing(n, i))
        total += share / 2 ** (n - 1)
    return IncompatibilityReport(n, total, Fraction(g.values[g.grand]))


# -- theorem bundles --------------------------------------------------------

THEOREMS: dict[str, tuple[str, ...]] = {
    "T1a": ("additivity", "null-player", "necessary:weighted-mean"),
    "T1b": ("additivity", "null-player", "necessary:mean"),
    "T2": ("additivity", "necessary:weak-mean", "efficiency", "symmetry"),
    "T3": ("additivity", "necessary:per-capita", "efficiency", "symmetry"),
    "T4": ("additivity", "necessary:zero-norm-per-capita", "efficiency", "symmetry"),
    "T5": ("additivity", "null-player", "necessary:coalitional"),
    "T6": ("additivity", "null-player", "necessary:weighted-coalitional"),
    "T7": (
        "additivity",
        "necessary:per-capita-coalitional",
        "efficiency",
        "symmetry-inside-unions",
        "symmetry-among-unions",
    ),
    "T8": (
        "additivity",
        "necessary:zero-norm-per-capita-coalitional",
        "efficiency",
        "symmetry-inside-unions",
        "symmetry-among-unions",
    ),
}

COALITIONAL_THEOREMS = frozenset({"T5", "T6", "T7", "T8"})

MATCHED = {
    ValueKind.SHAPLEY: "T1a",
    ValueKind.BANZHAF: "T1b",
    ValueKind.G: "T2",
    ValueKind.GAMMA: "T3",
    ValueKind.BIG_GAMMA: "T4",
    ValueKind.BANZHAF_OWEN: "T5",
    ValueKind.OWEN: "T6",
    ValueKind.GAMMA_C: "T7",
    ValueKind.BIG_GAMMA_C: "T8",
}


class ArityMismatch(ValueError):
    """A point value was audited against a coalitional theorem, or vice versa."""


@dataclass(frozen=True)
class Failure:
    trial: int
    digest: str
    axiom: str
    magnitude: float


@dataclass
class AuditReport:
    value: ValueKind
    theorem: str
    trials: int
    tolerance: float
    failures: list[Failure] = field(default_factory=list)
    vacuous: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "value": str(self.value),
            "theorem": self.theorem,
            "axioms": list(THEOREMS[self.theorem]),
            "trials": self.trials,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "vacuous_checks": self.vacuous,
            "failures": [
                {"trial": f.trial, "game": f.digest, "axiom": f.axiom, "magnitude": f.magnitude}
                for f in self.failures
            ],
        }


def _trial_rng(seed: int, trial: int, salt: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial, salt])


def _seed(rng: np.random.Generator) -> int:
    return int(rng.integers(2**63))


def _partition_with_pair(n: int, rng: np.random.Generator) -> Partition:
    """Random partition in which at least one union has two or more members."""
    p = random_partition(n, rng)
    if all(bin(u).count("1") == 1 for u in p.unions):
        merged = (p.unions[0] | p.unions[1],) + p.unions[2:]
        p = Partition(n, merged)
    return p


def _partition_with_twins(n: int, rng: np.random.Generator) -> tuple[Partition, list[int]]:
    """Random partition with two equal-size unions (indices 0 and 1) and the
    player involution swapping them member by member."""
    size = int(rng.integers(1, n // 2 + 1))
    order = [int(x) for x in rng.permutation(n)]
    a, b, rest = order[:size], order[size : 2 * size], order[2 * size :]
    unions = [sum(1 << x for x in a), sum(1 << x for x in b)]
    if rest:
        unions += [u for u in random_partition(len(rest), rng).unions]
        # map positions in `rest` back to player ids
        unions = unions[:2] + [sum(1 << rest[j] for j in members(u)) for u in unions[2:]]
    sigma = list(range(n))
    for x, y in zip(sorted(a), sorted(b)):
        sigma[x], sigma[y] = y, x
    return Partition(n, tuple(unions)), sigma


def _trial_checks(f, axiom: str, n: int, rng: np.random.Generator, coalitional: bool):
    """Build the game(s) an axiom needs and yield ``(digest, Check)`` pairs."""

    def wrap(g: Game, partition: Partition | None = None) -> Target:
        if not coalitional:
            return g
        return CSGame(g, partition or random_partition(n, rng))

    if axiom == "additivity":
        g1 = random_game(GameGen(_seed(rng), n))
        g2 = random_game(GameGen(_seed(rng), n))
        if coalitional:
            p = random_partition(n, rng)
            yield g1.digest(), check_additivity(f, CSGame(g1, p), CSGame(g2, p))
        else:
            yield g1.digest(), check_additivity(f, g1, g2)
    elif axiom == "efficiency":
        g = random_game(GameGen(_seed(rng), n))
        yield g.digest(), check_efficiency(f, wrap(g))
    elif axiom == "null-player":
        g = random_game(GameGen(_seed(rng), n, "with-null-player"))
        yield g.digest(), check_null_player(f, wrap(g))
    elif axiom == "symmetry":
        g = random_game(GameGen(_seed(rng), n, "symmetric-pair"))
        yield g.digest(), check_symmetry(f, g)
    elif axiom == "symmetry-inside-unions":
        p = _partition_with_pair(n, rng)
        team = members(next(u for u in p.unions if bin(u).count("1") >= 2))
        i, j = (int(x) for x in rng.choice(team, size=2, replace=False))
        base = random_game(GameGen(_seed(rng), n))
        g = Game(n, symmetrize(base.values.copy(), n, transposition(n, i, j)))
        yield g.digest(), check_union_symmetries(f, CSGame(g, p))[0]
    elif axiom == "symmetry-among-unions":
        p, sigma = _partition_with_twins(n, rng)
        base = random_game(GameGen(_seed(rng), n))
        g = Game(n, symmetrize(base.values.copy(), n, sigma))
        yield g.digest(), check_union_symmetries(f, CSGame(g, p))[1]
    elif axiom.startswith("necessary:"):
        variant = axiom.split(":", 1)[1]
        player = int(rng.integers(n))
        g = random_game(GameGen(_seed(rng), n, "with-necessary-player", player=player))
        if coalitional:
            p = random_partition(n, rng)
            if variant == "per-capita-coalitional":
                g = g.with_worth(g.grand, 0.0)
            elif variant == "zero-norm-per-capita-coalitional":
                g = g.with_worth(g.grand, float(sum(g.values[u] for u in p.unions)))
            yield g.digest(), check_coalitional_necessary_property(f, CSGame(g, p), variant)
        else:
            if variant in ("weak-mean", "per-capita"):
                g = g.with_worth(g.grand, 0.0)
            elif variant == "zero-norm-per-capita":
                g = g.with_worth(g.grand, float(g.singletons().sum()))
            yield g.digest(), check_necessary_property(f, g, variant)
    else:
        raise ValueError(f"unknown axiom {axiom!r}")


def default_players(trial: int) -> int:
    """Player counts cycle through 2..7 across trials."""
    return 2 + trial % 6


def audit(
    value: ValueKind | str,
    theorem: str,
    trials: int = 500,
    seed: int = 0,
    n: int | None = None,
    tolerance: float = TOLERANCE,
) -> AuditReport:
    """Check ``value`` against every axiom of ``theorem`` on ``trials`` games.

    With ``n`` omitted the player count cycles through 2..7. Each axiom gets
    a game class that meets its precondition (a forced null player, a forced
    necessary player with the required ``v(N)``, an exactly symmetric pair).
    """
    kind = ValueKind(value)
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; expected one of {sorted(THEOREMS)}")
    coalitional = theorem in COALITIONAL_THEOREMS
    if kind.coalitional != coalitional:
        raise ArityMismatch(
            f"{kind} is a {'coalitional' if kind.coalitional else 'point'} value "
            f"but {theorem} characterizes {'coalitional' if coalitional else 'point'} values"
        )
    if n is not None and n < 2:
        raise GameError("audits need at least two players")
    f = value_function(kind)
    report = AuditReport(kind, theorem, trials, tolerance)
    for trial in range(trials):
        players = n if n is not None else default_players(trial)
        for salt, axiom in enumerate(THEOREMS[theorem]):
            rng = _trial_rng(seed, trial, salt)
            for digest, check in _trial_checks(f, axiom, players, rng, coalitional):
                if check.vacuous:
                    report.vacuous += 1
                elif not check.passed(tolerance):
                    report.failures.append(Failure(trial, digest, axiom, check.magnitude))
    return report
