from fractions import Fraction

import numpy as np
import pytest

from coopvalues.audit import (
    COALITIONAL_VARIANTS,
    MATCHED,
    NECESSARY_VARIANTS,
    THEOREMS,
    ArityMismatch,
    Inapplicable,
    audit,
    check_additivity,
    check_coalitional_monotonicity,
    check_coalitional_necessary_property,
    check_efficiency,
    check_inv,
    check_necessary_property,
    check_null_player,
    check_quotient_property,
    check_symmetry,
    check_union_symmetries,
    incompatibility_report,
)
from coopvalues.game import (
    CSGame,
    Partition,
    basis_game_e,
    is_necessary,
    null_game,
    unanimity_game,
)
from coopvalues.generators import (
    GAME_CLASSES,
    GameGen,
    random_game,
    random_partition,
    weighted_voting_game,
)
from coopvalues.values import ValueKind

from .conftest import random_games

TOL = 1e-9


def test_efficiency_checks(elevator_c):
    assert check_efficiency("shapley", elevator_c).magnitude <= TOL
    assert check_efficiency("banzhaf", basis_game_e(3, 0b111)).magnitude == pytest.approx(0.25)
    for g in random_games(20, seed=30):
        assert check_efficiency("ed", g).magnitude <= TOL


def test_additivity_checks():
    g1, g2 = random_games(2, (5, 5), seed=31)
    assert check_additivity("shapley", g1, g2).passed()
    e1, e2 = basis_game_e(4, 0b0011), basis_game_e(4, 0b0110)
    assert check_additivity("gamma", e1, e2).passed()
    assert check_additivity("big-gamma", g1, null_game(5)).magnitude == 0.0


def test_symmetry_and_null_checks():
    assert check_symmetry("shapley", basis_game_e(3, 0b111)).magnitude == 0
    assert check_null_player("banzhaf", unanimity_game(4, 0b0011)).passed()
    assert check_null_player("banzhaf", basis_game_e(3, 0b111)).vacuous
    g = random_game(GameGen(1, 4, "with-null-player", player=2))
    informational = check_null_player("gamma", g)
    assert not informational.vacuous and informational.magnitude >= 0


def test_necessary_property_examples():
    u = unanimity_game(3, 0b011)
    assert check_necessary_property("shapley", u, "weighted-mean").passed()
    e = basis_game_e(3, 0b011)
    assert check_necessary_property("gamma", e, "per-capita").passed()
    assert check_necessary_property("banzhaf", basis_game_e(3, 0b111), "mean").passed()


def test_necessary_property_vacuous_and_inapplicable(elevator_c):
    assert check_necessary_property("shapley", elevator_c, "weighted-mean").vacuous
    with pytest.raises(Inapplicable):
        check_necessary_property("gamma", unanimity_game(3, 0b001), "per-capita")
    with pytest.raises(Inapplicable):
        check_necessary_property("big-gamma", unanimity_game(3, 0b011), "zero-norm-per-capita")
    with pytest.raises(ValueError):
        check_necessary_property("gamma", elevator_c, "median")


def test_coalitional_necessary_examples():
    p = Partition.from_lists(3, [[0], [1, 2]])
    u = CSGame(unanimity_game(3, 0b011), p)
    assert check_coalitional_necessary_property("owen", u, "weighted-coalitional").passed()
    assert check_coalitional_necessary_property("banzhaf-owen", u, "coalitional").passed()
    g = random_game(GameGen(3, 5, "with-necessary-player", player=1))
    g = g.with_worth(g.grand, 0.0)
    csg = CSGame(g, random_partition(5, 3))
    assert check_coalitional_necessary_property("gamma-c", csg, "per-capita-coalitional").passed()
    with pytest.raises(Inapplicable):
        check_coalitional_necessary_property("gamma-c", u, "per-capita-coalitional")


def test_inv_checks(elevator_c):
    assert check_inv("big-gamma", elevator_c, 2, [1, 2, 3]).passed()
    e = basis_game_e(3, 0b011)
    assert check_inv("gamma", e, 1, [1, 0, 0]).magnitude > 0.01
    assert check_inv("shapley", elevator_c, 1, [0, 0, 0]).magnitude == 0


def test_monotonicity_checks():
    rng = np.random.default_rng(32)
    for g in random_games(30, (2, 6), seed=32):
        assert check_coalitional_monotonicity("big-gamma", g, 0b1, 1.0).magnitude == 0
        t = int(rng.integers(1, 1 << g.n))
        if bin(t).count("1") >= 2:
            assert check_coalitional_monotonicity("g", g, t, 1.0).magnitude == 0
        assert check_coalitional_monotonicity("gamma", g, t, 0.0).magnitude == 0


def test_quotient_property_checks(elevator_c):
    for seed in range(20):
        g = random_game(GameGen(seed, 6))
        csg = CSGame(g, random_partition(6, seed))
        assert check_quotient_property("gamma-c", csg).passed()
        assert check_quotient_property("big-gamma-c", csg).passed()
    grand = CSGame(elevator_c, Partition.grand(3))
    # Banzhaf payoffs (27.5, 32.5, 42.5) sum to 102.5, the quotient gives 120
    assert check_quotient_property("banzhaf-owen", grand).magnitude == pytest.approx(17.5)
    # with P = {{1},{2,3}} both totals happen to be (45, 75)
    split = CSGame(elevator_c, Partition.from_lists(3, [[0], [1, 2]]))
    assert check_quotient_property("banzhaf-owen", split).magnitude <= TOL


def test_union_symmetry_checks():
    sym = CSGame(unanimity_game(4, 0b1111), Partition.from_lists(4, [[0, 1], [2, 3]]))
    inside, among = check_union_symmetries("gamma-c", sym)
    assert inside.magnitude == 0 and among.magnitude <= TOL
    inside, among = check_union_symmetries("owen", sym)
    assert inside.passed() and among.passed()
    g = random_game(GameGen(33, 4))
    inside, among = check_union_symmetries("owen", CSGame(g, Partition.grand(4)))
    assert inside.vacuous and among.vacuous


ALL_CHECKS = [
    lambda f, g: check_efficiency(f, g),
    lambda f, g: check_additivity(f, g, g),
    lambda f, g: check_symmetry(f, g),
    lambda f, g: check_null_player(f, g),
    lambda f, g: check_inv(f, g, 2.0, np.zeros(g.n)),
    lambda f, g: check_coalitional_monotonicity(f, g, g.grand, 1.0),
]


@pytest.mark.parametrize("kind", [k for k in ValueKind if not k.coalitional])
def test_point_checks_zero_on_null_game(kind):
    g = null_game(4)
    for check in ALL_CHECKS[:5]:
        assert check(kind, g).magnitude == 0
    for variant in NECESSARY_VARIANTS:
        assert check_necessary_property(kind, g, variant).magnitude == 0


@pytest.mark.parametrize("kind", [k for k in ValueKind if k.coalitional])
def test_coalitional_checks_zero_on_null_game(kind):
    csg = CSGame(null_game(4), Partition.from_lists(4, [[0, 1], [2], [3]]))
    assert check_efficiency(kind, csg).magnitude == 0
    assert check_additivity(kind, csg, csg).magnitude == 0
    assert check_null_player(kind, csg).magnitude == 0
    assert check_quotient_property(kind, csg).magnitude == 0
    assert all(c.magnitude == 0 for c in check_union_symmetries(kind, csg))
    for variant in COALITIONAL_VARIANTS:
        assert check_coalitional_necessary_property(kind, csg, variant).magnitude == 0


def test_generator_determinism_and_classes():
    for kind in GAME_CLASSES:
        a = random_game(GameGen(42, 5, kind))
        assert a == random_game(GameGen(42, 5, kind))
    g = random_game(GameGen(42, 6, "with-necessary-player", player=4))
    assert is_necessary(g, 4)
    assert random_game(GameGen(0, 3, "grand-zero")).values[-1] == 0


def test_voting_class_builds_council(council):
    g = random_game(GameGen(0, 3, "voting", weights=(24, 15, 9), quota=25))
    assert g == council == weighted_voting_game([24, 15, 9], 25)


def test_random_partition_deterministic():
    assert random_partition(7, 5) == random_partition(7, 5)


@pytest.mark.parametrize("kind, theorem", sorted(MATCHED.items()))
def test_matched_audits_pass(kind, theorem):
    report = audit(kind, theorem, trials=60, seed=11)
    assert report.passed, report.failures[:3]


@pytest.mark.parametrize("kind, theorem", [("banzhaf", "T4"), ("gamma", "T2")])
def test_negative_controls(kind, theorem):
    report = audit(kind, theorem, trials=500, seed=7)
    assert len(report.failures) >= 1


def test_banzhaf_t4_fails_on_efficiency():
    report = audit("banzhaf", "T4", trials=50, seed=7)
    assert "efficiency" in {f.axiom for f in report.failures}


def test_audit_arity_mismatch():
    with pytest.raises(ArityMismatch):
        audit("owen", "T1a", trials=1)
    with pytest.raises(ArityMismatch):
        audit("shapley", "T6", trials=1)


def test_audit_report_shape():
    report = audit("big-gamma", "T4", trials=5, seed=1, n=4)
    doc = report.to_dict()
    assert doc["passed"] and doc["axioms"] == list(THEOREMS["T4"]) and doc["trials"] == 5
    assert audit("shapley", "T1a", trials=0).passed


def test_audit_is_reproducible():
    a = audit("banzhaf", "T4", trials=20, seed=3)
    b = audit("banzhaf", "T4", trials=20, seed=3)
    assert a.failures == b.failures


@pytest.mark.parametrize("n", [1, 2, 3, 4, 8])
def test_incompatibility_report(n):
    report = incompatibility_report(n)
    assert report.prescribed_total == Fraction(n, 2 ** (n - 1))
    assert report.grand_worth == 1
    assert report.compatible == (n <= 2)
