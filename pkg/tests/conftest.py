import numpy as np
import pytest
from hypothesis import strategies as st

from coopvalues.game import Game, Partition, make_game
from coopvalues.gamefile import builtin_game


@pytest.fixture
def elevator_c() -> Game:
    return builtin_game("elevator_c").game


@pytest.fixture
def elevator_d() -> Game:
    return builtin_game("elevator_d").game


@pytest.fixture
def council() -> Game:
    # weights 24, 15, 9 and quota 25
    return make_game(3, {0b011: 1, 0b101: 1, 0b111: 1})


def random_games(count, n_range=(1, 8), seed=0):
    """Deterministic batch of uniform games in [-10, 10]."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        values = rng.uniform(-10, 10, size=1 << n)
        values[0] = 0.0
        yield Game(n, values)


@st.composite
def games(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    worths = draw(
        st.lists(
            st.floats(-10, 10, allow_nan=False, allow_infinity=False),
            min_size=(1 << n) - 1,
            max_size=(1 << n) - 1,
        )
    )
    return Game(n, np.array([0.0, *worths]))


@st.composite
def partitions(draw, n):
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    unions = {}
    for i, lab in enumerate(labels):
        unions[lab] = unions.get(lab, 0) | (1 << i)
    return Partition(n, tuple(unions[k] for k in sorted(unions)))


@st.composite
def cs_games(draw, min_n=1, max_n=6):
    from coopvalues.game import CSGame

    g = draw(games(min_n, max_n))
    return CSGame(g, draw(partitions(g.n)))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("tests.test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[criterion])
