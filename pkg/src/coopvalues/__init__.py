"""Values for cooperative TU games, with and without coalition structures."""

from .classic import (
    banzhaf,
    equal_division,
    equal_surplus_division,
    shapley,
    shapley_permutation_oracle,
)
from .coalitional import banzhaf_owen, big_gamma_c, ed_u, esd2_u, gamma_c, owen
from .game import (
    CSGame,
    Game,
    GameError,
    Partition,
    basis_game_e,
    coalition,
    make_game,
    partition_normalize,
    quotient_game,
    s_equivalent,
    unanimity_game,
    zero_normalize,
)
from .novel import big_gamma_value, g_value, gamma_value
from .values import ValueKind, compute

__version__ = "0.1.0"
