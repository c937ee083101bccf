"""Dispatch from value names to implementations."""

from __future__ import annotations

from enum import Enum
from typing import Callable, Union

import numpy as np

from . import classic, coalitional, novel
from .game import CSGame, Game


class ValueKind(str, Enum):
    SHAPLEY = "shapley"
    BANZHAF = "banzhaf"
    ED = "ed"
    ESD = "esd"
    G = "g"
    GAMMA = "gamma"
    BIG_GAMMA = "big-gamma"
    OWEN = "owen"
    BANZHAF_OWEN = "banzhaf-owen"
    GAMMA_C = "gamma-c"
    BIG_GAMMA_C = "big-gamma-c"
    ED_U = "ed-u"
    ESD2_U = "esd2-u"

    @property
    def coalitional(self) -> bool:
        return self in _COALITIONAL

    def __str__(self) -> str:
        return self.value


_POINT: dict[ValueKind, Callable[[Game], np.ndarray]] = {
    ValueKind.SHAPLEY: classic.shapley,
    ValueKind.BANZHAF: classic.banzhaf,
    ValueKind.ED: classic.equal_division,
    ValueKind.ESD: classic.equal_surplus_division,
    ValueKind.G: novel.g_value,
    ValueKind.GAMMA: novel.gamma_value,
    ValueKind.BIG_GAMMA: novel.big_gamma_value,
}

_COALITIONAL: dict[ValueKind, Callable[[CSGame], np.ndarray]] = {
    ValueKind.OWEN: coalitional.owen,
    ValueKind.BANZHAF_OWEN: coalitional.banzhaf_owen,
    ValueKind.GAMMA_C: coalitional.gamma_c,
    ValueKind.BIG_GAMMA_C: coalitional.big_gamma_c,
    ValueKind.ED_U: coalitional.ed_u,
    ValueKind.ESD2_U: coalitional.esd2_u,
}

# Column headings used in rendered tables.
DISPLAY_NAMES = {
    ValueKind.SHAPLEY: "Shapley",
    ValueKind.BANZHAF: "Banzhaf",
    ValueKind.ED: "Egalitarian",
    ValueKind.ESD: "ESD",
    ValueKind.G: "G",
    ValueKind.GAMMA: "gamma",
    ValueKind.BIG_GAMMA: "Gamma",
    ValueKind.OWEN: "Owen",
    ValueKind.BANZHAF_OWEN: "Banzhaf-Owen",
    ValueKind.GAMMA_C: "gamma^C",
    ValueKind.BIG_GAMMA_C: "Gamma^C",
    ValueKind.ED_U: "ED^U",
    ValueKind.ESD2_U: "ESD2^U",
}


def value_function(kind: ValueKind | str) -> Callable:
    kind = ValueKind(kind)
    return _COALITIONAL[kind] if kind.coalitional else _POINT[kind]


def compute(kind: ValueKind | str, target: Union[Game, CSGame]) -> np.ndarray:
    """Evaluate ``kind`` on a game or a game with a coalition structure.

    Point values accept a :class:`CSGame` and ignore its partition;
    coalitional values require one.
    """
    kind = ValueKind(kind)
    if kind.coalitional:
        if not isinstance(target, CSGame):
            raise TypeError(f"{kind} needs a game with a coalition structure")
        return _COALITIONAL[kind](target)
    game = target.game if isinstance(target, CSGame) else target
    return _POINT[kind](game)
