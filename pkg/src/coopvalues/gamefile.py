"""JSON game files.

A game file looks like::

    {
      "players": ["1", "2", "3"],
      "kind": "cost",
      "coalitions": {"1": 80, "2": 90, "1,2": 100, "1,2,3": 120},
      "partition": [["1"], ["2", "3"]]
    }

Coalition keys are comma-joined player labels in any order; omitted
coalitions are worth 0. ``partition`` and ``kind`` are optional, and
``kind`` ("cost" or "benefit") only affects table captions.
"""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Union

from .game import CSGame, Game, GameError, Partition, make_game, members

KINDS = ("cost", "benefit")


class GameFileError(GameError):
    """The game file is syntactically or semantically invalid."""


@dataclass(frozen=True)
class GameFile:
    game: Game
    partition: Optional[Partition] = None
    kind: Optional[str] = None

    @property
    def target(self) -> Union[Game, CSGame]:
        return CSGame(self.game, self.partition) if self.partition else self.game


def _no_duplicate_keys(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise GameFileError(f"duplicate key {key!r}")
        out[key] = value
    return out


def _mask(labels: list[str], index: dict[str, int], where: str) -> int:
    mask = 0
    for raw in labels:
        label = raw.strip()
        if label not in index:
            raise GameFileError(f"unknown player {label!r} in {where}")
        bit = 1 << index[label]
        if mask & bit:
            raise GameFileError(f"player {label!r} repeated in {where}")
        mask |= bit
    return mask


def parse_game_file(text: str) -> GameFile:
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise GameFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GameFileError("a game file must be a JSON object")

    players = doc.get("players")
    if not isinstance(players, list) or not players:
        raise GameFileError("'players' must be a non-empty list of labels")
    for label in players:
        if not isinstance(label, str) or not label.strip() or "," in label:
            raise GameFileError(f"invalid player label {label!r}")
    labels = [p.strip() for p in players]
    if len(set(labels)) != len(labels):
        raise GameFileError("player labels must be unique")
    index = {label: i for i, label in enumerate(labels)}

    coalitions = doc.get("coalitions", {})
    if not isinstance(coalitions, dict):
        raise GameFileError("'coalitions' must be an object")
    entries: dict[int, float] = {}
    for key, worth in coalitions.items():
        if isinstance(worth, bool) or not isinstance(worth, numbers.Real):
            raise GameFileError(f"worth of {key!r} is not a number: {worth!r}")
        mask = _mask(key.split(",") if key.strip() else [], index, f"coalition {key!r}")
        if mask in entries:
            raise GameFileError(f"coalition {key!r} is listed twice")
        entries[mask] = float(worth)

    try:
        game = make_game(len(labels), entries, labels)
    except GameError as exc:
        raise GameFileError(str(exc)) from exc

    partition = None
    if doc.get("partition") is not None:
        groups = doc["partition"]
        if not isinstance(groups, list) or not all(isinstance(g, list) for g in groups):
            raise GameFileError("'partition' must be a list of lists of labels")
        unions = [_mask(g, index, "partition") for g in groups]
        try:
            partition = Partition(len(labels), tuple(unions))
        except GameError as exc:
            raise GameFileError(f"not a partition of the players: {exc}") from exc

    kind = doc.get("kind")
    if kind is not None and kind not in KINDS:
        raise GameFileError(f"'kind' must be one of {KINDS}, got {kind!r}")
    return GameFile(game, partition, kind)


def load_game_file(path) -> GameFile:
    with open(path, encoding="utf-8") as fh:
        return parse_game_file(fh.read())


def game_to_dict(
    game: Game, partition: Optional[Partition] = None, kind: Optional[str] = None
) -> dict:
    labels = list(game.labels)
    coalitions = {
        ",".join(labels[i] for i in members(mask)): float(game.values[mask])
        for mask in range(1, 1 << game.n)
        if game.values[mask] != 0.0
    }
    doc: dict = {"players": labels}
    if kind:
        doc["kind"] = kind
    doc["coalitions"] = coalitions
    if partition is not None:
        doc["partition"] = [[labels[i] for i in members(u)] for u in partition.unions]
    return doc


def serialize_game(
    game: Game, partition: Optional[Partition] = None, kind: Optional[str] = None
) -> str:
    return json.dumps(game_to_dict(game, partition, kind), indent=2) + "\n"


def builtin_game(name: str) -> GameFile:
    """Load one of the bundled game files, e.g. ``builtin_game("elevator_c")``."""
    text = resources.files("coopvalues.data").joinpath(f"{name}.json").read_text("utf-8")
    return parse_game_file(text)
