"""Values for games with a coalition structure.

Every sum here ranges over partition-compatible coalitions
``Q_R ∪ T``: ``Q_R`` is the union of a set ``R`` of complete unions other
than the player's own union ``P_k``, and ``T`` is a subset of ``P_k``.

Note on the Owen value: some printed derivations of its necessary-player
characterization show Banzhaf-style weights ``1/2^(m-1) * 1/2^(p_k-1)`` in
the final line. That is not the Owen value; :func:`owen` uses the
definitional binomial weights throughout.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .classic import allocation
from .game import CSGame, members, partition_normalize, popcounts, submasks


def _other_unions(csg: CSGame, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Player masks ``Q_R`` for every ``R ⊆ M∖{k}`` (ascending ``R``), and ``|R|``."""
    p = csg.partition
    table = p.expand_all()
    rs = submasks(((1 << p.m) - 1) & ~(1 << k))
    return table[rs], popcounts(p.m)[rs]


def _union_data(csg: CSGame, i: int):
    p = csg.partition
    k = p.member_of[i]
    own = p.unions[k]
    return k, own, bin(own).count("1"), p.m


def _marginal_sums(csg: CSGame, weighted: bool) -> np.ndarray:
    g = csg.game
    out = np.empty(g.n)
    for i in range(g.n):
        k, own, pk, m = _union_data(csg, i)
        q, r = _other_unions(csg, k)
        t_masks = submasks(own & ~(1 << i))
        t = popcounts(g.n)[t_masks]
        base = q[:, None] | t_masks[None, :]
        marginal = g.values[base | (1 << i)] - g.values[base]
        if weighted:
            wr = np.array([1.0 / math.comb(m - 1, x) for x in r])
            wt = np.array([1.0 / math.comb(pk - 1, x) for x in t])
            out[i] = wr @ marginal @ wt / (m * pk)
        else:
            out[i] = marginal.sum() / (2 ** (m - 1) * 2 ** (pk - 1))
    return out


def owen(csg: CSGame) -> np.ndarray:
    return allocation(_marginal_sums(csg, weighted=True))


def banzhaf_owen(csg: CSGame) -> np.ndarray:
    return allocation(_marginal_sums(csg, weighted=False))


def owen_ordering_oracle(csg: CSGame) -> np.ndarray:
    """Mean marginal contribution over every arrival order in which each
    union's members arrive consecutively."""
    g, p = csg.game, csg.partition
    blocks = [members(u) for u in p.unions]
    totals = [0.0] * g.n
    count = 0
    for union_order in itertools.permutations(range(p.m)):
        for inner in itertools.product(*(itertools.permutations(blocks[k]) for k in union_order)):
            mask = 0
            for block in inner:
                for j in block:
                    totals[j] += g.values[mask | (1 << j)] - g.values[mask]
                    mask |= 1 << j
            count += 1
    return allocation([x / count for x in totals])


def _gamma_c_raw(csg: CSGame) -> np.ndarray:
    g, p = csg.game, csg.partition
    v = g.values
    sizes = popcounts(g.n)
    union_sizes = popcounts(p.m)
    table = p.expand_all()
    out = np.empty(g.n)
    for i in range(g.n):
        k, own, pk, m = _union_data(csg, i)
        q, _ = _other_unions(csg, k)
        t_masks = submasks(own)
        t_masks = t_masks[(t_masks != 0) & (t_masks != own)]
        t = sizes[t_masks]
        has_i = (t_masks >> i) & 1 == 1
        worth = v[q[:, None] | t_masks[None, :]]
        intra = worth[:, has_i].sum(axis=0) @ (1.0 / t[has_i]) - worth[:, ~has_i].sum(
            axis=0
        ) @ (1.0 / (pk - t[~has_i]))

        rs = np.arange(1, (1 << m) - 1)
        r = union_sizes[rs]
        with_k = (rs >> k) & 1 == 1
        between = np.dot(v[table[rs[with_k]]], 1.0 / r[with_k]) - np.dot(
            v[table[rs[~with_k]]], 1.0 / (m - r[~with_k])
        )
        out[i] = (
            intra / (2 ** (m - 1) * 2 ** (pk - 1))
            + between / (2 ** (m - 1) * pk)
            + v[g.grand] / (m * pk)
        )
    return out


def gamma_c(csg: CSGame) -> np.ndarray:
    return allocation(_gamma_c_raw(csg))


def _union_surplus_share(csg: CSGame) -> np.ndarray:
    """``v({i}) + (v(P_k) − Σ_{j∈P_k} v({j})) / p_k`` for every player."""
    g, p = csg.game, csg.partition
    singles = g.singletons()
    out = np.empty(g.n)
    for i in range(g.n):
        own = p.union_of(i)
        team = members(own)
        out[i] = singles[i] + (g.values[own] - singles[team].sum()) / len(team)
    return out


def big_gamma_c(csg: CSGame) -> np.ndarray:
    shifted = CSGame(partition_normalize(csg), csg.partition)
    return allocation(_union_surplus_share(csg) + _gamma_c_raw(shifted))


def coalitional_correction(csg: CSGame) -> np.ndarray:
    """The intra-union and between-union per-capita terms of gamma^C, i.e.
    ``gamma^C - ED^U``. Evaluated with explicit loops, independently of
    :func:`gamma_c`."""
    g, p = csg.game, csg.partition
    m = p.m
    out = []
    for i in range(g.n):
        k = p.member_of[i]
        own = p.unions[k]
        pk = bin(own).count("1")
        intra = 0.0
        between = 0.0
        for rmask in range(1 << m):
            q = p.expand(rmask)
            r = bin(rmask).count("1")
            if not rmask >> k & 1:
                for t_mask in range(1, own + 1):
                    if t_mask & own != t_mask or t_mask == own:
                        continue
                    t = bin(t_mask).count("1")
                    if t_mask >> i & 1:
                        intra += g.values[q | t_mask] / t
                    else:
                        intra -= g.values[q | t_mask] / (pk - t)
                if rmask:
                    between -= g.values[q] / (m - r)
            elif rmask != (1 << m) - 1:
                between += g.values[q] / r
        out.append(intra / (2 ** (m - 1) * 2 ** (pk - 1)) + between / (2 ** (m - 1) * pk))
    return allocation(out)


def ed_u(csg: CSGame) -> np.ndarray:
    """Coalitional equal division, obtained as gamma^C minus its per-capita
    correction. Reduces to ``v(N) / (m * p_k)``."""
    return allocation(gamma_c(csg) - coalitional_correction(csg))


def esd2_u(csg: CSGame) -> np.ndarray:
    """Coalitional equal surplus division, obtained as Gamma^C minus the
    per-capita correction of the partition-normalized game."""
    shifted = CSGame(partition_normalize(csg), csg.partition)
    return allocation(big_gamma_c(csg) - coalitional_correction(shifted))


def union_totals(csg: CSGame, payoffs: np.ndarray) -> np.ndarray:
    """``Σ_{i∈P_k} payoffs_i`` for each union ``k``."""
    return np.array([payoffs[members(u)].sum() for u in csg.partition.unions])
