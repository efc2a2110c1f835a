"""Single-element extensions, modular cuts, and the starred transformations.

An extension of M by one element corresponds to a modular cut: an
up-closed family of flats closed under intersecting modular pairs.  The
new element always receives the next label, m.n.
"""

from __future__ import annotations

from .core import (
    RankTable,
    closure_table,
    contract,
    delete,
    dual,
    is_connected_bispan,
)
from .errors import InvalidExtension

import numpy as np


def flats(m: RankTable) -> list[int]:
    """All closed sets, ascending as masks."""
    ct = closure_table(m)
    idx = np.arange(1 << m.n)
    return [int(x) for x in idx[ct == idx]]


def is_modular_cut(m: RankTable, cut: frozenset[int]) -> bool:
    fl = set(flats(m))
    if not cut <= fl:
        return False
    r = m.ranks
    for f in cut:
        for g in fl:
            if g & f == f and g not in cut:
                return False
    for f in cut:
        for g in cut:
            if int(r[f]) + int(r[g]) == int(r[f | g]) + int(r[f & g]):
                if f & g not in cut:
                    return False
    return True


def extension_by_cut(m: RankTable, cut: frozenset[int]) -> RankTable:
    """Extend by one element whose closure membership is given by the cut."""
    ct = closure_table(m)
    old = m.ranks.astype(np.int16)
    size = 1 << m.n
    new = np.empty(2 * size, dtype=np.int16)
    new[:size] = old
    in_cut = np.zeros(size, dtype=bool)
    for f in cut:
        in_cut[f] = True
    new[size:] = np.where(in_cut[ct], old, old + 1)
    return RankTable(m.n + 1, new)


def free_extension(m: RankTable) -> RankTable:
    return extension_by_cut(m, frozenset({m.full}))


def all_modular_cuts(m: RankTable) -> list[frozenset[int]]:
    """Every modular cut, the empty one included.

    Grown breadth-first: insert one more flat into a known cut, then close
    under up-sets and modular intersections.  Every cut is reachable this
    way because closures of subsets of a cut stay inside it.
    """
    fl = flats(m)
    up: dict[int, frozenset[int]] = {}
    for f in fl:
        up[f] = frozenset(g for g in fl if g & f == f)
    r = m.ranks

    def close(seed: frozenset[int]) -> frozenset[int]:
        cur = set()
        for f in seed:
            cur |= up[f]
        while True:
            add = set()
            items = sorted(cur)
            for i, f in enumerate(items):
                for g in items[i + 1 :]:
                    h = f & g
                    if h in cur or h in add:
                        continue
                    if int(r[f]) + int(r[g]) == int(r[f | g]) + int(r[h]):
                        add |= up[h]
            if not add:
                return frozenset(cur)
            cur |= add

    empty = frozenset()
    out = [empty]
    seen = {empty}
    frontier = [empty]
    while frontier:
        nxt = []
        for cut in frontier:
            for f in fl:
                if f in cut:
                    continue
                grown = close(cut | {f})
                if grown not in seen:
                    seen.add(grown)
                    out.append(grown)
                    nxt.append(grown)
        frontier = nxt
    return out


def all_extensions(m: RankTable) -> list[RankTable]:
    return [extension_by_cut(m, cut) for cut in all_modular_cuts(m)]


def cstar_transformations(m: RankTable) -> list[RankTable]:
    """All matroids M+/e over single-element extensions M+ = M + e.

    The two degenerate cuts are skipped: the empty cut makes e a coloop and
    the cuts containing cl(empty) make e a loop; either way contracting e
    returns M itself.  Every kept transformation has rank exactly
    rank(M) - 1, so the results are never equal to M.
    """
    loops_flat = closure_of_empty(m)
    out = []
    for cut in all_modular_cuts(m):
        if not cut or loops_flat in cut:
            continue
        ext = extension_by_cut(m, cut)
        out.append(contract(ext, 1 << m.n))
    return out


def dstar_transformations(m: RankTable) -> list[RankTable]:
    """Duals of c*-transformations of the dual: coextend, then delete."""
    return [dual(x) for x in cstar_transformations(dual(m))]


def closure_of_empty(m: RankTable) -> int:
    return int(closure_table(m)[0]) if m.n else 0


def coextension_by_cut(m: RankTable, cut: frozenset[int]) -> RankTable:
    """Single-element coextension: dualize, extend, dualize back."""
    return dual(extension_by_cut(dual(m), cut))


def relatively_free_extension(m: RankTable, x: int, y: int) -> RankTable:
    """Extension by e with e in cl(Z) iff (X u Z, Y u Z) is a modular pair.

    Requires (x, y) to be a connected bispan; the resulting element is then
    neither a loop nor a coloop and lies in cl(X) and cl(Y).
    """
    if not is_connected_bispan(m, x, y):
        raise InvalidExtension(f"({x:#x}, {y:#x}) is not a connected bispan")
    r = m.ranks.astype(np.int16)
    total = m.rank()
    size = 1 << m.n
    idx = np.arange(size)
    cond = r[idx | x] + r[idx | y] == total + r
    new = np.empty(2 * size, dtype=np.int16)
    new[:size] = r
    new[size:] = np.where(cond, r, r + 1)
    return RankTable(m.n + 1, new)


def guts_contract(m: RankTable, a: int, b: int) -> tuple[RankTable, int]:
    """Collapse the interaction across the bipartition (a, b).

    Repeats relatively-free-extend-then-contract until (a, b) stops being a
    connected bispan; the result is the direct sum of the two contractions
    M/a and M/b placed on b and a, reached in exactly lambda(a) steps.
    """
    steps = 0
    cur = m
    while is_connected_bispan(cur, a, b):
        ext = relatively_free_extension(cur, a, b)
        cur = contract(ext, 1 << cur.n)
        steps += 1
    return cur, steps


def extension_is_valid(m: RankTable, ext: RankTable) -> bool:
    """Check ext is a one-element extension of m by the last label."""
    if ext.n != m.n + 1:
        return False
    return delete(ext, 1 << m.n) == m
