"""Exhaustive small-instance families for tests and verification runs.

Everything here is deliberately tiny: complete labeled censuses for ground
sets up to six elements, the closure of the named fixtures under the
operations the library exposes, and the graph and matrix families the
verification harness sweeps.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache
from typing import Iterable, Iterator

from .core import (
    RankTable,
    bits_of,
    contract,
    delete,
    direct_sum,
    dual,
    fano,
    free,
    loops_matroid,
    uniform,
)
from .errors import CapExceeded
from .extensions import all_modular_cuts, extension_by_cut
from .graphs import (
    MultiGraph,
    complete_bipartite,
    cycle,
    cycle_matroid,
    fat_cycle,
    fat_cycle_one_simple,
)

CENSUS_CAP = 6
# Labeled matroid counts by ground-set size; the census generator must
# reproduce these exactly.
CENSUS_COUNTS = (1, 2, 5, 16, 68, 406, 3807)


@lru_cache(maxsize=None)
def all_rank_tables(n: int) -> tuple[RankTable, ...]:
    """All labeled matroids on an n-element ground set.

    Depth-first search over rank tables in increasing mask order: every
    strict submask is ranked before its supersets, so monotonicity, unit
    increase and local submodularity pin a feasible interval at each mask.
    Local submodularity over pairs of removed elements is equivalent to
    the full axiom, hence the search is exact.
    """
    if not 0 <= n <= CENSUS_CAP:
        raise CapExceeded("labeled matroid census", n, CENSUS_CAP)
    size = 1 << n
    ranks = bytearray(size)
    singles = [1 << e for e in range(n)]
    bit_lists = [[singles[e] for e in bits_of(mask)] for mask in range(size)]
    out: list[RankTable] = []

    def assign(mask: int) -> None:
        if mask == size:
            out.append(RankTable(n, list(ranks)))
            return
        bits = bit_lists[mask]
        lo = 0
        hi = size
        for e in bits:
            r = ranks[mask ^ e]
            if r > lo:
                lo = r
            if r + 1 < hi:
                hi = r + 1
        for e, f in itertools.combinations(bits, 2):
            cap = ranks[mask ^ e] + ranks[mask ^ f] - ranks[mask ^ e ^ f]
            if cap < hi:
                hi = cap
        for r in range(lo, hi + 1):
            ranks[mask] = r
            assign(mask + 1)

    assign(1)
    return tuple(out)


def census(max_n: int) -> list[RankTable]:
    """All labeled matroids with at most max_n elements."""
    out: list[RankTable] = []
    for n in range(max_n + 1):
        out.extend(all_rank_tables(n))
    return out


def fixtures() -> dict[str, RankTable]:
    """Named matroids exercised throughout the test suite."""
    fx = {
        "empty": free(0),
        "loop": loops_matroid(1),
        "coloop": free(1),
        "loops2": loops_matroid(2),
        "free3": free(3),
        "U12": uniform(1, 2),
        "U13": uniform(1, 3),
        "U23": uniform(2, 3),
        "U24": uniform(2, 4),
        "U25": uniform(2, 5),
        "U34": uniform(3, 4),
        "fano": fano(),
        "loop+U12": direct_sum(loops_matroid(1), uniform(1, 2)),
        "U12+U23": direct_sum(uniform(1, 2), uniform(2, 3)),
    }
    for k in (3, 4, 5):
        fx[f"M(C{k})"] = cycle_matroid(cycle(k))
    fx["M(K23)"] = cycle_matroid(complete_bipartite(2, 3))
    fx["M(C_3,2)"] = cycle_matroid(fat_cycle(3, 2))
    fx["M(D_3,2)"] = cycle_matroid(fat_cycle_one_simple(3, 2))
    return fx


def family_closure(seeds: Iterable[RankTable], max_n: int = 5) -> list[RankTable]:
    """Close seeds under duals, single-element minors, and extensions.

    Extensions stop at max_n elements; minors and duals always apply, so
    seeds larger than max_n still contribute everything below the cap.
    The returned list keeps only matroids with at most max_n elements,
    sorted by size then fingerprint.
    """
    seen: dict[bytes, RankTable] = {}
    queue: deque[RankTable] = deque()

    def add(m: RankTable) -> None:
        fp = m.fingerprint()
        if fp not in seen:
            seen[fp] = m
            queue.append(m)

    for s in seeds:
        add(s)
    while queue:
        m = queue.popleft()
        add(dual(m))
        for e in range(m.n):
            add(delete(m, 1 << e))
            add(contract(m, 1 << e))
        if m.n < max_n:
            for cut in all_modular_cuts(m):
                add(extension_by_cut(m, cut))
    kept = [m for m in seen.values() if m.n <= max_n]
    kept.sort(key=lambda t: (t.n, t.fingerprint()))
    return kept


def all_matrices(rows: int, cols: int, p: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every rows-by-cols matrix over GF(p), as nested tuples."""
    cells = itertools.product(range(p), repeat=rows * cols)
    for flat in cells:
        yield tuple(flat[i * cols : (i + 1) * cols] for i in range(rows))


def matrix_family(max_rows: int, max_cols: int, p: int = 2):
    """All matrices over GF(p) up to the given shape, smallest first."""
    for rows in range(1, max_rows + 1):
        for cols in range(1, max_cols + 1):
            yield from all_matrices(rows, cols, p)


def connected_multigraphs(max_edges: int) -> list[MultiGraph]:
    """Connected loopless multigraphs with at most max_edges edges, up to iso.

    Grown one edge at a time: a new edge joins two existing vertices or
    hangs a fresh vertex off an existing one.  Deleting a non-tree edge or
    a leaf keeps a multigraph connected, so every target is reached.
    """
    start = MultiGraph(1, [])
    seen: dict[bytes, MultiGraph] = {start.canonical_key(): start}
    level = [start]
    for _ in range(max_edges):
        grown: list[MultiGraph] = []
        for g in level:
            moves = [
                MultiGraph(g.nv, g.edges + ((u, v),))
                for u, v in itertools.combinations(range(g.nv), 2)
            ]
            moves.extend(
                MultiGraph(g.nv + 1, g.edges + ((u, g.nv),)) for u in range(g.nv)
            )
            for h in moves:
                key = h.canonical_key()
                if key not in seen:
                    seen[key] = h
                    grown.append(h)
        level = grown
    out = list(seen.values())
    out.sort(key=lambda g: (g.ne, g.nv, g.canonical_key()))
    return out
