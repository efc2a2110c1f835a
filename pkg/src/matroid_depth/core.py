"""Matroids on small ground sets, stored as explicit rank tables.

Elements are labeled 0..n-1 and subsets are Python int bitmasks, so a
matroid on n elements is a numpy array of 2**n subset ranks.  Every
operation returns a fresh immutable table; minors relabel surviving
elements in increasing original order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import CapExceeded, InvalidInput, InvalidMatroid

RANK_TABLE_CAP = 16

_POPCOUNT: dict[int, np.ndarray] = {}


def popcount_table(n: int) -> np.ndarray:
    """Table of bit counts for all masks over n elements."""
    tab = _POPCOUNT.get(n)
    if tab is None:
        tab = np.zeros(1 << n, dtype=np.uint8)
        for e in range(n):
            bit = 1 << e
            tab[bit : bit << 1] = tab[:bit] + 1
        tab.setflags(write=False)
        _POPCOUNT[n] = tab
    return tab


def iter_submasks(mask: int) -> Iterator[int]:
    """All submasks of mask, descending, including mask and 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class RankTable:
    """Immutable matroid given by the rank of every subset of the ground set."""

    __slots__ = ("n", "_ranks", "_fp")

    def __init__(self, n: int, ranks) -> None:
        if n > RANK_TABLE_CAP:
            raise CapExceeded("rank table ground set", n, RANK_TABLE_CAP)
        arr = np.asarray(ranks, dtype=np.uint8).copy()
        if arr.shape != ((1 << n),):
            raise InvalidInput(f"rank table needs {1 << n} entries, got {arr.shape}")
        arr.setflags(write=False)
        self.n = n
        self._ranks = arr
        self._fp: bytes | None = None

    @property
    def ranks(self) -> np.ndarray:
        return self._ranks

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def rank(self, mask: int = -1) -> int:
        if mask < 0:
            mask = self.full
        return int(self._ranks[mask])

    def fingerprint(self) -> bytes:
        if self._fp is None:
            self._fp = bytes([self.n]) + self._ranks.tobytes()
        return self._fp

    def __eq__(self, other) -> bool:
        return isinstance(other, RankTable) and self.fingerprint() == other.fingerprint()

    def __hash__(self) -> int:
        return hash(self.fingerprint())

    def __repr__(self) -> str:
        return f"RankTable(n={self.n}, rank={self.rank()})"

    def elements(self) -> range:
        return range(self.n)

    def validate(self) -> None:
        """Raise InvalidMatroid unless the table satisfies the rank axioms.

        Checks rank of the empty set, the unit-increase axiom, and the local
        exchange form of submodularity; together these imply full
        submodularity, so the check stays O(2^n * n^2).
        """
        r = self._ranks.astype(np.int16)
        if r[0] != 0:
            raise InvalidMatroid("rank of empty set is not 0")
        idx = np.arange(1 << self.n)
        for e in range(self.n):
            diff = r[idx | (1 << e)] - r[idx]
            if diff.min() < 0 or diff.max() > 1:
                raise InvalidMatroid(f"unit increase fails at element {e}")
        for e in range(self.n):
            be = 1 << e
            for f in range(e + 1, self.n):
                bf = 1 << f
                base = idx[(idx & (be | bf)) == 0]
                bad = r[base | be] + r[base | bf] < r[base | be | bf] + r[base]
                if bad.any():
                    raise InvalidMatroid(f"submodularity fails at pair ({e}, {f})")

    # --- basic derived data -------------------------------------------------

    def loops(self) -> int:
        """Bitmask of rank-zero singletons."""
        m = 0
        for e in range(self.n):
            if self._ranks[1 << e] == 0:
                m |= 1 << e
        return m

    def coloops(self) -> int:
        """Bitmask of elements contained in every basis."""
        m = 0
        r = self.rank()
        for e in range(self.n):
            if self._ranks[self.full ^ (1 << e)] < r:
                m |= 1 << e
        return m

    def connectivity_table(self) -> np.ndarray:
        """lambda(X) for every subset mask X, as one vectorized pass."""
        r = self._ranks.astype(np.int16)
        # ranks reversed over masks gives rank of the complement.
        return r + r[::-1] - int(r[-1])


def _as_table(value) -> RankTable:
    if isinstance(value, RankTable):
        return value
    if isinstance(value, OracleMatroid):
        return value.materialize()
    raise InvalidInput(f"expected a matroid, got {type(value).__name__}")


class OracleMatroid:
    """Matroid given by a rank callback, memoized per queried subset."""

    def __init__(self, n: int, rank_fn: Callable[[int], int], provenance: str = "") -> None:
        self.n = n
        self.provenance = provenance
        self._rank_fn = rank_fn
        self._memo: dict[int, int] = {}

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def rank(self, mask: int = -1) -> int:
        if mask < 0:
            mask = self.full
        got = self._memo.get(mask)
        if got is None:
            got = int(self._rank_fn(mask))
            self._memo[mask] = got
        return got

    def materialize(self, validate: bool = False) -> RankTable:
        table = RankTable(self.n, [self.rank(m) for m in range(1 << self.n)])
        if validate:
            table.validate()
        return table


# --- minors, duality, sums --------------------------------------------------


def _survivor_index(n: int, removed: int) -> tuple[np.ndarray, int]:
    """Map masks over the surviving elements to masks over the original ones."""
    keep = [e for e in range(n) if not removed >> e & 1]
    k = len(keep)
    idx = np.zeros(1 << k, dtype=np.int64)
    for j, e in enumerate(keep):
        bit = 1 << j
        idx[bit : bit << 1] = idx[:bit] + (1 << e)
    return idx, k


def delete(m: RankTable, mask: int) -> RankTable:
    m = _as_table(m)
    idx, k = _survivor_index(m.n, mask)
    return RankTable(k, m.ranks[idx])


def contract(m: RankTable, mask: int) -> RankTable:
    m = _as_table(m)
    idx, k = _survivor_index(m.n, mask)
    base = int(m.ranks[mask])
    return RankTable(k, m.ranks[idx | mask].astype(np.int16) - base)


def minor(m: RankTable, deleted: int, contracted: int) -> RankTable:
    if deleted & contracted:
        raise InvalidInput("deleted and contracted sets overlap")
    return delete(contract(m, contracted), _project_mask(m.n, deleted, contracted))


def _project_mask(n: int, mask: int, removed: int) -> int:
    """Rewrite mask over [n] minus removed, after relabeling compaction."""
    out = 0
    j = 0
    for e in range(n):
        if removed >> e & 1:
            continue
        if mask >> e & 1:
            out |= 1 << j
        j += 1
    return out


def restrict(m: RankTable, mask: int) -> RankTable:
    return delete(m, _as_table(m).full ^ mask)


def dual(m: RankTable) -> RankTable:
    m = _as_table(m)
    pop = popcount_table(m.n).astype(np.int16)
    ranks = pop + m.ranks[::-1].astype(np.int16) - m.rank()
    return RankTable(m.n, ranks)


def direct_sum(a: RankTable, b: RankTable) -> RankTable:
    a, b = _as_table(a), _as_table(b)
    if a.n + b.n > RANK_TABLE_CAP:
        raise CapExceeded("direct sum ground set", a.n + b.n, RANK_TABLE_CAP)
    ra = a.ranks.astype(np.int16)
    rb = b.ranks.astype(np.int16)
    ranks = (rb[:, None] + ra[None, :]).reshape(-1)
    return RankTable(a.n + b.n, ranks)


# --- connectivity -----------------------------------------------------------


def connectivity(m: RankTable, mask: int) -> int:
    """lambda(X) = r(X) + r(E-X) - r(E); zero exactly on unions of components."""
    m = _as_table(m)
    return int(m.ranks[mask]) + int(m.ranks[m.full ^ mask]) - m.rank()


def components(m: RankTable) -> list[int]:
    """Component masks ordered by least element; empty list for n = 0.

    Sets with lambda = 0 are closed under intersection, so the component of e
    is the intersection of all lambda-zero sets containing e.
    """
    m = _as_table(m)
    if m.n == 0:
        return []
    lam = m.connectivity_table()
    seps = np.nonzero(lam == 0)[0]
    out: list[int] = []
    seen = 0
    for e in range(m.n):
        if seen >> e & 1:
            continue
        with_e = seps[(seps >> e) & 1 == 1]
        comp = int(np.bitwise_and.reduce(with_e)) if len(with_e) else m.full
        out.append(comp)
        seen |= comp
    return out


def is_connected(m: RankTable) -> bool:
    """True when the matroid has exactly one component (so n >= 1)."""
    return len(components(m)) == 1


# --- circuits and closure ---------------------------------------------------


def circuits(m: RankTable) -> list[int]:
    """All circuit masks, ascending as integers."""
    m = _as_table(m)
    pop = popcount_table(m.n)
    out = []
    for mask in range(1, 1 << m.n):
        k = int(pop[mask])
        if int(m.ranks[mask]) != k - 1:
            continue
        if all(int(m.ranks[mask ^ (1 << e)]) == k - 1 for e in bits_of(mask)):
            out.append(mask)
    return out


def circumference(m: RankTable) -> int:
    """Size of a largest circuit, 1 when the matroid has no circuit."""
    m = _as_table(m)
    pop = popcount_table(m.n)
    best = 1
    for c in circuits(m):
        best = max(best, int(pop[c]))
    return best


def cocircumference(m: RankTable) -> int:
    return circumference(dual(m))


def closure(m: RankTable, mask: int) -> int:
    m = _as_table(m)
    out = mask
    base = int(m.ranks[mask])
    for e in range(m.n):
        if not out >> e & 1 and int(m.ranks[mask | (1 << e)]) == base:
            out |= 1 << e
    return out


def closure_table(m: RankTable) -> np.ndarray:
    """cl(X) for every mask X, vectorized."""
    m = _as_table(m)
    idx = np.arange(1 << m.n, dtype=np.int64)
    out = idx.copy()
    r = m.ranks
    for e in range(m.n):
        bit = 1 << e
        out |= np.where(r[idx | bit] == r, bit, 0)
    return out


def is_modular_pair(m: RankTable, x: int, y: int) -> bool:
    m = _as_table(m)
    r = m.ranks
    return int(r[x]) + int(r[y]) == int(r[x | y]) + int(r[x & y])


def is_bispan(m: RankTable, x: int, y: int) -> bool:
    """Disjoint sets whose closures jointly cover the ground set."""
    m = _as_table(m)
    if x & y:
        return False
    return closure(m, x) | closure(m, y) == m.full


def is_connected_bispan(m: RankTable, x: int, y: int) -> bool:
    m = _as_table(m)
    if not is_bispan(m, x, y):
        return False
    return int(m.ranks[x]) + int(m.ranks[y]) > m.rank()


# --- named fixtures ---------------------------------------------------------


def uniform(k: int, n: int) -> RankTable:
    pop = popcount_table(n)
    return RankTable(n, np.minimum(pop, k))


def free(n: int) -> RankTable:
    return uniform(n, n)


def loops_matroid(n: int) -> RankTable:
    return uniform(0, n)


def _xor_rank(vectors: list[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def fano() -> RankTable:
    """Rank-3 binary matroid whose columns are the nonzero vectors of GF(2)^3."""
    cols = list(range(1, 8))
    ranks = []
    for mask in range(1 << 7):
        ranks.append(_xor_rank([cols[e] for e in bits_of(mask)]))
    return RankTable(7, ranks)


def named(name: str, **params) -> RankTable:
    """Core fixture factory; graph-backed fixtures live in the graphs module."""
    if name == "uniform":
        return uniform(int(params["k"]), int(params["n"]))
    if name == "free":
        return free(int(params["n"]))
    if name == "loops":
        return loops_matroid(int(params["n"]))
    if name == "fano":
        return fano()
    raise InvalidInput(f"unknown fixture name: {name!r}")
