"""Depth parameters computed directly on matrices over prime fields.

Columns play the role of matroid elements.  Two families of moves drive
the recursions: append-a-column-then-contract-it (the matrix form of a
starred contraction) and append-a-row (the matrix form of a starred
coextension).  Values are invariant under elementary row operations, so
every recursion is memoized on the reduced row space of the matrix.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import RankTable, bits_of, components
from .decomposition import rank_base_adjust
from .depth import Measure, depth
from .errors import CapExceeded, InvalidInput
from .gfield import (
    inverse_mod,
    row_space_key,
    rref,
    validate_prime,
    vector_matroid,
)
from .graphs import MultiGraph, tree_depth

MATRIX_COLS_CAP = 10
MOVE_ENUM_CAP = 4096
GL_FORMS_CAP = 25000

_MATRIX_MEMO: dict[tuple[bytes, str], int] = {}
_ENUM_MEMO: dict[tuple[int, int, int, bytes], tuple[int, int, int]] = {}
_TD_BY_GRAPH: dict[bytes, int] = {}


def clear_matrix_caches() -> None:
    _MATRIX_MEMO.clear()
    _ENUM_MEMO.clear()
    _TD_BY_GRAPH.clear()


class FFMatrix:
    """Immutable matrix over GF(p); rows may be empty, columns may not."""

    __slots__ = ("p", "a")

    def __init__(self, entries, p: int) -> None:
        validate_prime(p)
        arr = np.asarray(entries, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise InvalidInput(f"expected a matrix, got ndim {arr.ndim}")
        if arr.shape[1] == 0:
            raise InvalidInput("matrix needs at least one column")
        if arr.shape[1] > MATRIX_COLS_CAP:
            raise CapExceeded("matrix columns", arr.shape[1], MATRIX_COLS_CAP)
        arr = arr % p
        arr.setflags(write=False)
        self.p = p
        self.a = arr

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def rank(self) -> int:
        return len(rref(self.a, self.p)[1]) if self.rows else 0

    def matroid(self) -> RankTable:
        return vector_matroid(self.a if self.rows else np.zeros((1, self.cols)), self.p)

    def class_key(self) -> bytes:
        """Canonical bytes of the row space; equal keys mean row-equivalent."""
        if self.rows == 0:
            return bytes([self.p, 0, self.cols])
        return row_space_key(self.a, self.p)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FFMatrix)
            and self.p == other.p
            and self.a.shape == other.a.shape
            and (self.a == other.a).all()
        )

    def __repr__(self) -> str:
        return f"FFMatrix(p={self.p}, {self.rows}x{self.cols})"


def _as_ffmatrix(a, p: int | None = None) -> FFMatrix:
    if isinstance(a, FFMatrix):
        return a
    if p is None:
        raise InvalidInput("a field order is required for raw matrix input")
    return FFMatrix(a, p)


def _normalized(a: np.ndarray, p: int) -> np.ndarray:
    """RREF with zero rows dropped: the canonical member of the row class."""
    if a.shape[0] == 0:
        return a
    m, pivots = rref(a, p)
    return m[: len(pivots)]


# --- moves -------------------------------------------------------------------


def _contract_column(a: np.ndarray, p: int, j: int) -> np.ndarray:
    """Contract column j: eliminate via its pivot, drop the row and column.

    A zero column is a loop; contracting it only removes the column.
    """
    col = a[:, j]
    nz = np.nonzero(col)[0]
    rest = np.delete(a, j, axis=1)
    if len(nz) == 0:
        return rest
    i = int(nz[0])
    row = rest[i] * inverse_mod(int(col[i]), p) % p
    out = (rest - np.outer(col, row)) % p
    return np.delete(out, i, axis=0)


def _colspan_vectors(a: np.ndarray, p: int) -> list[np.ndarray]:
    """Nonzero column-space vectors, one per scalar class."""
    _, pivots = rref(a, p)
    basis = a[:, list(pivots)]
    r = len(pivots)
    if p**r > MOVE_ENUM_CAP:
        raise CapExceeded("column-space enumeration", p**r, MOVE_ENUM_CAP)
    out = []
    for coeffs in itertools.product(range(p), repeat=r):
        v = basis @ np.array(coeffs, dtype=np.int64) % p if r else None
        if v is None:
            continue
        nz = np.nonzero(v)[0]
        if len(nz) and v[nz[0]] == 1:
            out.append(v)
    return out


def _coset_vectors(a: np.ndarray, p: int) -> list[np.ndarray]:
    """One representative per scalar class of nonzero rows modulo the row space.

    Representatives carry zeros at the pivot columns of the reduced matrix,
    which makes them unique per coset.
    """
    n = a.shape[1]
    pivots = set(rref(a, p)[1]) if a.shape[0] else set()
    free = [c for c in range(n) if c not in pivots]
    if p ** len(free) > MOVE_ENUM_CAP:
        raise CapExceeded("row-coset enumeration", p ** len(free), MOVE_ENUM_CAP)
    out = []
    for vals in itertools.product(range(p), repeat=len(free)):
        nz = [x for x in vals if x]
        if not nz or nz[0] != 1:
            continue
        w = np.zeros(n, dtype=np.int64)
        for c, x in zip(free, vals):
            w[c] = x
        out.append(w)
    return out


def _cstar_results(a: np.ndarray, p: int) -> list[np.ndarray]:
    out = []
    for v in _colspan_vectors(a, p):
        ext = np.concatenate([a, v[:, None]], axis=1)
        out.append(_contract_column(ext, p, a.shape[1]))
    return out


def _dstar_results(a: np.ndarray, p: int) -> list[np.ndarray]:
    return [np.concatenate([a, w[None, :]], axis=0) for w in _coset_vectors(a, p)]


def _move_results(a: np.ndarray, p: int, measure: Measure) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    kinds = {
        Measure.CSTAR: ("c*",),
        Measure.DSTAR: ("d*",),
        Measure.CSTAR_D: ("c*", "d"),
        Measure.C_DSTAR: ("c", "d*"),
        Measure.CSTAR_DSTAR: ("c*", "d*"),
    }[measure]
    if "c" in kinds:
        out.extend(_contract_column(a, p, j) for j in range(a.shape[1]))
    if "d" in kinds:
        out.extend(np.delete(a, j, axis=1) for j in range(a.shape[1]))
    if "c*" in kinds:
        out.extend(_cstar_results(a, p))
    if "d*" in kinds:
        out.extend(_dstar_results(a, p))
    return out


# --- the five matrix depths ----------------------------------------------


_MATRIX_MEASURES = (
    Measure.CSTAR,
    Measure.DSTAR,
    Measure.CSTAR_D,
    Measure.C_DSTAR,
    Measure.CSTAR_DSTAR,
)


def matrix_depth(a, measure: Measure, p: int | None = None) -> int:
    """Depth of a matrix under the measure's matrix-level moves.

    Supported measures: CSTAR, DSTAR, CSTAR_D, C_DSTAR, CSTAR_DSTAR.  The
    value depends only on the row space, never on the presentation.
    """
    mat = _as_ffmatrix(a, p)
    if measure not in _MATRIX_MEASURES:
        raise InvalidInput(f"no matrix recursion for measure {measure.value!r}")
    return _matrix_depth_rec(_normalized(mat.a, mat.p), mat.p, measure)


def _key(a: np.ndarray, p: int) -> bytes:
    return bytes([p, a.shape[0], a.shape[1]]) + a.astype(np.uint8).tobytes()


def _matrix_depth_rec(a: np.ndarray, p: int, measure: Measure) -> int:
    a = _normalized(a, p)
    if a.shape[1] == 0:
        return 1
    memo_key = (_key(a, p), measure.value)
    got = _MATRIX_MEMO.get(memo_key)
    if got is not None:
        return got

    n = a.shape[1]
    if n == 1:
        val = 1
    else:
        matroid = vector_matroid(a if a.shape[0] else np.zeros((1, n)), p)
        comps = components(matroid)
        if len(comps) > 1:
            val = max(
                _matrix_depth_rec(a[:, bits_of(c)], p, measure) for c in comps
            )
        elif measure is Measure.CSTAR_DSTAR:
            val = _matrix_csdsd(a, p)
        else:
            val = 1 + min(
                _matrix_depth_rec(res, p, measure)
                for res in _move_results(a, p, measure)
            )
    _MATRIX_MEMO[memo_key] = val
    return val


def _matrix_csdsd(a: np.ndarray, p: int) -> int:
    """Shortest-path search over row classes, exits at shattered states.

    Starred moves keep the column count, so states form a finite graph of
    row spaces; each move costs one, and leaving through a disconnected or
    single-column state adds that state's value.
    """
    start = _normalized(a, p)
    skey = _key(start, p)
    reps = {skey: start}
    dist = {skey: 0}
    pq: list[tuple[int, bytes]] = [(0, skey)]
    best: int | None = None
    while pq:
        d, key = heapq.heappop(pq)
        if d > dist.get(key, d):
            continue
        if best is not None and d + 2 >= best:
            break
        cur = reps[key]
        for res in _move_results(cur, p, Measure.CSTAR_DSTAR):
            norm = _normalized(res, p)
            n = norm.shape[1]
            matroid = vector_matroid(norm if norm.shape[0] else np.zeros((1, n)), p)
            if n <= 1 or len(components(matroid)) > 1:
                sub = _matrix_depth_rec(norm, p, Measure.CSTAR_DSTAR)
                cand = d + 1 + sub
                if best is None or cand < best:
                    best = cand
            else:
                rkey = _key(norm, p)
                nd = d + 1
                if best is not None and nd + 1 >= best:
                    continue
                if nd < dist.get(rkey, 1 << 30):
                    dist[rkey] = nd
                    reps[rkey] = norm
                    heapq.heappush(pq, (nd, rkey))
    assert best is not None
    return best


def csdd_legacy(a, p: int | None = None) -> int:
    """Starred-contraction/deletion depth with the single-column base at rank.

    Differs from matrix_depth(A, CSTAR_D) only in the base case: a lone
    column counts its rank (0 or 1) instead of 1.  This is the convention
    the incidence tree-depth formula builds on.
    """
    mat = _as_ffmatrix(a, p)
    return _csdd_legacy_rec(_normalized(mat.a, mat.p), mat.p)


def _csdd_legacy_rec(a: np.ndarray, p: int) -> int:
    a = _normalized(a, p)
    n = a.shape[1]
    if n == 0:
        return 0
    memo_key = (_key(a, p), "legacy")
    got = _MATRIX_MEMO.get(memo_key)
    if got is not None:
        return got
    if n == 1:
        val = min(a.shape[0], 1)
    else:
        matroid = vector_matroid(a if a.shape[0] else np.zeros((1, n)), p)
        comps = components(matroid)
        if len(comps) > 1:
            val = max(_csdd_legacy_rec(a[:, bits_of(c)], p) for c in comps)
        else:
            val = 1 + min(
                _csdd_legacy_rec(res, p)
                for res in _move_results(a, p, Measure.CSTAR_D)
            )
    _MATRIX_MEMO[memo_key] = val
    return val


# --- support graphs and tree-depth variants --------------------------------


def primal_graph(a, p: int | None = None) -> MultiGraph:
    """Columns as vertices; adjacent when they share a nonzero row."""
    mat = _as_ffmatrix(a, p)
    arr = mat.a
    edges = set()
    for i in range(mat.rows):
        support = np.nonzero(arr[i])[0]
        edges.update(itertools.combinations(map(int, support), 2))
    return MultiGraph(mat.cols, sorted(edges))


def dual_graph(a, p: int | None = None) -> MultiGraph:
    """Rows as vertices; adjacent when they share a nonzero column."""
    mat = _as_ffmatrix(a, p)
    arr = mat.a
    edges = set()
    for j in range(mat.cols):
        support = np.nonzero(arr[:, j])[0]
        edges.update(itertools.combinations(map(int, support), 2))
    return MultiGraph(max(mat.rows, 1), sorted(edges))


def incidence_graph(a, p: int | None = None) -> MultiGraph:
    """Bipartite support graph: row i joins column j when a[i, j] != 0."""
    mat = _as_ffmatrix(a, p)
    arr = mat.a
    rows = max(mat.rows, 1)
    edges = [
        (int(i), rows + int(j))
        for i, j in zip(*np.nonzero(arr))
    ]
    return MultiGraph(rows + mat.cols, edges)


def _cached_tree_depth(g: MultiGraph) -> int:
    key = g.canonical_key()
    got = _TD_BY_GRAPH.get(key)
    if got is None:
        got = tree_depth(g)
        _TD_BY_GRAPH[key] = got
    return got


def td_variants(a, p: int | None = None) -> tuple[int, int, int]:
    """Tree-depths of the primal, dual, and incidence graphs."""
    mat = _as_ffmatrix(a, p)
    return (
        _cached_tree_depth(primal_graph(mat)),
        _cached_tree_depth(dual_graph(mat)),
        _cached_tree_depth(incidence_graph(mat)),
    )


# --- minimum tree-depth over row-equivalent forms ---------------------------


@dataclass
class MatrixDepthReport:
    """Everything the tree-depth formulas produce for one matrix."""

    td_primal: int
    td_dual: int
    td_incidence: int
    td_star_primal: int
    td_star_dual: int
    td_star_incidence: int
    deletion_depth: int
    chain_depth: int
    legacy_csdd: int
    loops_coloops_only: bool
    zero_rank: bool
    enumerated: tuple[int, int, int] | None = field(default=None)

    def starred(self) -> tuple[int, int, int]:
        return (self.td_star_primal, self.td_star_dual, self.td_star_incidence)

    def consistent(self) -> bool:
        return self.enumerated is None or self.enumerated == self.starred()

    def to_dict(self) -> dict:
        out = {
            "td": [self.td_primal, self.td_dual, self.td_incidence],
            "td_star": list(self.starred()),
            "deletion_depth": self.deletion_depth,
            "chain_depth": self.chain_depth,
            "legacy_csdd": self.legacy_csdd,
            "loops_coloops_only": self.loops_coloops_only,
            "zero_rank": self.zero_rank,
        }
        if self.enumerated is not None:
            out["enumerated"] = list(self.enumerated)
        return out


def td_star_formula(a, p: int | None = None) -> MatrixDepthReport:
    """Minimum tree-depths over row-equivalent forms, by the depth formulas.

    Primal is the deletion depth of the column matroid; dual is its chain
    depth rebased to count contractions; incidence is the legacy starred
    contraction/deletion depth plus one.  A rank-zero matrix is its own
    only row-equivalent form, where the dual formula would undershoot the
    one-vertex graphs; that corner returns the graph truth and is flagged.
    """
    mat = _as_ffmatrix(a, p)
    matroid = mat.matroid()
    dd = depth(matroid, Measure.D)
    csd = depth(matroid, Measure.CSTAR)
    legacy = csdd_legacy(mat)
    lc_only = matroid.loops() | matroid.coloops() == matroid.full
    zero_rank = matroid.rank() == 0
    star_dual = 1 if zero_rank else rank_base_adjust(csd, matroid)
    td_p, td_d, td_i = td_variants(mat)
    return MatrixDepthReport(
        td_primal=td_p,
        td_dual=td_d,
        td_incidence=td_i,
        td_star_primal=dd,
        td_star_dual=star_dual,
        td_star_incidence=legacy + 1,
        deletion_depth=dd,
        chain_depth=csd,
        legacy_csdd=legacy,
        loops_coloops_only=lc_only,
        zero_rank=zero_rank,
        enumerated=None,
    )


def _rank_r_factors(m: int, r: int, p: int, cap: int):
    """All m-by-r rank-r matrices over GF(p), as an iterator."""
    total = 1
    for i in range(r):
        total *= p**m - p**i
    if total > cap:
        raise CapExceeded("row-equivalent form enumeration", total, cap)
    vectors = [
        np.array(v, dtype=np.int64)
        for v in itertools.product(range(p), repeat=m)
    ]

    def grow(chosen: list[np.ndarray], span: set[bytes]):
        if len(chosen) == r:
            yield np.stack(chosen, axis=1)
            return
        for v in vectors:
            if v.tobytes() in span:
                continue
            wider = set(span)
            for s in list(span):
                base = np.frombuffer(s, dtype=np.int64)
                for scale in range(1, p):
                    wider.add(((base + scale * v) % p).tobytes())
            yield from grow(chosen + [v], wider)

    zero = np.zeros(m, dtype=np.int64)
    yield from grow([], {zero.tobytes()})


def row_equivalent_forms(a, p: int | None = None, cap: int = GL_FORMS_CAP):
    """Every matrix with the same shape and row space, the input included."""
    mat = _as_ffmatrix(a, p)
    body = _normalized(mat.a, mat.p)
    r = body.shape[0]
    if r == 0:
        yield np.zeros_like(mat.a)
        return
    for c in _rank_r_factors(mat.rows, r, mat.p, cap):
        yield c @ body % mat.p


def td_star_enumerated(a, p: int | None = None, cap: int = GL_FORMS_CAP) -> tuple[int, int, int]:
    """Brute minima of the three tree-depths over row-equivalent forms.

    Each parameter is minimized independently.  Results are memoized per
    row space and shape, since the orbit only depends on those.
    """
    mat = _as_ffmatrix(a, p)
    memo_key = (mat.p, mat.rows, mat.cols, mat.class_key())
    got = _ENUM_MEMO.get(memo_key)
    if got is not None:
        return got
    best = [None, None, None]
    for form in row_equivalent_forms(mat, cap=cap):
        f = FFMatrix(form, mat.p)
        vals = td_variants(f)
        for i, v in enumerate(vals):
            if best[i] is None or v < best[i]:
                best[i] = v
    out = (best[0], best[1], best[2])
    _ENUM_MEMO[memo_key] = out
    return out
