"""The eight recursive depth measures and their witness trees.

Every measure follows the same recursion scheme: matroids with at most
one element have depth 1, disconnected matroids take the maximum over
components, and connected matroids pay 1 for a transformation step and
minimize over the moves the measure allows.  Moves come in four kinds:
contracting an element, deleting an element, extending by a modular cut
and contracting the new element, and the dual of the latter.

Starred measures are computed by collapsing whole guts chains at once
(lambda(A) extend-and-contract steps turn M into M/A + M/B), which keeps
the search polynomial in the number of bipartitions rather than the
number of modular cuts.  The both-starred measure needs genuine
shortest-path search because its moves can raise and lower rank.
"""

from __future__ import annotations

import heapq
from enum import Enum

from .core import (
    RankTable,
    components,
    connectivity,
    contract,
    delete,
    dual,
    restrict,
)
from .errors import CapExceeded, InvalidInput
from .extensions import (
    all_modular_cuts,
    closure_of_empty,
    extension_by_cut,
    is_modular_cut,
)


class Measure(Enum):
    C = "c"
    D = "d"
    CD = "cd"
    CSTAR = "c*"
    DSTAR = "d*"
    CSTAR_D = "c*d"
    C_DSTAR = "cd*"
    CSTAR_DSTAR = "c*d*"

    @classmethod
    def from_token(cls, token: str) -> "Measure":
        for m in cls:
            if m.value == token:
                return m
        raise InvalidInput(f"unknown measure token {token!r}")


ALL_MEASURES = tuple(Measure)

DEFAULT_CAPS = {
    Measure.C: 12,
    Measure.D: 12,
    Measure.CD: 12,
    Measure.CSTAR: 12,
    Measure.DSTAR: 12,
    Measure.CSTAR_D: 10,
    Measure.C_DSTAR: 10,
    # the c*d* search walks a fast-growing state graph; n = 6 already takes
    # tens of seconds and n = 7 minutes, so the default stops at 6
    Measure.CSTAR_DSTAR: 6,
}

_MEMO: dict[tuple[Measure, bytes], tuple[int, dict]] = {}
_CSDSD_ADJ: dict[bytes, list[tuple[str, tuple[int, ...], bytes]]] = {}
_CSDSD_REPS: dict[bytes, RankTable] = {}
_MEMO_STATS = {"hits": 0}


def clear_caches() -> None:
    _MEMO.clear()
    _CSDSD_ADJ.clear()
    _CSDSD_REPS.clear()
    _MEMO_STATS["hits"] = 0


def cache_stats() -> dict:
    """Memo usage snapshot: stored results and lookup hits so far."""
    return {"entries": len(_MEMO), "hits": _MEMO_STATS["hits"]}


# --- move enumeration -------------------------------------------------------


def cstar_moves(m: RankTable) -> list[tuple[tuple[int, ...], RankTable]]:
    """(sorted cut, result) for every c*-transformation of m."""
    skip = closure_of_empty(m)
    out = []
    for cut in all_modular_cuts(m):
        if not cut or skip in cut:
            continue
        ext = extension_by_cut(m, cut)
        out.append((tuple(sorted(cut)), contract(ext, 1 << m.n)))
    out.sort(key=lambda t: t[0])
    return out


def apply_cstar(m: RankTable, cut) -> RankTable:
    cut = frozenset(cut)
    if not is_modular_cut(m, cut):
        raise InvalidInput("not a modular cut")
    if not cut or closure_of_empty(m) in cut:
        raise InvalidInput("degenerate cut: the transformation returns m itself")
    return contract(extension_by_cut(m, cut), 1 << m.n)


def dstar_moves(m: RankTable) -> list[tuple[tuple[int, ...], RankTable]]:
    """(sorted cut of the dual, result) for every d*-transformation."""
    return [(cut, dual(res)) for cut, res in cstar_moves(dual(m))]


def apply_dstar(m: RankTable, cut) -> RankTable:
    return dual(apply_cstar(dual(m), cut))


def transformations(m: RankTable, measure: Measure) -> list[tuple[tuple, RankTable]]:
    """All single moves the measure allows, with witness labels.

    Labels are ("contract", e), ("delete", e), ("cstar", cut t) or
    ("dstar", cut). Ordering is deterministic.
    """
    out: list[tuple[tuple, RankTable]] = []
    kinds = _MOVE_KINDS[measure]
    if "c" in kinds:
        out.extend((("contract", e), contract(m, 1 << e)) for e in range(m.n))
    if "d" in kinds:
        out.extend((("delete", e), delete(m, 1 << e)) for e in range(m.n))
    if "c*" in kinds:
        out.extend((("cstar", cut), res) for cut, res in cstar_moves(m))
    if "d*" in kinds:
        out.extend((("dstar", cut), res) for cut, res in dstar_moves(m))
    return out


_MOVE_KINDS = {
    Measure.C: ("c",),
    Measure.D: ("d",),
    Measure.CD: ("c", "d"),
    Measure.CSTAR: ("c*",),
    Measure.DSTAR: ("d*",),
    Measure.CSTAR_D: ("c*", "d"),
    Measure.C_DSTAR: ("c", "d*"),
    Measure.CSTAR_DSTAR: ("c*", "d*"),
}


# --- reference solver -------------------------------------------------------


def depth_brute(m: RankTable, measure: Measure, cap: int = 6) -> int:
    """Literal recursion over single moves; the oracle the fast path is
    tested against.  Exponential, keep n small."""
    if m.n > cap:
        raise CapExceeded("brute-force depth ground set", m.n, cap)
    if measure is Measure.CSTAR_DSTAR:
        return _brute_csdsd(m)
    memo: dict[bytes, int] = {}

    def rec(cur: RankTable) -> int:
        if cur.n <= 1:
            return 1
        fp = cur.fingerprint()
        got = memo.get(fp)
        if got is not None:
            return got
        comps = components(cur)
        if len(comps) > 1:
            val = max(rec(restrict(cur, c)) for c in comps)
        else:
            val = 1 + min(rec(res) for _, res in transformations(cur, measure))
        memo[fp] = val
        return val

    return rec(m)


def _brute_csdsd(m: RankTable) -> int:
    """Iterative deepening; the move graph has rank-raising moves, so plain
    recursion would not terminate."""

    memo: dict[tuple[bytes, int], int | None] = {}

    def rec(cur: RankTable, limit: int) -> int | None:
        # exact value if it is <= limit, else None
        if cur.n <= 1:
            return 1
        comps = components(cur)
        if len(comps) > 1:
            vals = [rec(restrict(cur, c), limit) for c in comps]
            if any(v is None for v in vals):
                return None
            return max(vals)
        if limit <= 1:
            return None
        key = (cur.fingerprint(), limit)
        if key in memo:
            return memo[key]
        best: int | None = None
        for _, res in transformations(cur, Measure.CSTAR_DSTAR):
            sub = rec(res, (limit - 1) if best is None else min(limit, best) - 1)
            if sub is not None and (best is None or sub + 1 < best):
                best = sub + 1
        memo[key] = best
        return best

    limit = 1
    while True:
        got = rec(m, limit)
        if got is not None:
            return got
        limit += 1


# --- fast solvers with witnesses ---------------------------------------------


def depth(m: RankTable, measure: Measure, cap: int | None = None) -> int:
    return solve(m, measure, cap)[0]


def depth_with_witness(m: RankTable, measure: Measure, cap: int | None = None):
    return solve(m, measure, cap)


def solve(m: RankTable, measure: Measure, cap: int | None = None) -> tuple[int, dict]:
    if cap is None:
        cap = DEFAULT_CAPS[measure]
    if m.n > cap:
        raise CapExceeded(f"{measure.value}-depth ground set", m.n, cap)
    return _solve(m, measure)


def _solve(m: RankTable, measure: Measure) -> tuple[int, dict]:
    key = (measure, m.fingerprint())
    got = _MEMO.get(key)
    if got is not None:
        _MEMO_STATS["hits"] += 1
        return got

    if m.n <= 1:
        out = (1, {"kind": "leaf"})
    else:
        comps = components(m)
        if len(comps) > 1:
            children = [_solve(restrict(m, c), measure) for c in comps]
            val = max(v for v, _ in children)
            out = (
                val,
                {
                    "kind": "components",
                    "classes": comps,
                    "children": [w for _, w in children],
                },
            )
        elif measure is Measure.CSTAR_DSTAR:
            out = _solve_csdsd(m)
        else:
            out = _solve_connected(m, measure)

    _MEMO[key] = out
    return out


def _solve_connected(m: RankTable, measure: Measure) -> tuple[int, dict]:
    """Minimum over element moves and collapsed guts chains."""
    best: int | None = None
    best_w: dict | None = None

    kinds = _MOVE_KINDS[measure]
    if "c" in kinds:
        for e in range(m.n):
            v, w = _solve(contract(m, 1 << e), measure)
            if best is None or v + 1 < best:
                best, best_w = v + 1, {"kind": "contract", "element": e, "child": w}
    if "d" in kinds:
        for e in range(m.n):
            v, w = _solve(delete(m, 1 << e), measure)
            if best is None or v + 1 < best:
                best, best_w = v + 1, {"kind": "delete", "element": e, "child": w}

    if "c*" in kinds or "d*" in kinds:
        mode = "contract" if "c*" in kinds else "delete"
        take = contract if mode == "contract" else delete
        lam = m.connectivity_table()
        half = 1 << (m.n - 1)
        # bipartitions with element 0 on side A, cheapest interaction first
        order = sorted(
            (int(lam[a | 1]), a | 1) for a in range(0, 1 << m.n, 2) if a | 1 != m.full
        )
        for lv, a in order:
            if best is not None and lv + 1 >= best:
                break
            b = m.full ^ a
            va, wa = _solve(take(m, a), measure)
            if best is not None and lv + va >= best:
                continue
            vb, wb = _solve(take(m, b), measure)
            v = lv + max(va, vb)
            if best is None or v < best:
                best = v
                best_w = {
                    "kind": "guts",
                    "side_a": a,
                    "side_b": b,
                    "connectivity": lv,
                    "mode": mode,
                    "children": [wa, wb],
                }
        del half

    assert best is not None and best_w is not None
    return best, best_w


def _csdsd_adjacency(m: RankTable) -> list[tuple[str, tuple[int, ...], bytes]]:
    fp = m.fingerprint()
    got = _CSDSD_ADJ.get(fp)
    if got is None:
        got = []
        for cut, res in cstar_moves(m):
            rfp = res.fingerprint()
            _CSDSD_REPS.setdefault(rfp, res)
            got.append(("cstar", cut, rfp))
        for cut, res in dstar_moves(m):
            rfp = res.fingerprint()
            _CSDSD_REPS.setdefault(rfp, res)
            got.append(("dstar", cut, rfp))
        _CSDSD_ADJ[fp] = got
    return got


def _solve_csdsd(m: RankTable) -> tuple[int, dict]:
    """Shortest path over same-ground-set states.

    Moves keep the ground set, so the recursion unrolls into a path search:
    walk until the matroid disconnects (or a move is pointless), paying one
    per move, then pay the component maximum at the exit.
    """
    start = m.fingerprint()
    _CSDSD_REPS.setdefault(start, m)
    dist: dict[bytes, int] = {start: 0}
    parent: dict[bytes, tuple[bytes, str, tuple[int, ...]]] = {}
    pq: list[tuple[int, bytes]] = [(0, start)]
    best: int | None = None
    best_exit: tuple[bytes, bytes, str, tuple[int, ...]] | None = None

    while pq:
        d, fp = heapq.heappop(pq)
        if d > dist.get(fp, d):
            continue
        if best is not None and d + 2 >= best:
            # any further exit costs at least d+1 moves plus value 1
            break
        cur = _CSDSD_REPS[fp]
        for kind, cut, rfp in _csdsd_adjacency(cur):
            res = _CSDSD_REPS[rfp]
            rcomps = components(res)
            if len(rcomps) > 1 or res.n <= 1:
                sub = _solve(res, Measure.CSTAR_DSTAR)[0]
                cand = d + 1 + sub
                if best is None or cand < best:
                    best = cand
                    best_exit = (fp, rfp, kind, cut)
            else:
                nd = d + 1
                if best is not None and nd + 1 >= best:
                    continue
                if nd < dist.get(rfp, 1 << 30):
                    dist[rfp] = nd
                    parent[rfp] = (fp, kind, cut)
                    heapq.heappush(pq, (nd, rfp))

    assert best is not None and best_exit is not None
    pre, exit_fp, kind, cut = best_exit
    # rebuild the move chain from the start state
    chain: list[tuple[str, tuple[int, ...]]] = [(kind, cut)]
    at = pre
    while at != start:
        at, k, c = parent[at]
        chain.append((k, c))
    chain.reverse()
    _, w = _solve(_CSDSD_REPS[exit_fp], Measure.CSTAR_DSTAR)
    for k, c in reversed(chain):
        w = {"kind": k, "cut": list(c), "child": w}
    return best, w


# --- witness replay ----------------------------------------------------------

_ALLOWED_NODES = {
    Measure.C: {"leaf", "components", "contract"},
    Measure.D: {"leaf", "components", "delete"},
    Measure.CD: {"leaf", "components", "contract", "delete"},
    Measure.CSTAR: {"leaf", "components", "cstar", "guts"},
    Measure.DSTAR: {"leaf", "components", "dstar", "guts"},
    Measure.CSTAR_D: {"leaf", "components", "cstar", "guts", "delete"},
    Measure.C_DSTAR: {"leaf", "components", "dstar", "guts", "contract"},
    Measure.CSTAR_DSTAR: {"leaf", "components", "cstar", "dstar", "guts"},
}

_GUTS_MODE = {
    Measure.CSTAR: "contract",
    Measure.CSTAR_D: "contract",
    Measure.DSTAR: "delete",
    Measure.C_DSTAR: "delete",
}


def verify_witness(m: RankTable, measure: Measure, witness: dict) -> int:
    """Replay a witness tree and return the depth value it certifies.

    Raises InvalidInput when the tree uses moves the measure does not
    allow, misstates a connectivity, or applies a malformed cut.  The
    returned value is an upper bound on the measure by construction.
    """
    kind = witness.get("kind")
    if kind not in _ALLOWED_NODES[measure]:
        raise InvalidInput(f"witness node {kind!r} not allowed for {measure.value}")

    if kind == "leaf":
        if m.n > 1:
            raise InvalidInput("leaf witness on a matroid with more than one element")
        return 1

    if kind == "components":
        comps = components(m)
        if [int(c) for c in witness["classes"]] != comps:
            raise InvalidInput("witness component classes do not match")
        children = witness["children"]
        if len(children) != len(comps):
            raise InvalidInput("component child count mismatch")
        return max(
            verify_witness(restrict(m, c), measure, w) for c, w in zip(comps, children)
        )

    if _count_components(m) != 1:
        raise InvalidInput(f"{kind} witness on a non-connected matroid")

    if kind == "contract":
        e = int(witness["element"])
        return 1 + verify_witness(contract(m, 1 << e), measure, witness["child"])
    if kind == "delete":
        e = int(witness["element"])
        return 1 + verify_witness(delete(m, 1 << e), measure, witness["child"])
    if kind == "cstar":
        res = apply_cstar(m, witness["cut"])
        return 1 + verify_witness(res, measure, witness["child"])
    if kind == "dstar":
        res = apply_dstar(m, witness["cut"])
        return 1 + verify_witness(res, measure, witness["child"])
    if kind == "guts":
        a, b = int(witness["side_a"]), int(witness["side_b"])
        if a & b or a | b != m.full or a == 0 or b == 0:
            raise InvalidInput("guts sides must be a proper bipartition")
        lam = connectivity(m, a)
        if lam != int(witness["connectivity"]):
            raise InvalidInput("guts connectivity mismatch")
        mode = witness["mode"]
        if measure in _GUTS_MODE and mode != _GUTS_MODE[measure]:
            raise InvalidInput(f"guts mode {mode!r} not allowed for {measure.value}")
        take = contract if mode == "contract" else delete
        wa, wb = witness["children"]
        return lam + max(
            verify_witness(take(m, a), measure, wa),
            verify_witness(take(m, b), measure, wb),
        )
    raise InvalidInput(f"unknown witness node kind {kind!r}")


def _count_components(m: RankTable) -> int:
    return len(components(m))
