"""Multigraphs, their cycle matroids, and graph depth parameters.

Vertices are 0..nv-1 internally; loops and parallel edges are allowed.
The text format used by the CLI is 1-indexed and lives in serialize.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .core import RankTable, bits_of
from .errors import CapExceeded, InvalidInput

TREE_DEPTH_CAP = 15


class MultiGraph:
    """Immutable multigraph: a vertex count and a tuple of endpoint pairs."""

    __slots__ = ("nv", "edges", "_key")

    def __init__(self, nv: int, edges) -> None:
        if nv < 0:
            raise InvalidInput("vertex count must be nonnegative")
        norm = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < nv and 0 <= v < nv):
                raise InvalidInput(f"edge ({u}, {v}) out of range for {nv} vertices")
            norm.append((u, v) if u <= v else (v, u))
        self.nv = nv
        self.edges = tuple(norm)
        self._key: bytes | None = None

    @property
    def ne(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        """Edge-end count at v; a loop contributes 2."""
        return sum((a == v) + (b == v) for a, b in self.edges)

    def __repr__(self) -> str:
        return f"MultiGraph(nv={self.nv}, edges={list(self.edges)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiGraph)
            and self.nv == other.nv
            and sorted(self.edges) == sorted(other.edges)
        )

    def __hash__(self) -> int:
        return hash((self.nv, tuple(sorted(self.edges))))

    def canonical_key(self) -> bytes:
        if self._key is None:
            self._key = _canonical_key(self)
        return self._key


def _refine_classes(g: MultiGraph) -> list[int]:
    """Iterated degree refinement; returns a class id per vertex."""
    n = g.nv
    color = [0] * n
    adj = [[0] * n for _ in range(n)]
    loops = [0] * n
    for u, v in g.edges:
        if u == v:
            loops[u] += 1
        else:
            adj[u][v] += 1
            adj[v][u] += 1
    while True:
        sig = [
            (color[v], loops[v], tuple(sorted((color[w], adj[v][w]) for w in range(n) if adj[v][w])))
            for v in range(n)
        ]
        order = sorted(set(sig))
        new = [order.index(s) for s in sig]
        if new == color:
            return color
        color = new


def _canonical_key(g: MultiGraph) -> bytes:
    """Lexicographically least edge list over class-preserving relabelings."""
    n = g.nv
    color = _refine_classes(g)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(color):
        groups.setdefault(c, []).append(v)
    best = None
    for perm in _class_permutations(n, [groups[c] for c in sorted(groups)]):
        lab = [0] * n
        for newv, v in enumerate(perm):
            lab[v] = newv
        edges = sorted(tuple(sorted((lab[u], lab[v]))) for u, v in g.edges)
        if best is None or edges < best:
            best = edges
    flat = [n] + [x for e in (best or []) for x in e]
    return bytes(flat)


def _class_permutations(n: int, groups: list[list[int]]):
    """All vertex orders that keep refinement classes contiguous."""
    def rec(i: int, acc: list[int]):
        if i == len(groups):
            yield acc
            return
        for p in permutations(groups[i]):
            yield from rec(i + 1, acc + list(p))

    yield from rec(0, [])


# --- cycle matroid ----------------------------------------------------------


def cycle_matroid(g: MultiGraph) -> RankTable:
    """Rank of an edge set = nv minus the component count it leaves."""
    ne = g.ne
    ranks = np.zeros(1 << ne, dtype=np.uint8)
    for mask in range(1, 1 << ne):
        low = mask & -mask
        e = low.bit_length() - 1
        parent = list(range(g.nv))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i in bits_of(mask):
            a, b = find(g.edges[i][0]), find(g.edges[i][1])
            if a != b:
                parent[a] = b
                r += 1
        ranks[mask] = r
        del e, low
    return RankTable(ne, ranks)


# --- connectivity structure -------------------------------------------------


def connected_components(g: MultiGraph) -> list[list[int]]:
    """Vertex sets of connected components, each sorted."""
    seen = [False] * g.nv
    adj: list[list[int]] = [[] for _ in range(g.nv)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    out = []
    for s in range(g.nv):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def blocks(g: MultiGraph) -> list[list[int]]:
    """Partition of edge indices into blocks.

    Two edges share a block iff they lie on a common cycle; a pair of
    parallel edges is a 2-cycle, so parallels share a block, and every loop
    is a block by itself.  This matches the component partition of the
    cycle matroid.
    """
    inc: list[list[int]] = [[] for _ in range(g.nv)]
    for i, (u, v) in enumerate(g.edges):
        if u != v:
            inc[u].append(i)
            inc[v].append(i)

    out = [[i] for i, (u, v) in enumerate(g.edges) if u == v]

    disc = [-1] * g.nv
    low = [0] * g.nv
    stack: list[int] = []
    timer = 0

    def dfs(root: int) -> None:
        nonlocal timer
        # iterative DFS carrying (vertex, parent edge, iterator position)
        work = [(root, -1, 0)]
        disc[root] = low[root] = timer
        timer += 1
        while work:
            v, pe, i = work.pop()
            if i < len(inc[v]):
                work.append((v, pe, i + 1))
                ei = inc[v][i]
                if ei == pe:
                    continue
                u, w = g.edges[ei]
                to = w if v == u else u
                if disc[to] == -1:
                    stack.append(ei)
                    disc[to] = low[to] = timer
                    timer += 1
                    work.append((to, ei, 0))
                elif disc[to] < disc[v]:
                    stack.append(ei)
                    low[v] = min(low[v], disc[to])
            else:
                if pe != -1:
                    u, w = g.edges[pe]
                    par = u if disc[u] < disc[v] else w
                    low[par] = min(low[par], low[v])
                    if low[v] >= disc[par]:
                        blk = []
                        while True:
                            e = stack.pop()
                            blk.append(e)
                            if e == pe:
                                break
                        out.append(sorted(blk))

    for s in range(g.nv):
        if disc[s] == -1:
            dfs(s)
    return sorted(out)


def block_subgraph(g: MultiGraph, edge_ids: list[int]) -> MultiGraph:
    verts = sorted({x for i in edge_ids for x in g.edges[i]})
    lab = {v: i for i, v in enumerate(verts)}
    return MultiGraph(len(verts), [(lab[g.edges[i][0]], lab[g.edges[i][1]]) for i in edge_ids])


def is_two_connected(g: MultiGraph) -> bool:
    """Single block covering every vertex, with at least one edge."""
    if g.ne == 0:
        return False
    b = blocks(g)
    if len(b) != 1:
        return False
    return len({x for u, v in g.edges for x in (u, v)}) == g.nv


# --- tree-depth and 2-tree-depth --------------------------------------------


def _simple_adjacency(g: MultiGraph) -> list[int]:
    """Neighbor bitmasks of the underlying simple graph, loops dropped."""
    adj = [0] * g.nv
    for u, v in g.edges:
        if u != v:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return adj


def tree_depth(g: MultiGraph) -> int:
    """Tree-depth of the underlying simple graph.

    Centered-coloring style recursion: split on components, otherwise
    delete the best vertex, memoized on the surviving vertex mask.
    """
    if g.nv > TREE_DEPTH_CAP:
        raise CapExceeded("tree-depth vertex count", g.nv, TREE_DEPTH_CAP)
    adj = _simple_adjacency(g)
    memo: dict[int, int] = {0: 0}

    def comps(mask: int) -> list[int]:
        out = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            while True:
                grow = comp
                for v in bits_of(comp):
                    grow |= adj[v] & mask
                if grow == comp:
                    break
                comp = grow
            out.append(comp)
            rest &= ~comp
        return out

    def td(mask: int) -> int:
        got = memo.get(mask)
        if got is not None:
            return got
        cs = comps(mask)
        if len(cs) > 1:
            val = max(td(c) for c in cs)
        elif mask.bit_count() == 1:
            val = 1
        else:
            val = 1 + min(td(mask ^ (1 << v)) for v in bits_of(mask))
        memo[mask] = val
        return val

    return td((1 << g.nv) - 1) if g.nv else 0


def _delete_vertex(g: MultiGraph, v: int) -> MultiGraph:
    keep = [e for e in g.edges if v not in e]
    lab = [w - (w > v) for w in range(g.nv)]
    return MultiGraph(g.nv - 1, [(lab[a], lab[b]) for a, b in keep])


def two_tree_depth(g: MultiGraph) -> int:
    """Block-wise tree-depth variant.

    Blocks of the graph are treated independently (isolated vertices count
    as their own single-vertex blocks); a 2-connected graph loses one
    vertex per level.
    """
    if g.nv == 0:
        return 0
    if g.nv == 1:
        return 1
    if not is_two_connected(g):
        parts = blocks(g)
        vals = [two_tree_depth(block_subgraph(g, b)) for b in parts]
        covered = {x for u, v in g.edges for x in (u, v)}
        if len(covered) < g.nv:
            vals.append(1)
        return max(vals) if vals else 1
    return 1 + min(two_tree_depth(_delete_vertex(g, v)) for v in range(g.nv))


# --- graphic c*d* search ----------------------------------------------------


def _merge_vertices(g: MultiGraph, u: int, v: int) -> MultiGraph:
    lab = [w - (w > v) for w in range(g.nv)]
    lab[v] = lab[u]
    return MultiGraph(g.nv - 1, [(lab[a], lab[b]) for a, b in g.edges])


def _vertex_splits(g: MultiGraph, w: int) -> list[MultiGraph]:
    """All ways to pull w apart into two vertices, dropping the split edge.

    Each edge end at w goes to one of the two copies; both copies must
    receive an end, and assignments are taken up to swapping the copies.
    """
    ends: list[tuple[int, int]] = []  # (edge index, end slot 0/1)
    for i, (a, b) in enumerate(g.edges):
        if a == w:
            ends.append((i, 0))
        if b == w:
            ends.append((i, 1))
    d = len(ends)
    if d < 2:
        return []
    new = g.nv
    out = []
    for s in range(1, 1 << (d - 1)):
        edges = list(g.edges)
        for j in range(1, d):
            if s >> (j - 1) & 1:
                i, slot = ends[j]
                a, b = edges[i]
                edges[i] = (new, b) if slot == 0 else (a, new)
        out.append(MultiGraph(g.nv + 1, edges))
    return out


def _graph_moves(g: MultiGraph) -> list[MultiGraph]:
    out = []
    for u in range(g.nv):
        for v in range(u + 1, g.nv):
            out.append(_merge_vertices(g, u, v))
    for w in range(g.nv):
        out.extend(_vertex_splits(g, w))
    return out


_GRAPHIC_MEMO: dict[bytes, int] = {}
_GRAPHIC_ADJ: dict[bytes, tuple[list[bytes], dict[bytes, MultiGraph]]] = {}


def graphic_csdsd(g: MultiGraph) -> int:
    """Depth of g under single-edge uncontraction and undeletion moves.

    Value 1 on graphs with at most one edge, block-wise maximum when not
    2-connected, and otherwise one more than the best reachable
    transformation.  Computed as a shortest-path search over canonical
    forms, stopping at non-2-connected states whose blocks are settled
    recursively.
    """
    key = g.canonical_key()
    got = _GRAPHIC_MEMO.get(key)
    if got is not None:
        return got

    if g.ne <= 1:
        _GRAPHIC_MEMO[key] = 1
        return 1
    if not is_two_connected(g):
        val = max(graphic_csdsd(block_subgraph(g, b)) for b in blocks(g))
        _GRAPHIC_MEMO[key] = val
        return val

    # Dijkstra over 2-connected states; exits are the non-2-connected ones.
    import heapq

    dist: dict[bytes, int] = {key: 0}
    pq: list[tuple[int, bytes]] = [(0, key)]
    reps: dict[bytes, MultiGraph] = {key: g}
    best = None
    while pq:
        d, k = heapq.heappop(pq)
        if d > dist.get(k, d):
            continue
        if best is not None and d + 1 >= best:
            break
        cur = reps[k]
        cached = _GRAPHIC_ADJ.get(k)
        if cached is None:
            succ = []
            seen: dict[bytes, MultiGraph] = {}
            for h in _graph_moves(cur):
                hk = h.canonical_key()
                if hk not in seen:
                    seen[hk] = h
                    succ.append(hk)
            cached = (succ, seen)
            _GRAPHIC_ADJ[k] = cached
        for hk in cached[0]:
            h = cached[1][hk]
            if h.ne <= 1 or not is_two_connected(h):
                exit_val = _GRAPHIC_MEMO.get(hk)
                if exit_val is None:
                    exit_val = graphic_csdsd(h)
                cand = d + 1 + exit_val
                if best is None or cand < best:
                    best = cand
            elif d + 1 < dist.get(hk, 1 << 30):
                dist[hk] = d + 1
                reps[hk] = h
                heapq.heappush(pq, (d + 1, hk))
    assert best is not None
    _GRAPHIC_MEMO[key] = best
    return best


def clear_graph_caches() -> None:
    _GRAPHIC_MEMO.clear()
    _GRAPHIC_ADJ.clear()


# --- fixtures ---------------------------------------------------------------


def cycle(n: int) -> MultiGraph:
    """Cycle with n edges; n = 1 is a loop and n = 2 a pair of parallels."""
    if n < 1:
        raise InvalidInput("cycle needs at least one edge")
    if n == 1:
        return MultiGraph(1, [(0, 0)])
    return MultiGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> MultiGraph:
    """Path on n vertices."""
    if n < 1:
        raise InvalidInput("path needs at least one vertex")
    return MultiGraph(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> MultiGraph:
    """Star with n leaves; vertex 0 is the center."""
    return MultiGraph(n + 1, [(0, i + 1) for i in range(n)])


def complete_bipartite(a: int, b: int) -> MultiGraph:
    return MultiGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def fat_cycle(length: int, mult: int) -> MultiGraph:
    """Cycle of the given length with every edge in mult parallel copies.

    Edge labels are grouped by cycle position: position k carries labels
    k*mult .. k*mult+mult-1.
    """
    if length < 1 or mult < 1:
        raise InvalidInput("fat cycle needs positive length and multiplicity")
    if length == 1:
        return MultiGraph(1, [(0, 0)] * mult)
    if length == 2:
        return MultiGraph(2, [(0, 1)] * (2 * mult))
    edges = []
    for k in range(length):
        edges.extend([(k, (k + 1) % length)] * mult)
    return MultiGraph(length, edges)


def fat_cycle_one_simple(length: int, mult: int) -> MultiGraph:
    """Fat cycle of the given length plus one extra simple edge on the ring.

    The simple edge subdivides the cycle to length+1 and carries the last
    label, so contracting it recovers fat_cycle(length, mult) with labels
    intact.
    """
    base = fat_cycle(length, mult)
    if length == 1:
        # loop bundle opens into a 2-cycle: parallels plus one simple edge
        edges = [(0, 1)] * mult + [(0, 1)]
        return MultiGraph(2, edges)
    nv = base.nv
    # reroute the edges at the seam 0-(length-1): the group-(length-1) copies
    # now end at the fresh vertex, which joins 0 by the simple edge.
    edges = []
    for k in range(length):
        u, v = k, (k + 1) % length
        if k == length - 1:
            u, v = k, nv
        edges.extend([(u, v)] * mult)
    edges.append((nv, 0))
    return MultiGraph(nv + 1, edges)


def tree_with_two_apexes(tree: MultiGraph) -> MultiGraph:
    """Add two universal vertices (adjacent to everything and each other)."""
    n = tree.nv
    edges = list(tree.edges)
    for a in (n, n + 1):
        for v in range(n):
            edges.append((v, a))
    edges.append((n, n + 1))
    return MultiGraph(n + 2, edges)
