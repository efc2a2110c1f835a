"""Tree-shaped decompositions and the width/depth parameters they define.

Branch decompositions place elements on the leaves of a subcubic tree and
measure connectivity across edges; branch-depth additionally bounds the
tree radius.  Tree-decompositions map elements to arbitrary nodes and
score nodes with a partition analogue of the connectivity function.
Rooted contraction decompositions certify the chain-collapse depth on a
shifted scale: their optimum is one below the recursive value except on
matroids of positive rank made of loops and coloops only.

Searches here are exact and exponential, sized for the small ground sets
the rank-table kernel supports.  Each search enumerates canonical tree
shapes once, then scores all element placements vectorized per shape,
visiting shapes in order of radius so an incumbent can cut the rest.
"""

from __future__ import annotations

import functools
import itertools
from collections import deque
from typing import NamedTuple

import numpy as np

from .core import (
    RankTable,
    bits_of,
    components,
    contract,
    delete,
    minor,
    restrict,
)
from .depth import Measure, depth, depth_with_witness
from .errors import CapExceeded, InvalidInput
from .extensions import guts_contract, relatively_free_extension

BRANCH_WIDTH_CAP = 8
BRANCH_DEPTH_CAP = 6
TREE_SEARCH_CAP = 5

_CHUNK = 1 << 15


def partition_connectivity(m: RankTable, parts) -> int:
    """Generalized connectivity of disjoint classes.

    For classes X1..Xk this is sum(rank(E - Xi)) - (k - 1) * rank(M); two
    complementary classes recover lambda, the empty collection the rank.
    """
    parts = [int(p) for p in parts]
    seen = 0
    for p in parts:
        if p & ~m.full:
            raise InvalidInput(f"class {p:#x} leaves the ground set")
        if p & seen:
            raise InvalidInput("classes overlap")
        seen |= p
    k = len(parts)
    if k == 0:
        return m.rank()
    total = sum(m.rank(m.full ^ p) for p in parts)
    return total - (k - 1) * m.rank()


# ---------------------------------------------------------------------------
# tree scaffolding shared by the searches


def _adjacency(edges, nv: int) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(nv)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def _split_at(adj: list[list[int]], nv: int, u: int) -> list[list[int]]:
    """Vertex sets of the components of the tree minus vertex u."""
    out = []
    seen = [False] * nv
    seen[u] = True
    for start in adj[u]:
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        out.append(comp)
    return out


def tree_radius(edges, nv: int) -> int:
    """Minimum eccentricity over all vertices of a tree."""
    if nv <= 1:
        return 0
    adj = _adjacency(edges, nv)
    best = nv
    for s in range(nv):
        dist = [-1] * nv
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        best = min(best, max(dist))
    return best


def _rooted_shape_key(adj, root: int, parent: int, leaf_count: int) -> str:
    kids = sorted(
        _rooted_shape_key(adj, c, root, leaf_count) for c in adj[root] if c != parent
    )
    tag = "L" if root < leaf_count else "I"
    return tag + "(" + "".join(kids) + ")"


def _tree_key(edges, nv: int, leaf_count: int = 0) -> str:
    """Canonical form of a tree, leaves (ids below leaf_count) interchangeable."""
    adj = _adjacency(edges, nv)
    return min(_rooted_shape_key(adj, r, -1, leaf_count) for r in range(nv))


@functools.lru_cache(maxsize=None)
def _unlabeled_trees(nv: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All unlabeled trees on nv vertices, grown by leaf attachment."""
    if nv <= 0:
        return ()
    if nv == 1:
        return ((),)
    out: dict[str, tuple] = {}
    for base in _unlabeled_trees(nv - 1):
        for host in range(nv - 1):
            edges = base + ((host, nv - 1),)
            out.setdefault(_tree_key(edges, nv), edges)
    return tuple(out.values())


@functools.lru_cache(maxsize=None)
def _cubic_trees(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Leaf-labeled cubic trees on leaves 0..n-1, internals n..2n-3.

    Grown by subdividing an edge and hanging the next leaf, which yields
    every topology exactly once, (2n-5)!! in total.
    """
    if n < 2:
        raise InvalidInput("cubic leaf trees need at least two leaves")
    trees: list[tuple[tuple[int, int], ...]] = [((0, 1),)]
    for leaf in range(2, n):
        w = n + leaf - 2
        grown = []
        for t in trees:
            for i, (a, b) in enumerate(t):
                rest = t[:i] + t[i + 1 :]
                grown.append(rest + ((a, w), (w, b), (w, leaf)))
        trees = grown
    return tuple(trees)


# ---------------------------------------------------------------------------
# branch-width and branch-depth


def branch_width(m: RankTable, cap: int = BRANCH_WIDTH_CAP) -> int:
    """Exact branch-width by enumeration of cubic leaf trees."""
    n = m.n
    if n <= 1:
        return 0
    if n > cap:
        raise CapExceeded("branch-width search", n, cap)
    conn = m.connectivity_table()
    # every tree contains all n leaf edges, so singleton cuts are a floor
    floor = max(int(conn[1 << e]) for e in range(n))
    best: int | None = None
    for t in _cubic_trees(n):
        adj = _adjacency(t, max(2, 2 * n - 2))
        w = floor
        ok = True
        for a, b in t:
            if a < n or b < n:
                continue
            mask = 0
            for comp in _split_at(adj, len(adj), b):
                if a in comp:
                    mask = sum(1 << x for x in comp if x < n)
                    break
            w = max(w, int(conn[mask]))
            if best is not None and w >= best:
                ok = False
                break
        if ok and (best is None or w < best):
            best = w
    assert best is not None
    return best


def _contract_internal(edges, n: int, chosen) -> tuple[tuple, int]:
    """Contract a set of internal edges; leaves keep their ids."""
    nv = max(2, 2 * n - 2)
    rep = list(range(nv))

    def find(x: int) -> int:
        while rep[x] != x:
            rep[x] = rep[rep[x]]
            x = rep[x]
        return x

    for a, b in chosen:
        ra, rb = find(a), find(b)
        if ra != rb:
            rep[max(ra, rb)] = min(ra, rb)
    used = sorted({find(x) for x in range(nv) if x < n or any(x in e for e in edges)})
    # leaves come first and are untouched; internals compress above n
    remap = {}
    nxt = n
    for x in used:
        if x < n:
            remap[x] = x
        else:
            remap[x] = nxt
            nxt += 1
    new_edges = []
    for a, b in edges:
        ra, rb = remap[find(a)], remap[find(b)]
        if ra != rb:
            new_edges.append((min(ra, rb), max(ra, rb)))
    return tuple(sorted(set(new_edges))), nxt


@functools.lru_cache(maxsize=None)
def _branch_depth_shapes(n: int) -> tuple[tuple[int, tuple, int], ...]:
    """(radius, edges, nv) shapes with internal degrees >= 3, leaves 0..n-1."""
    shapes: dict[str, tuple[int, tuple, int]] = {}
    for t in _cubic_trees(n):
        internal = [(a, b) for a, b in t if a >= n and b >= n]
        for k in range(len(internal) + 1):
            for chosen in itertools.combinations(internal, k):
                edges, nv = _contract_internal(t, n, chosen)
                key = _tree_key(edges, nv, n)
                if key not in shapes:
                    shapes[key] = (tree_radius(edges, nv), edges, nv)
    return tuple(sorted(shapes.values(), key=lambda s: (s[0], s[2])))


def branch_depth(m: RankTable, cap: int = BRANCH_DEPTH_CAP) -> int:
    """Exact branch-depth: leaf trees scored by coarsened-partition cuts.

    The value is the least k admitting a tree whose inner nodes all have
    cut value at most k and whose radius is at most k; ground sets with
    at most one element have branch-depth 0 by convention.
    """
    n = m.n
    if n <= 1:
        return 0
    conn = m.connectivity_table().astype(np.int64)
    if n == 2:
        # only shape is the path with one inner node and classes {0},{1}
        return max(1, int(conn[1]))
    if n > cap:
        raise CapExceeded("branch-depth search", n, cap)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    pow2 = (1 << perms).astype(np.int64)
    best = n + 1
    for radius, edges, nv in _branch_depth_shapes(n):
        if radius >= best:
            break
        adj = _adjacency(edges, nv)
        patterns: set[int] = set()
        for u in range(n, nv):
            class_masks = [
                sum(1 << x for x in comp if x < n) for comp in _split_at(adj, nv, u)
            ]
            d = len(class_masks)
            for s in range(1, (1 << d) - 1):
                union = 0
                for i in range(d):
                    if s >> i & 1:
                        union |= class_masks[i]
                if 0 < union < (1 << n) - 1:
                    patterns.add(union)
        if patterns:
            patt = np.array(
                [[p >> s & 1 for s in range(n)] for p in sorted(patterns)],
                dtype=np.int64,
            )
            cuts = conn[pow2 @ patt.T]
            wmin = int(cuts.max(axis=1).min())
        else:
            wmin = 0
        best = min(best, max(radius, wmin))
    return best


# ---------------------------------------------------------------------------
# matroid tree-width and tree-depth


def tree_decomposition_width(m: RankTable, edges, tau) -> int:
    """Width of a tree-decomposition: worst partition connectivity of a node."""
    nv = max(max((max(a, b) for a, b in edges), default=0), max(tau, default=0)) + 1
    tau = list(tau)
    if len(tau) != m.n:
        raise InvalidInput("mapping length differs from the ground set")
    adj = _adjacency(edges, nv)
    rank = m.rank()
    width = 0
    for u in range(nv):
        comps = _split_at(adj, nv, u)
        om = -(len(comps) - 1) * rank
        for comp in comps:
            inside = set(comp)
            mask = sum(1 << e for e in range(m.n) if tau[e] in inside)
            om += m.rank(m.full ^ mask)
        width = max(width, om)
    return width


def _tree_search(m: RankTable, use_radius: bool, cap: int) -> int:
    n, rank = m.n, m.rank()
    if n == 0 or rank == 0:
        return 0
    if n > cap:
        raise CapExceeded("tree-decomposition search", n, cap)
    ranks = m.ranks.astype(np.int64)
    pow2 = (1 << np.arange(n)).astype(np.int64)
    best = rank  # the one-node tree has width rank(M) and radius 0
    shapes = []
    for nv in range(2, max(2, 2 * n - 1)):
        for edges in _unlabeled_trees(nv):
            shapes.append((tree_radius(edges, nv), nv, edges))
    shapes.sort(key=lambda s: (s[0], s[1]))
    for radius, nv, edges in shapes:
        if use_radius and radius >= best:
            break
        adj = _adjacency(edges, nv)
        node_parts = []
        for u in range(nv):
            inds = []
            for comp in _split_at(adj, nv, u):
                ind = np.zeros(nv, dtype=np.int64)
                ind[comp] = 1
                inds.append(ind)
            node_parts.append(inds)
        stop = radius if use_radius else 0
        wmin = None
        total = nv**n
        place = nv ** np.arange(n, dtype=np.int64)
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
            assign = (idx[:, None] // place) % nv
            width = np.zeros(len(idx), dtype=np.int64)
            for u in range(nv):
                parts = node_parts[u]
                om = np.full(len(idx), -(len(parts) - 1) * rank, dtype=np.int64)
                for ind in parts:
                    masks = ind[assign] @ pow2
                    om += ranks[m.full ^ masks]
                np.maximum(width, om, out=width)
            chunk_min = int(width.min())
            wmin = chunk_min if wmin is None else min(wmin, chunk_min)
            if wmin <= stop:
                break
        assert wmin is not None
        best = min(best, max(radius, wmin) if use_radius else wmin)
    return best


def matroid_tree_width(m: RankTable, cap: int = TREE_SEARCH_CAP) -> int:
    """Exact matroid tree-width over trees with up to 2n-2 nodes."""
    return _tree_search(m, use_radius=False, cap=cap)


def matroid_tree_depth(m: RankTable, cap: int = TREE_SEARCH_CAP) -> int:
    """Exact matroid tree-depth: least k with width <= k and radius <= k."""
    return _tree_search(m, use_radius=True, cap=cap)


def depth_tree_decomposition(m: RankTable) -> tuple[list[tuple[int, int]], list[int]]:
    """Tree-decomposition with width and radius bounded by the chain depth.

    Components hang under a fresh joint root; a connected matroid reuses
    the decomposition of the direct sum its cheapest guts collapse leaves
    behind, since each collapse step raises any node width by at most one.
    Witnesses that matroid tree-depth never exceeds the c*-chain value.
    """
    counter = itertools.count()
    edges: list[tuple[int, int]] = []

    def build(mt: RankTable, labels: list[int]) -> tuple[int, dict[int, int]]:
        if mt.n <= 1:
            node = next(counter)
            return node, {g: node for g in labels}
        comps = components(mt)
        if len(comps) > 1:
            root = next(counter)
            tau: dict[int, int] = {}
            for cmask in comps:
                sub = restrict(mt, cmask)
                sub_labels = [labels[i] for i in bits_of(cmask)]
                child, part = build(sub, sub_labels)
                edges.append((root, child))
                tau.update(part)
            return root, tau
        _, wit = depth_with_witness(mt, Measure.CSTAR)
        assert wit["kind"] == "guts"
        end, steps = guts_contract(mt, wit["side_a"], wit["side_b"])
        assert steps == wit["connectivity"] >= 1
        return build(end, labels)

    _, tau = build(m, list(range(m.n)))
    nv = next(counter)
    mapping = [tau[e] for e in range(m.n)]
    bound = depth(m, Measure.CSTAR)
    assert tree_radius(edges, nv) <= bound
    assert tree_decomposition_width(m, edges, mapping) <= bound
    return edges, mapping


# ---------------------------------------------------------------------------
# rooted contraction decompositions


def rank_base_adjust(value: int, m: RankTable) -> int:
    """Shift a recursive depth onto the rooted-decomposition scale.

    The decomposition optimum sits one below the recursive value, except
    that positive-rank matroids of loops and coloops only are pinned at 1.
    """
    lc = m.loops() | m.coloops()
    if m.rank() > 0 and lc == m.full:
        return 1
    return value - 1


def decomposition_depth(parent) -> int:
    """Longest root-to-node distance, in edges."""
    best = 0
    for v in range(len(parent)):
        d = 0
        x = v
        while parent[x] >= 0:
            x = parent[x]
            d += 1
        best = max(best, d)
    return best


def _leaf_nodes(parent) -> list[int]:
    inner = set(p for p in parent if p >= 0)
    return [v for v in range(len(parent)) if v not in inner]


def _root_path_masks(parent) -> list[int]:
    """Per node, the edge set of its root path as a bitmask over nodes > root.

    A non-root node stands for the edge to its parent, so edge i is bit i.
    """
    masks = [0] * len(parent)
    for v in range(len(parent)):
        x = v
        mask = 0
        while parent[x] >= 0:
            mask |= 1 << x
            x = parent[x]
        masks[v] = mask
    return masks


def check_csd_decomposition(m: RankTable, parent, fmap) -> None:
    """Raise InvalidInput unless (parent, fmap) certifies the chain depth.

    Requires a rooted tree at node 0 with exactly rank(M) edges, elements
    mapped to leaves, and rank(X) at most the edge count of the union of
    root paths of the leaves carrying X, for every subset X.
    """
    parent = list(parent)
    nv = len(parent)
    if nv == 0 or parent[0] != -1:
        raise InvalidInput("node 0 must be the root with parent -1")
    for v in range(1, nv):
        if not 0 <= parent[v] < nv or parent[v] == v:
            raise InvalidInput(f"node {v} has invalid parent {parent[v]}")
        steps, x = 0, v
        while parent[x] >= 0:
            x = parent[x]
            steps += 1
            if steps > nv:
                raise InvalidInput("parent links contain a cycle")
    if nv - 1 != m.rank():
        raise InvalidInput(f"tree has {nv - 1} edges, rank is {m.rank()}")
    fmap = list(fmap)
    if len(fmap) != m.n:
        raise InvalidInput("mapping length differs from the ground set")
    leaves = set(_leaf_nodes(parent))
    for e, node in enumerate(fmap):
        if node not in leaves:
            raise InvalidInput(f"element {e} is mapped to non-leaf node {node}")
    paths = _root_path_masks(parent)
    union = [0] * (1 << m.n)
    for x in range(1, 1 << m.n):
        low = x & -x
        union[x] = union[x ^ low] | paths[fmap[low.bit_length() - 1]]
        if m.rank(x) > union[x].bit_count():
            raise InvalidInput(f"subset {x:#x} outranks its leaf paths")


@functools.lru_cache(maxsize=None)
def _rooted_trees(nv: int) -> tuple[tuple[int, ...], ...]:
    """Unlabeled rooted trees on nv nodes as parent tuples, root first."""
    if nv <= 0:
        return ()
    out: dict[str, tuple[int, ...]] = {}
    for tail in itertools.product(*[range(i) for i in range(1, nv)]):
        parent = (-1,) + tail
        edges = tuple((v, parent[v]) for v in range(1, nv))
        adj = _adjacency(edges, nv)
        out.setdefault(_rooted_shape_key(adj, 0, -1, 0), parent)
    return tuple(out.values())


def csd_decomposition_brute(m: RankTable, cap: int = 6) -> int:
    """Least depth of any valid rooted decomposition, by full enumeration."""
    rank = m.rank()
    if rank > cap:
        raise CapExceeded("rooted decomposition search", rank, cap)
    trees = sorted(_rooted_trees(rank + 1), key=decomposition_depth)
    for parent in trees:
        leaves = _leaf_nodes(parent)
        paths = _root_path_masks(parent)
        for fmap in itertools.product(leaves, repeat=m.n):
            union = [0] * (1 << m.n)
            ok = True
            for x in range(1, 1 << m.n):
                low = x & -x
                union[x] = union[x ^ low] | paths[fmap[low.bit_length() - 1]]
                if m.rank(x) > union[x].bit_count():
                    ok = False
                    break
            if ok:
                return decomposition_depth(parent)
    raise AssertionError("some rooted tree always certifies the matroid")


def csd_decomposition(m: RankTable, validate: bool = True):
    """Build an optimal rooted decomposition from the chain-depth witness.

    Loops sit on a bare root, loop-and-coloop matroids become stars, and
    components share a root.  A connected matroid splits along its best
    guts bipartition: the two contraction trees are joined at the root and
    lifted by a path of length lambda.  Elements of rank-zero branches are
    parked on a leaf of the enclosing step's subtree, which lies below that
    step's path and therefore keeps every subset within its rank budget.
    """
    counter = itertools.count()
    parent: dict[int, int] = {}
    nodes: list[int] = []

    def fresh(par: int | None) -> int:
        node = next(counter)
        nodes.append(node)
        if par is not None:
            parent[node] = par
        return node

    def reroot(old: int, new: int) -> None:
        for v in list(parent):
            if parent[v] == old:
                parent[v] = new
        nodes.remove(old)

    def descend(top: int) -> int:
        cur = top
        while True:
            kids = [v for v, p in parent.items() if p == cur]
            if not kids:
                return cur
            cur = min(kids)

    def build(mt: RankTable, labels: list[int]):
        rank = mt.rank()
        if rank == 0:
            root = fresh(None)
            return root, {}, list(labels)
        lc = mt.loops() | mt.coloops()
        if lc == mt.full:
            root = fresh(None)
            leaves = [fresh(root) for _ in range(rank)]
            fmap = {}
            nxt = 0
            for i in bits_of(mt.coloops()):
                fmap[labels[i]] = leaves[nxt]
                nxt += 1
            for i in bits_of(mt.loops()):
                fmap[labels[i]] = leaves[0]
            return root, fmap, []
        comps = components(mt)
        if len(comps) > 1:
            root = None
            fmap: dict[int, int] = {}
            floats: list[int] = []
            for cmask in comps:
                sub = restrict(mt, cmask)
                sub_labels = [labels[i] for i in bits_of(cmask)]
                r, f, fl = build(sub, sub_labels)
                if root is None:
                    root = r
                else:
                    reroot(r, root)
                fmap.update(f)
                floats.extend(fl)
            if floats:
                # Only loops float here; some component has positive rank,
                # so the merged subtree owns at least one genuine leaf.
                leaf = descend(root)
                for e in floats:
                    fmap[e] = leaf
            return root, fmap, []
        _, wit = depth_with_witness(mt, Measure.CSTAR)
        assert wit["kind"] == "guts"
        a, b, lam = wit["side_a"], wit["side_b"], wit["connectivity"]
        assert lam >= 1
        root_b, fmap_b, fl_b = build(
            contract(mt, a), [labels[i] for i in bits_of(b)]
        )
        root_a, fmap_a, fl_a = build(
            contract(mt, b), [labels[i] for i in bits_of(a)]
        )
        reroot(root_a, root_b)
        fmap_b.update(fmap_a)
        top = root_b
        for _ in range(lam):
            above = fresh(None)
            parent[top] = above
            top = above
        floats = fl_b + fl_a
        if floats:
            # A rank-zero branch is covered by the lambda path above, so
            # any leaf under it absorbs those elements.
            leaf = descend(top)
            for e in floats:
                fmap_b[e] = leaf
        return top, fmap_b, []

    root, fmap, floats = build(m, list(range(m.n)))
    inner = set(parent.values())
    leaves = sorted(v for v in nodes if v not in inner)
    for e in floats:
        fmap[e] = leaves[0]

    order = {root: 0}
    queue = deque([root])
    children: dict[int, list[int]] = {}
    for v, p in parent.items():
        children.setdefault(p, []).append(v)
    while queue:
        x = queue.popleft()
        for c in sorted(children.get(x, ())):
            order[c] = len(order)
            queue.append(c)
    by_position = sorted(order, key=order.get)
    parent_out = tuple(
        -1 if v == root else order[parent[v]] for v in by_position
    )
    fmap_out = tuple(order[fmap[e]] for e in range(m.n))
    if validate:
        check_csd_decomposition(m, parent_out, fmap_out)
    return parent_out, fmap_out


# ---------------------------------------------------------------------------
# restriction closure of the plain contraction depth


class ClosureWitness(NamedTuple):
    matroid: RankTable
    trace: list[dict]


def restriction_closure_witness(m: RankTable) -> ClosureWitness:
    """Extend m so the plain contraction depth matches its chain depth.

    Every guts collapse performed by the chain-depth recursion is lifted
    to a relatively free extension of the growing host matroid: the local
    bipartition side stays on one shore and everything else (including
    previously added elements) joins the other.  The result contains m as
    a restriction on the original labels, and its contraction-only depth
    equals the chain depth of m; the trace replays the extension steps.
    """
    w = m
    trace: list[dict] = []

    def process(contracted: int, scope: int) -> None:
        nonlocal w
        if scope.bit_count() <= 1:
            return
        local = minor(w, w.full ^ scope ^ contracted, contracted)
        comps = components(local)
        scope_bits = bits_of(scope)
        if len(comps) > 1:
            for cmask in comps:
                lifted = sum(1 << scope_bits[i] for i in bits_of(cmask))
                process(contracted, lifted)
            return
        _, wit = depth_with_witness(local, Measure.CSTAR)
        assert wit["kind"] == "guts"
        side_b = sum(1 << scope_bits[i] for i in bits_of(wit["side_b"]))
        lam = wit["connectivity"]
        grown = contracted
        for _ in range(lam):
            other = w.full ^ side_b
            trace.append({"op": "rfext", "x": other, "y": side_b})
            w = relatively_free_extension(w, other, side_b)
            grown |= 1 << (w.n - 1)
        end_local = minor(w, w.full ^ scope ^ grown, grown)
        expect, steps = guts_contract(local, wit["side_a"], wit["side_b"])
        assert steps == lam and end_local == expect
        process(grown, scope)

    process(0, m.full)
    assert delete(w, w.full ^ m.full) == m
    return ClosureWitness(w, trace)


def replay_closure_trace(m: RankTable, trace) -> RankTable:
    """Re-run recorded trace steps; masks refer to the matroid so far."""
    cur = m
    for step in trace:
        op = step.get("op")
        if op == "rfext":
            cur = relatively_free_extension(cur, step["x"], step["y"])
        elif op == "contract":
            cur = contract(cur, 1 << int(step["elem"]))
        else:
            raise InvalidInput(f"unknown trace step {step!r}")
    return cur
