"""File formats: matroid JSON, matrix and graph text, traces, and trees.

The package speaks three external syntaxes.  Matroids travel as JSON
objects in four kinds that every loader normalizes to a RankTable;
matrices over GF(p) travel as a text block with a "gfp m n" header;
multigraphs travel as "graph V E" text with 1-indexed endpoints.  Dump
then parse is the identity, and parsing a dumped file reproduces it byte
for byte.
"""

from __future__ import annotations

import json
from collections import deque

import numpy as np

from .core import RANK_TABLE_CAP, RankTable
from .core import named as core_named
from .errors import CapExceeded, InvalidInput
from .gfield import as_field_matrix, validate_prime, vector_matroid
from .graphs import (
    MultiGraph,
    complete_bipartite,
    cycle,
    cycle_matroid,
    fat_cycle,
    fat_cycle_one_simple,
    path,
    star,
)

MATROID_KINDS = ("ranktable", "linear", "graphic", "named")


# --- canonical JSON ----------------------------------------------------------


def _json_default(x):
    if isinstance(x, (np.integer, np.bool_)):
        return x.item()
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def dumps_canonical(obj) -> str:
    """Stable machine form: sorted keys, newline terminated."""
    return json.dumps(obj, sort_keys=True, default=_json_default) + "\n"


def loads_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"bad JSON: {exc}") from exc


# --- matrix text -------------------------------------------------------------


def dump_matrix_text(a, p: int) -> str:
    mat = as_field_matrix(a, p)
    lines = [f"gf{p} {mat.shape[0]} {mat.shape[1]}"]
    for row in mat:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str) -> tuple[np.ndarray, int]:
    """Matrix and field order from "gfp m n" text; entries must lie in GF(p)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidInput("empty matrix input")
    head = lines[0].split()
    if len(head) != 3 or not head[0].startswith("gf"):
        raise InvalidInput(f"bad matrix header {lines[0]!r}")
    try:
        p = int(head[0][2:])
        rows, cols = int(head[1]), int(head[2])
    except ValueError as exc:
        raise InvalidInput(f"bad matrix header {lines[0]!r}") from exc
    validate_prime(p)
    if rows < 0 or cols < 0:
        raise InvalidInput("matrix dimensions must be nonnegative")
    if len(lines) != rows + 1:
        raise InvalidInput(f"expected {rows} matrix rows, got {len(lines) - 1}")
    data = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != cols:
            raise InvalidInput(f"expected {cols} entries per row, got {ln!r}")
        try:
            row = [int(x) for x in parts]
        except ValueError as exc:
            raise InvalidInput(f"non-integer matrix entry in {ln!r}") from exc
        if any(not 0 <= x < p for x in row):
            raise InvalidInput(f"entries must lie in 0..{p - 1}, got {ln!r}")
        data.append(row)
    return np.array(data, dtype=np.int64).reshape(rows, cols), p


def column_matroid(a, p: int) -> RankTable:
    """vector_matroid with the ground-set cap enforced before any allocation."""
    mat = as_field_matrix(a, p)
    if mat.shape[1] > RANK_TABLE_CAP:
        raise CapExceeded("column matroid ground set", mat.shape[1], RANK_TABLE_CAP)
    return vector_matroid(mat, p)


# --- graph text --------------------------------------------------------------


def dump_graph_text(g: MultiGraph) -> str:
    lines = [f"graph {g.nv} {g.ne}"]
    for u, v in g.edges:
        lines.append(f"{u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> MultiGraph:
    """Multigraph from "graph V E" text with 1-indexed endpoint lines."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidInput("empty graph input")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "graph":
        raise InvalidInput(f"bad graph header {lines[0]!r}")
    try:
        nv, ne = int(head[1]), int(head[2])
    except ValueError as exc:
        raise InvalidInput(f"bad graph header {lines[0]!r}") from exc
    if len(lines) != ne + 1:
        raise InvalidInput(f"expected {ne} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise InvalidInput(f"bad edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise InvalidInput(f"bad edge line {ln!r}") from exc
        if not (1 <= u <= nv and 1 <= v <= nv):
            raise InvalidInput(f"edge {u} {v} out of range 1..{nv}")
        edges.append((u - 1, v - 1))
    return MultiGraph(nv, edges)


def graph_matroid(g: MultiGraph) -> RankTable:
    if g.ne > RANK_TABLE_CAP:
        raise CapExceeded("graphic matroid ground set", g.ne, RANK_TABLE_CAP)
    return cycle_matroid(g)


# --- matroid JSON ------------------------------------------------------------


def matroid_to_json(m: RankTable) -> dict:
    """Explicit rank-table form, the dump every loader accepts."""
    return {"kind": "ranktable", "n": m.n, "ranks": [int(r) for r in m.ranks]}


def linear_to_json(a, p: int) -> dict:
    mat = as_field_matrix(a, p)
    return {
        "kind": "linear",
        "field": f"gf{p}",
        "matrix": [[int(x) for x in row] for row in mat],
    }


def graph_to_json(g: MultiGraph) -> dict:
    """Graphic kind; endpoints are 0-indexed here, unlike the text format."""
    return {"kind": "graphic", "vertices": g.nv, "edges": [[u, v] for u, v in g.edges]}


def graph_from_json(obj: dict) -> MultiGraph:
    try:
        nv = int(obj["vertices"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"bad graphic object: {exc!r}") from exc
    return MultiGraph(nv, edges)


GRAPH_FIXTURES = {
    "cycle": lambda p: cycle(int(p["n"])),
    "path": lambda p: path(int(p["n"])),
    "star": lambda p: star(int(p["n"])),
    "complete_bipartite": lambda p: complete_bipartite(int(p["a"]), int(p["b"])),
    "fat_cycle": lambda p: fat_cycle(int(p["length"]), int(p["mult"])),
    "fat_cycle_one_simple": lambda p: fat_cycle_one_simple(
        int(p["length"]), int(p["mult"])
    ),
}


def named_graph(name: str, params: dict) -> MultiGraph:
    build = GRAPH_FIXTURES.get(name)
    if build is None:
        raise InvalidInput(f"unknown graph fixture name: {name!r}")
    try:
        return build(params)
    except KeyError as exc:
        raise InvalidInput(f"fixture {name!r} is missing parameter {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad parameters for fixture {name!r}: {exc}") from exc


def named_matroid(name: str, params: dict) -> RankTable:
    """Fixture lookup across the core and graph-backed families."""
    if name in GRAPH_FIXTURES:
        return graph_matroid(named_graph(name, params))
    try:
        return core_named(name, **params)
    except KeyError as exc:
        raise InvalidInput(f"fixture {name!r} is missing parameter {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad parameters for fixture {name!r}: {exc}") from exc


def matroid_from_json(obj) -> RankTable:
    if not isinstance(obj, dict):
        raise InvalidInput("matroid JSON must be an object")
    kind = obj.get("kind")
    if kind == "ranktable":
        try:
            n = int(obj["n"])
            ranks = [int(r) for r in obj["ranks"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"bad ranktable object: {exc!r}") from exc
        if n < 0 or any(not 0 <= r <= n for r in ranks):
            raise InvalidInput("rank entries must lie in 0..n")
        m = RankTable(n, ranks)
        m.validate()
        return m
    if kind == "linear":
        field = obj.get("field", "")
        if not isinstance(field, str) or not field.startswith("gf"):
            raise InvalidInput(f"bad field {field!r}")
        try:
            p = int(field[2:])
        except ValueError as exc:
            raise InvalidInput(f"bad field {field!r}") from exc
        validate_prime(p)
        try:
            mat = [[int(x) for x in row] for row in obj["matrix"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"bad linear object: {exc!r}") from exc
        widths = {len(row) for row in mat}
        if len(widths) > 1:
            raise InvalidInput("matrix rows have uneven lengths")
        return column_matroid(np.array(mat, dtype=np.int64) if mat else
                              np.zeros((0, 0), dtype=np.int64), p)
    if kind == "graphic":
        return graph_matroid(graph_from_json(obj))
    if kind == "named":
        name = obj.get("name")
        if not isinstance(name, str):
            raise InvalidInput("named object needs a string name")
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise InvalidInput("named params must be an object")
        return named_matroid(name, params)
    raise InvalidInput(f"unknown matroid kind {kind!r}")


def load_input_text(text: str) -> tuple[RankTable, dict]:
    """Sniff matroid JSON, matrix text, or graph text; normalize to RankTable.

    Returns the matroid and a small info record naming the source form.
    """
    stripped = text.lstrip()
    if not stripped:
        raise InvalidInput("empty input")
    if stripped[0] == "{":
        obj = loads_json(text)
        m = matroid_from_json(obj)
        return m, {"form": "matroid", "kind": obj.get("kind"), "n": m.n}
    token = stripped.split(None, 1)[0]
    if token == "graph":
        g = parse_graph_text(text)
        return graph_matroid(g), {"form": "graph", "vertices": g.nv, "n": g.ne}
    if token.startswith("gf"):
        a, p = parse_matrix_text(text)
        return column_matroid(a, p), {
            "form": "matrix",
            "field": f"gf{p}",
            "shape": [int(a.shape[0]), int(a.shape[1])],
            "n": int(a.shape[1]),
        }
    raise InvalidInput(f"unrecognized input format (first token {token!r})")


# --- closure traces ----------------------------------------------------------


def trace_to_json(trace) -> list[dict]:
    """Wire form of a trace; files spell the bispan sides "X" and "Y"."""
    out = []
    for step in trace:
        op = step.get("op")
        if op == "rfext":
            out.append({"op": "rfext", "X": int(step["x"]), "Y": int(step["y"])})
        elif op == "contract":
            out.append({"op": "contract", "elem": int(step["elem"])})
        else:
            raise InvalidInput(f"unknown trace step {step!r}")
    return out


def trace_from_json(items) -> list[dict]:
    if not isinstance(items, list):
        raise InvalidInput("trace must be a list of steps")
    steps = []
    for obj in items:
        if not isinstance(obj, dict):
            raise InvalidInput("trace steps must be objects")
        op = obj.get("op")
        try:
            if op == "rfext":
                steps.append({"op": "rfext", "x": int(obj["X"]), "y": int(obj["Y"])})
            elif op == "contract":
                steps.append({"op": "contract", "elem": int(obj["elem"])})
            else:
                raise InvalidInput(f"unknown trace step {obj!r}")
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"bad trace step {obj!r}") from exc
    return steps


# --- trees as parent arrays --------------------------------------------------


def _tree_adjacency(edges, nv: int) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(nv)]
    for a, b in edges:
        if not (0 <= a < nv and 0 <= b < nv) or a == b:
            raise InvalidInput(f"bad tree edge ({a}, {b})")
        adj[a].append(b)
        adj[b].append(a)
    return adj


def edges_to_parents(edges, nv: int, root: int | None = None):
    """Root an unrooted tree and relabel its nodes in breadth-first order.

    Returns (parents, order): parents[0] is -1 and order maps old node ids
    to new positions.  Without an explicit root, a centre node of minimum
    eccentricity (lowest id on ties) is chosen, so the depth of the parent
    array equals the tree radius.
    """
    if nv <= 0:
        raise InvalidInput("tree needs at least one node")
    if len(edges) != nv - 1:
        raise InvalidInput(f"tree on {nv} nodes needs {nv - 1} edges")
    adj = _tree_adjacency(edges, nv)

    def bfs(src: int) -> list[int]:
        dist = [-1] * nv
        dist[src] = 0
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    if root is None:
        best = None
        for v in range(nv):
            ecc = max(bfs(v))
            if best is None or ecc < best[0]:
                best = (ecc, v)
        root = best[1]
    dist = bfs(root)
    if min(dist) < 0:
        raise InvalidInput("tree edges do not connect all nodes")

    order = [-1] * nv
    parents = [-1] * nv
    order[root] = 0
    queue = deque([root])
    seen = {root}
    while queue:
        x = queue.popleft()
        for y in sorted(adj[x]):
            if y not in seen:
                seen.add(y)
                order[y] = len(seen) - 1
                parents[order[y]] = order[x]
                queue.append(y)
    return parents, order


def parents_to_edges(parents) -> tuple[list[tuple[int, int]], int]:
    """Edges of a parent-array tree, validating root, range, and acyclicity."""
    parents = [int(p) for p in parents]
    nv = len(parents)
    if nv == 0 or parents[0] != -1:
        raise InvalidInput("node 0 must be the root with parent -1")
    for v in range(1, nv):
        if not 0 <= parents[v] < nv or parents[v] == v:
            raise InvalidInput(f"node {v} has invalid parent {parents[v]}")
        steps, x = 0, v
        while parents[x] >= 0:
            x = parents[x]
            steps += 1
            if steps > nv:
                raise InvalidInput("parent links contain a cycle")
    return [(parents[v], v) for v in range(1, nv)], nv


# --- witness trees -----------------------------------------------------------


def witness_node_count(witness: dict) -> int:
    if "children" in witness:
        return 1 + sum(witness_node_count(c) for c in witness["children"])
    if "child" in witness:
        return 1 + witness_node_count(witness["child"])
    return 1
