"""Command-line front door: depths, decompositions, check suites, fixtures.

One binary with five subcommands.  JSON is the machine format and aligned
tables the human one; every cap is overridable downward only; reports are
byte-identical for a fixed seed no matter the parallelism degree.

Exit codes: 0 all pass, 1 check failure, 2 bad input, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import checks
from .decomposition import (
    BRANCH_DEPTH_CAP,
    branch_depth,
    csd_decomposition,
    decomposition_depth,
    depth_tree_decomposition,
    rank_base_adjust,
    tree_decomposition_width,
    tree_radius,
)
from .depth import ALL_MEASURES, DEFAULT_CAPS as MEASURE_CAPS
from .depth import Measure, cache_stats, solve, verify_witness
from .errors import CapExceeded, InvalidInput, MatroidDepthError
from .matrixdepth import GL_FORMS_CAP, td_star_enumerated, td_star_formula
from .serialize import (
    GRAPH_FIXTURES,
    dumps_canonical,
    edges_to_parents,
    graph_to_json,
    linear_to_json,
    load_input_text,
    named_graph,
    named_matroid,
    parents_to_edges,
    parse_matrix_text,
    witness_node_count,
)

EXIT_OK = 0
EXIT_CHECK_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3

CAPS_ENV = "MATROID_DEPTH_CAPS"

# caps keys each subcommand accepts on the command line
_ALLOWED_CAPS = {
    "depth": {"depth"},
    "decompose": {"depth"},
    "sparsify-td": {"gl"},
    "verify": set(checks.DEFAULT_CAPS),
    "gen": set(),
}


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    measures: list[Measure] = field(default_factory=list)
    check_ids: list[str] = field(default_factory=list)
    caps: dict = field(default_factory=dict)
    fmt: str = "table"
    seed: int = 0
    jobs: int = 1
    out: str | None = None
    kind: str = ""
    gen_name: str = ""
    gen_params: dict = field(default_factory=dict)


# --- plumbing ----------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InvalidInput(f"cannot write {out}: {exc}") from exc


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(x) for x in row] for row in rows]
    widths = [
        max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
        for i, h in enumerate(headers)
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _parse_caps_items(items) -> dict:
    caps: dict = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise InvalidInput(f"caps need key=value, got {item!r}")
        try:
            caps[key.strip()] = int(value)
        except ValueError as exc:
            raise InvalidInput(f"caps value must be an integer: {item!r}") from exc
    return caps


def _gather_caps(command: str, flag_items) -> dict:
    """Env caps filtered to what the command understands; flags checked strictly."""
    allowed = _ALLOWED_CAPS[command]
    env = os.environ.get(CAPS_ENV, "")
    caps = {}
    if env.strip():
        for key, value in _parse_caps_items(
            s for s in env.split(",") if s.strip()
        ).items():
            if key in allowed:
                caps[key] = value
    flags = _parse_caps_items(flag_items)
    unknown = set(flags) - allowed
    if unknown:
        raise InvalidInput(
            f"caps {sorted(unknown)} not used by {command!r}; allowed: {sorted(allowed)}"
        )
    caps.update(flags)
    return caps


def _depth_cap(caps: dict, measure: Measure) -> int | None:
    req = caps.get("depth")
    if req is None:
        return None
    limit = MEASURE_CAPS[measure]
    if req > limit:
        raise CapExceeded(f"{measure.value}-depth cap override", req, limit)
    return req


# --- subcommands -------------------------------------------------------------


def cmd_depth(cfg: RunConfig) -> tuple[dict, int]:
    m, info = load_input_text(_read_text(cfg.inputs[0]))
    measures = cfg.measures or list(ALL_MEASURES)
    records = []
    capped = False
    for measure in measures:
        cap = _depth_cap(cfg.caps, measure)
        before = cache_stats()["hits"]
        start = time.perf_counter()
        try:
            value, witness = solve(m, measure, cap)
        except CapExceeded as exc:
            # a too-large instance caps single measures, not the whole table
            records.append({"measure": measure.value, "error": str(exc)})
            capped = True
            continue
        wall_ms = int((time.perf_counter() - start) * 1000)
        hits = cache_stats()["hits"] - before
        assert verify_witness(m, measure, witness) == value
        records.append(
            {
                "measure": measure.value,
                "value": value,
                "witness": witness,
                "stats": {
                    "nodes": witness_node_count(witness),
                    "cache_hits": hits,
                    "wall_ms": wall_ms,
                },
            }
        )
    payload = {"command": "depth", "input": info, "n": m.n, "records": records}
    return payload, EXIT_CAP if capped else EXIT_OK


def _depth_table(payload: dict) -> str:
    rows = []
    notes = []
    for r in payload["records"]:
        if "error" in r:
            rows.append([r["measure"], "-", "-", "-", "-"])
            notes.append(f"{r['measure']}: {r['error']}")
        else:
            rows.append(
                [r["measure"], r["value"], r["stats"]["nodes"],
                 r["stats"]["cache_hits"], r["stats"]["wall_ms"]]
            )
    text = _table(["measure", "value", "nodes", "cache_hits", "wall_ms"], rows)
    for note in notes:
        text += f"capped {note}\n"
    return text


_DECOMPOSE_CAPS = {
    "branch-depth": BRANCH_DEPTH_CAP,
    "tree-depth": MEASURE_CAPS[Measure.CSTAR],
    "cstar": MEASURE_CAPS[Measure.CSTAR],
}


def cmd_decompose(cfg: RunConfig) -> tuple[dict, int]:
    m, info = load_input_text(_read_text(cfg.inputs[0]))
    kind = cfg.kind
    limit = _DECOMPOSE_CAPS[kind]
    req = cfg.caps.get("depth")
    if req is not None and req > limit:
        raise CapExceeded(f"{kind} cap override", req, limit)
    cap = limit if req is None else req
    base = {"command": "decompose", "kind": kind, "input": info, "n": m.n}

    if kind == "branch-depth":
        # the solver reports the optimum; ground sets of at most one
        # element admit no tree at all and sit at value 0
        value = branch_depth(m, cap)
        return {**base, "value": value, "tree": None}, EXIT_OK

    if m.n > cap:
        raise CapExceeded(f"{kind} ground set", m.n, cap)

    if kind == "tree-depth":
        edges, tau = depth_tree_decomposition(m)
        used = set(tau)
        for a, b in edges:
            used.update((a, b))
        nv = max(used, default=0) + 1
        parents, order = edges_to_parents(edges, nv)
        tau_out = [order[t] for t in tau]
        back_edges, back_nv = parents_to_edges(parents)
        width = tree_decomposition_width(m, back_edges, tau_out)
        radius = tree_radius(back_edges, back_nv)
        assert width == tree_decomposition_width(m, edges, tau)
        assert radius == tree_radius(edges, nv)
        return (
            {**base, "parents": parents, "tau": tau_out, "width": width,
             "radius": radius, "verified": True},
            EXIT_OK,
        )

    parents, fmap = csd_decomposition(m)
    height = decomposition_depth(parents)
    csd = solve(m, Measure.CSTAR, cap)[0]
    assert height == rank_base_adjust(csd, m)
    return (
        {**base, "parents": list(parents), "f": list(fmap), "height": height,
         "chain_depth": csd, "verified": True},
        EXIT_OK,
    )


def _decompose_table(payload: dict) -> str:
    skip = {"command", "input"}
    rows = []
    for key in sorted(payload):
        if key in skip:
            continue
        value = payload[key]
        if isinstance(value, list):
            value = " ".join(str(x) for x in value)
        rows.append([key, value])
    return _table(["field", "value"], rows)


def cmd_sparsify_td(cfg: RunConfig) -> tuple[dict, int]:
    a, p = parse_matrix_text(_read_text(cfg.inputs[0]))
    report = td_star_formula(a, p)
    req = cfg.caps.get("gl")
    if req is not None and req > GL_FORMS_CAP:
        raise CapExceeded("gl cap override", req, GL_FORMS_CAP)
    cap = GL_FORMS_CAP if req is None else req
    note = None
    try:
        report.enumerated = td_star_enumerated(a, p, cap)
    except CapExceeded as exc:
        note = str(exc)
    payload = {
        "command": "sparsify-td",
        "input": {"field": f"gf{p}", "shape": [int(a.shape[0]), int(a.shape[1])]},
        "report": report.to_dict(),
        "consistent": report.consistent(),
        "note": note,
    }
    return payload, EXIT_OK


def _sparsify_table(payload: dict) -> str:
    rep = payload["report"]
    rows = [
        ["td", *rep["td"]],
        ["td_star", *rep["td_star"]],
    ]
    if "enumerated" in rep:
        rows.append(["enumerated", *rep["enumerated"]])
    text = _table(["depth", "primal", "dual", "incidence"], rows)
    flags = []
    if rep["loops_coloops_only"]:
        flags.append("loops/coloops only")
    if rep["zero_rank"]:
        flags.append("zero rank")
    if not payload["consistent"]:
        flags.append("FORMULA/ENUMERATION MISMATCH")
    if payload["note"]:
        flags.append(f"enumeration skipped: {payload['note']}")
    if flags:
        text += "note: " + "; ".join(flags) + "\n"
    return text


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    ids = list(dict.fromkeys(cfg.check_ids)) or sorted(checks.REGISTRY)
    unknown = [i for i in ids if i not in checks.REGISTRY]
    if unknown:
        raise InvalidInput(f"unknown check ids: {unknown}")
    overrides = dict(cfg.caps)
    overrides.setdefault("seed", cfg.seed)
    for key, value in overrides.items():
        if key != "seed" and value > checks.DEFAULT_CAPS[key]:
            raise CapExceeded(f"caps override {key!r}", value, checks.DEFAULT_CAPS[key])

    def run_one(check_id: str) -> dict:
        return checks.summarize(
            check_id, checks.run_check(check_id, caps=overrides), caps=overrides
        )

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(run_one, ids))
    else:
        reports = [run_one(i) for i in ids]

    merged = dict(checks.DEFAULT_CAPS)
    merged.update(overrides)
    all_pass = all(r["fail_count"] == 0 for r in reports)
    payload = {
        "command": "verify",
        "caps": {k: merged[k] for k in sorted(merged)},
        "checks": reports,
        "all_pass": all_pass,
    }
    return payload, EXIT_OK if all_pass else EXIT_CHECK_FAIL


def _verify_table(payload: dict) -> str:
    rows = [
        [r["check_id"], r["pass_count"], r["fail_count"], r["skipped"]]
        for r in payload["checks"]
    ]
    text = _table(["check", "pass", "fail", "skipped"], rows)
    if payload["all_pass"]:
        return text + "all checks passed\n"
    bad = [r["check_id"] for r in payload["checks"] if r["fail_count"]]
    return text + f"FAILED: {' '.join(bad)}\n"


def gen_artifact(name: str, params: dict) -> dict:
    """Fixture artifact by name: linear fano, named core families, graphs."""
    if name == "fano":
        cols = list(range(1, 8))
        mat = [[(c >> r) & 1 for c in cols] for r in range(3)]
        return linear_to_json(mat, 2)
    if name in ("uniform", "free", "loops"):
        named_matroid(name, params)
        return {
            "kind": "named",
            "name": name,
            "params": {k: int(v) for k, v in params.items()},
        }
    if name in GRAPH_FIXTURES:
        return graph_to_json(named_graph(name, params))
    raise InvalidInput(f"unknown generator name {name!r}")


def cmd_gen(cfg: RunConfig) -> tuple[dict, int]:
    return gen_artifact(cfg.gen_name, cfg.gen_params), EXIT_OK


_DISPATCH = {
    "depth": cmd_depth,
    "decompose": cmd_decompose,
    "sparsify-td": cmd_sparsify_td,
    "verify": cmd_verify,
    "gen": cmd_gen,
}

_TABLES = {
    "depth": _depth_table,
    "decompose": _decompose_table,
    "sparsify-td": _sparsify_table,
    "verify": _verify_table,
}


def _render(command: str, payload: dict, fmt: str) -> str:
    if command == "gen" or fmt == "json":
        return dumps_canonical(payload)
    return _TABLES[command](payload)


# --- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--caps", action="append", default=[], metavar="K=V",
                        help="lower a cap; repeatable")
    common.add_argument("--format", choices=("json", "table"), default="table",
                        dest="fmt", help="output format (default table)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampled families")
    common.add_argument("--jobs", type=int, default=1,
                        help="parallelism degree; output is identical at any degree")
    common.add_argument("--out", default=None, help="write output to a file")

    parser = argparse.ArgumentParser(
        prog="matroid-depth",
        description="Recursive depth parameters of matroids: solvers, "
        "decompositions, and a verification harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("depth", parents=[common],
                       help="compute depth measures of one input")
    p.add_argument("--input", required=True,
                   help="matroid JSON, matrix text, or graph text; - for stdin")
    p.add_argument("--measure", action="append", default=[],
                   help='measure token such as c, d, c*d; repeatable; default all')

    p = sub.add_parser("decompose", parents=[common],
                       help="build and verify a decomposition")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", required=True,
                   choices=("branch-depth", "tree-depth", "cstar"))

    p = sub.add_parser("sparsify-td", parents=[common],
                       help="tree-depth minima over row-equivalent forms")
    p.add_argument("--input", required=True, help="matrix text; - for stdin")

    p = sub.add_parser("verify", parents=[common],
                       help="run registered theorem checks")
    p.add_argument("--check", action="append", default=[],
                   help="check id, or all; repeatable; default all")

    p = sub.add_parser("gen", parents=[common], help="write a fixture artifact")
    p.add_argument("name", help="fixture name, e.g. fano, fat_cycle, uniform")
    p.add_argument("params", nargs="*", metavar="K=V",
                   help="fixture parameters, e.g. length=6 mult=5")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    if args.jobs < 1:
        raise InvalidInput("--jobs must be at least 1")
    cfg = RunConfig(
        command=args.command,
        caps=_gather_caps(args.command, args.caps),
        fmt=args.fmt,
        seed=args.seed,
        jobs=args.jobs,
        out=args.out,
    )
    if args.command in ("depth", "decompose", "sparsify-td"):
        cfg.inputs = [args.input]
    if args.command == "depth":
        seen: list[Measure] = []
        for token in args.measure:
            measure = Measure.from_token(token)
            if measure not in seen:
                seen.append(measure)
        cfg.measures = seen
    if args.command == "decompose":
        cfg.kind = args.kind
    if args.command == "verify":
        cfg.check_ids = [] if "all" in args.check else list(args.check)
    if args.command == "gen":
        cfg.gen_name = args.name
        cfg.gen_params = {
            k: v for k, v in _parse_caps_items(args.params).items()
        }
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        payload, code = _DISPATCH[cfg.command](cfg)
        _emit(_render(cfg.command, payload, cfg.fmt), cfg.out)
        return code
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except MatroidDepthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
