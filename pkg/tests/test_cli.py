"""End-to-end runs of every subcommand through main(argv)."""

import io
import json

import pytest

from matroid_depth import checks
from matroid_depth.cli import (
    EXIT_CAP,
    EXIT_CHECK_FAIL,
    EXIT_INPUT,
    EXIT_OK,
    gen_artifact,
    main,
)
from matroid_depth.core import fano, uniform
from matroid_depth.decomposition import (
    branch_depth,
    check_csd_decomposition,
    tree_decomposition_width,
    tree_radius,
)
from matroid_depth.depth import Measure, verify_witness
from matroid_depth.errors import InvalidInput
from matroid_depth.graphs import complete_bipartite, cycle_matroid, fat_cycle
from matroid_depth.serialize import (
    dumps_canonical,
    graph_from_json,
    matroid_from_json,
    matroid_to_json,
    parents_to_edges,
)

C4_TEXT = "graph 4 4\n1 2\n2 3\n3 4\n4 1\n"
ONE_ELEMENT = '{"kind":"ranktable","n":1,"ranks":[0,1]}\n'


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def c4_path(tmp_path):
    path = tmp_path / "c4.txt"
    path.write_text(C4_TEXT)
    return str(path)


@pytest.fixture
def one_path(tmp_path):
    path = tmp_path / "one.json"
    path.write_text(ONE_ELEMENT)
    return str(path)


# --- depth ---------------------------------------------------------------------


def test_depth_fano_table_has_all_eight_rows(capsys, tmp_path):
    path = tmp_path / "fano.json"
    path.write_text(dumps_canonical(matroid_to_json(fano())))
    code, out, err = run(capsys, ["depth", "--input", str(path)])
    # seven exact values; the c*d* search caps out at n = 6 and says so
    assert code == EXIT_CAP
    lines = out.splitlines()
    assert lines[0].split() == ["measure", "value", "nodes", "cache_hits", "wall_ms"]
    values = {ln.split()[0]: ln.split()[1] for ln in lines[1:9]}
    assert values == {
        "c": "4", "d": "5", "cd": "4", "c*": "4",
        "d*": "4", "c*d": "4", "cd*": "4", "c*d*": "-",
    }
    assert "capped c*d*" in out


def test_depth_single_element_is_all_ones(capsys, one_path):
    code, out, _ = run(capsys, ["depth", "--input", one_path, "--format", "json"])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert len(payload["records"]) == 8
    assert all(r["value"] == 1 for r in payload["records"])
    assert all(r["witness"] == {"kind": "leaf"} for r in payload["records"])


def test_depth_graph_input_routes_through_cycle_matroid(capsys, c4_path):
    code, out, _ = run(
        capsys,
        ["depth", "--input", c4_path, "--measure", "c", "--format", "json"],
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["input"]["form"] == "graph"
    assert payload["records"][0]["value"] == 4


def test_depth_witnesses_verify_after_json_round_trip(capsys, c4_path):
    code, out, _ = run(capsys, ["depth", "--input", c4_path, "--format", "json"])
    assert code == EXIT_OK
    m = uniform(3, 4)
    for record in json.loads(out)["records"]:
        measure = Measure.from_token(record["measure"])
        assert verify_witness(m, measure, record["witness"]) == record["value"]
        stats = record["stats"]
        assert stats["nodes"] >= 1 and stats["cache_hits"] >= 0


def test_depth_measure_selection_dedups_and_rejects_unknown(capsys, c4_path):
    code, out, _ = run(
        capsys,
        ["depth", "--input", c4_path, "--measure", "cd", "--measure", "cd",
         "--format", "json"],
    )
    assert code == EXIT_OK
    assert [r["measure"] for r in json.loads(out)["records"]] == ["cd"]

    code, _, err = run(capsys, ["depth", "--input", c4_path, "--measure", "x"])
    assert code == EXIT_INPUT and "unknown measure" in err


def test_depth_cap_override_is_downward_only(capsys, c4_path):
    code, _, err = run(
        capsys, ["depth", "--input", c4_path, "--measure", "c", "--caps", "depth=13"]
    )
    assert code == EXIT_CAP and "exceeds cap" in err

    code, _, err = run(
        capsys, ["depth", "--input", c4_path, "--measure", "c", "--caps", "depth=3"]
    )
    assert code == EXIT_CAP  # n = 4 above the lowered cap: capped row


def test_depth_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(C4_TEXT))
    code, out, _ = run(
        capsys, ["depth", "--input", "-", "--measure", "d", "--format", "json"]
    )
    assert code == EXIT_OK
    assert json.loads(out)["records"][0]["value"] == 2


# --- decompose -------------------------------------------------------------------


def test_decompose_cstar_on_cycle(capsys, c4_path):
    code, out, _ = run(
        capsys,
        ["decompose", "--input", c4_path, "--kind", "cstar", "--format", "json"],
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["verified"] is True
    assert payload["height"] == payload["chain_depth"] - 1 == 2
    check_csd_decomposition(uniform(3, 4), payload["parents"], payload["f"])


def test_decompose_branch_depth_degenerate(capsys, one_path):
    code, out, _ = run(
        capsys,
        ["decompose", "--input", one_path, "--kind", "branch-depth",
         "--format", "json"],
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["value"] == 0 and payload["tree"] is None


def test_decompose_branch_depth_matches_solver(capsys, c4_path):
    code, out, _ = run(
        capsys,
        ["decompose", "--input", c4_path, "--kind", "branch-depth",
         "--format", "json"],
    )
    assert code == EXIT_OK
    assert json.loads(out)["value"] == branch_depth(uniform(3, 4))


def test_decompose_tree_depth_emits_checkable_arrays(capsys, c4_path):
    code, out, _ = run(
        capsys,
        ["decompose", "--input", c4_path, "--kind", "tree-depth",
         "--format", "json"],
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["verified"] is True
    edges, nv = parents_to_edges(payload["parents"])
    assert tree_radius(edges, nv) == payload["radius"]
    assert (
        tree_decomposition_width(uniform(3, 4), edges, payload["tau"])
        == payload["width"]
    )


def test_decompose_rejects_oversized_input(capsys, tmp_path):
    path = tmp_path / "seven.json"
    path.write_text(dumps_canonical(matroid_to_json(fano())))
    code, _, err = run(capsys, ["decompose", "--input", str(path), "--kind",
                                "branch-depth"])
    assert code == EXIT_CAP and "exceeds cap" in err


# --- sparsify-td -----------------------------------------------------------------


def test_sparsify_td_one_one(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("gf2 1 2\n1 1\n")
    code, out, _ = run(capsys, ["sparsify-td", "--input", str(path),
                                "--format", "json"])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["report"]["td_star"] == [2, 1, 2]
    assert payload["report"]["enumerated"] == [2, 1, 2]
    assert payload["consistent"] is True and payload["note"] is None


def test_sparsify_td_identity_flag(capsys, tmp_path):
    path = tmp_path / "i2.txt"
    path.write_text("gf2 2 2\n1 0\n0 1\n")
    code, out, _ = run(capsys, ["sparsify-td", "--input", str(path),
                                "--format", "json"])
    assert code == EXIT_OK
    assert json.loads(out)["report"]["loops_coloops_only"] is True


def test_sparsify_td_gf3_and_zero_rank(capsys, tmp_path):
    path = tmp_path / "g3.txt"
    path.write_text("gf3 2 2\n1 2\n2 1\n")
    code, out, _ = run(capsys, ["sparsify-td", "--input", str(path),
                                "--format", "json"])
    assert code == EXIT_OK

    path.write_text("gf2 1 1\n0\n")
    code, out, _ = run(capsys, ["sparsify-td", "--input", str(path),
                                "--format", "json"])
    assert code == EXIT_OK
    assert json.loads(out)["report"]["zero_rank"] is True


def test_sparsify_td_cap_note_keeps_formula_values(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("gf2 2 3\n1 0 1\n0 1 1\n")
    code, out, _ = run(
        capsys,
        ["sparsify-td", "--input", str(path), "--caps", "gl=1", "--format", "json"],
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["note"] is not None
    assert "enumerated" not in payload["report"]
    assert len(payload["report"]["td_star"]) == 3


# --- verify ----------------------------------------------------------------------


def test_verify_single_check_passes(capsys):
    code, out, _ = run(capsys, ["verify", "--check", "fat-cycle"])
    assert code == EXIT_OK
    assert "all checks passed" in out


def test_verify_unknown_check_and_caps(capsys):
    code, _, err = run(capsys, ["verify", "--check", "bogus"])
    assert code == EXIT_INPUT and "unknown check ids" in err

    code, _, err = run(capsys, ["verify", "--check", "duality", "--caps", "zzz=1"])
    assert code == EXIT_INPUT

    code, _, err = run(capsys, ["verify", "--check", "duality", "--caps", "n=9"])
    assert code == EXIT_CAP


def test_verify_reports_are_deterministic_across_jobs(capsys):
    argv = ["verify", "--check", "duality", "--check", "chain", "--format", "json"]
    code1, out1, _ = run(capsys, argv + ["--jobs", "1"])
    code2, out2, _ = run(capsys, argv + ["--jobs", "3"])
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    payload = json.loads(out1)
    assert [c["check_id"] for c in payload["checks"]] == ["duality", "chain"]
    assert payload["all_pass"] is True


def test_verify_failing_check_exits_one(capsys, monkeypatch):
    def broken(family, caps):
        return [checks.CheckResult("broken", "unit", "fail", {"got": 0})]

    monkeypatch.setitem(checks.REGISTRY, "broken", broken)
    code, out, _ = run(capsys, ["verify", "--check", "broken", "--format", "json"])
    assert code == EXIT_CHECK_FAIL
    payload = json.loads(out)
    assert payload["all_pass"] is False
    assert payload["checks"][0]["failures"][0]["instance"] == "unit"

    code, out, _ = run(capsys, ["verify", "--check", "broken"])
    assert code == EXIT_CHECK_FAIL and "FAILED: broken" in out


def test_verify_env_caps_apply(capsys, monkeypatch):
    monkeypatch.setenv("MATROID_DEPTH_CAPS", "n=3,sample=50")
    code, out, _ = run(capsys, ["verify", "--check", "duality", "--format", "json"])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["caps"]["n"] == 3 and payload["caps"]["sample"] == 50


def test_env_caps_irrelevant_to_command_are_ignored(capsys, monkeypatch, c4_path):
    monkeypatch.setenv("MATROID_DEPTH_CAPS", "n=3")
    code, _, _ = run(capsys, ["depth", "--input", c4_path, "--measure", "c"])
    assert code == EXIT_OK


def test_flag_caps_beat_env_caps(capsys, monkeypatch):
    monkeypatch.setenv("MATROID_DEPTH_CAPS", "n=4")
    code, out, _ = run(
        capsys,
        ["verify", "--check", "duality", "--caps", "n=3", "--format", "json"],
    )
    assert code == EXIT_OK
    assert json.loads(out)["caps"]["n"] == 3


def test_verify_seed_lands_in_caps(capsys):
    code, out, _ = run(
        capsys, ["verify", "--check", "duality", "--seed", "7", "--format", "json"]
    )
    assert code == EXIT_OK
    assert json.loads(out)["caps"]["seed"] == 7


# --- gen -------------------------------------------------------------------------


def test_gen_fano_artifact_loads_back(capsys, tmp_path):
    out_path = tmp_path / "fano.json"
    code, out, _ = run(capsys, ["gen", "fano", "--out", str(out_path)])
    assert code == EXIT_OK and out == ""
    obj = json.loads(out_path.read_text())
    assert obj["kind"] == "linear" and obj["field"] == "gf2"
    assert matroid_from_json(obj) == fano()


def test_gen_fat_cycle_six_five(capsys):
    code, out, _ = run(capsys, ["gen", "fat_cycle", "length=6", "mult=5"])
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["kind"] == "graphic" and obj["vertices"] == 6
    assert graph_from_json(obj) == fat_cycle(6, 5)


def test_gen_complete_bipartite(capsys):
    code, out, _ = run(capsys, ["gen", "complete_bipartite", "a=3", "b=4"])
    assert code == EXIT_OK
    obj = json.loads(out)
    assert matroid_from_json(obj) == cycle_matroid(complete_bipartite(3, 4))


def test_gen_named_kinds_round_trip(capsys):
    code, out, _ = run(capsys, ["gen", "uniform", "k=2", "n=4"])
    assert code == EXIT_OK
    assert matroid_from_json(json.loads(out)) == uniform(2, 4)


def test_gen_rejects_unknown_and_bad_params(capsys):
    code, _, err = run(capsys, ["gen", "petersen"])
    assert code == EXIT_INPUT and "unknown generator" in err

    code, _, err = run(capsys, ["gen", "fat_cycle", "length=6"])
    assert code == EXIT_INPUT

    code, _, err = run(capsys, ["gen", "uniform", "k=two", "n=4"])
    assert code == EXIT_INPUT

    with pytest.raises(InvalidInput):
        gen_artifact("uniform", {"k": 2})


def test_out_file_matches_stdout_output(capsys, tmp_path, c4_path):
    code, out, _ = run(
        capsys, ["depth", "--input", c4_path, "--measure", "cd", "--format", "json"]
    )
    assert code == EXIT_OK
    out_path = tmp_path / "report.json"
    code, silent, _ = run(
        capsys,
        ["depth", "--input", c4_path, "--measure", "cd", "--format", "json",
         "--out", str(out_path)],
    )
    assert code == EXIT_OK and silent == ""
    assert out_path.read_text() == out


def test_missing_input_file_is_input_error(capsys, tmp_path):
    code, _, err = run(capsys, ["depth", "--input", str(tmp_path / "none.json")])
    assert code == EXIT_INPUT and "cannot read" in err
