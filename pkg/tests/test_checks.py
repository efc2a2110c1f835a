"""Check registry, report shapes, and the open-question probes."""

import pytest

from matroid_depth.checks import (
    CheckResult,
    DEFAULT_CAPS,
    REGISTRY,
    _result,
    clear_check_caches,
    explore_open_csdd_closure,
    explore_open_csdsd,
    guts_deletion_depth,
    run_check,
    summarize,
)
from matroid_depth.core import loops_matroid, uniform
from matroid_depth.errors import InvalidInput

ALL_CHECKS = [
    "duality",
    "chain",
    "circuit-bounds",
    "bd-sandwich",
    "mtd-sandwich",
    "omega-ineq",
    "contraction-star",
    "closure-cstar",
    "closure-dstar",
    "closure-contrstar",
    "guts-split",
    "guts-split-dual",
    "commute-ext",
    "matrix-eq",
    "min-td",
    "diff1-convention",
    "gd-eq",
    "monotone",
    "non-minor",
    "incomparable",
    "fat-cycle",
    "k3n",
    "td2",
    "path-cycle-td",
    "td-cd",
    "graph-3conn",
]


def test_registry_is_complete():
    assert sorted(REGISTRY) == sorted(ALL_CHECKS)
    assert len(ALL_CHECKS) == 26


def test_unknown_check_id():
    with pytest.raises(InvalidInput):
        run_check("no-such-check")


def test_unknown_caps_key():
    with pytest.raises(InvalidInput):
        run_check("chain", caps={"bogus": 1})


@pytest.mark.parametrize("check_id", ALL_CHECKS)
def test_default_run_has_no_failures(check_id):
    results = run_check(check_id)
    assert results
    bad = [r for r in results if r.status == "fail"]
    assert bad == [], bad[:1]
    for r in results:
        assert r.status in ("pass", "fail", "skipped-cap")
        assert r.check == check_id


def test_failure_carries_instance_data():
    r = _result("chain", "n=2/abc", False, {"violated": ["cd<=c"]},
                {"n": 2, "ranks": [0, 1, 1, 2]})
    assert r.status == "fail"
    assert r.details["instance_data"]["ranks"] == [0, 1, 1, 2]
    ok = _result("chain", "n=2/abc", True, {}, {"n": 2})
    assert "instance_data" not in ok.details


def test_check_result_to_dict():
    r = CheckResult("duality", "n=1/xy", "pass", {"cd": [1, 1]})
    assert r.to_dict() == {
        "check": "duality",
        "instance": "n=1/xy",
        "status": "pass",
        "details": {"cd": [1, 1]},
    }


def test_summarize_shape():
    results = [
        CheckResult("chain", "a", "pass", {}),
        CheckResult("chain", "b", "fail", {"violated": ["cd<=c"]}),
        CheckResult("chain", "c", "skipped-cap", {}),
    ]
    rep = summarize("chain", results, family="census")
    assert rep["check_id"] == "chain"
    assert rep["family"] == "census"
    assert rep["pass_count"] == 1
    assert rep["fail_count"] == 1
    assert rep["skipped"] == 1
    assert rep["failures"] == [results[1].to_dict()]
    assert rep["caps"] == {k: DEFAULT_CAPS[k] for k in sorted(DEFAULT_CAPS)}


def test_sampling_is_deterministic():
    caps = {"sample": 15}
    first = [(r.instance, r.status) for r in run_check("chain", caps=caps)]
    second = [(r.instance, r.status) for r in run_check("chain", caps=caps)]
    assert first == second
    assert len(first) == 15


def test_diff1_skips_rank_zero():
    results = run_check("diff1-convention")
    skipped = [r for r in results if r.status == "skipped-cap"]
    assert skipped
    assert all(r.details["reason"] == "rank zero" for r in skipped)


def test_strict_arrows_report_witness_or_skip():
    rows = [r for r in run_check("incomparable")
            if r.instance.startswith("strict")]
    assert len(rows) == 6
    for r in rows:
        assert r.status in ("pass", "skipped-cap")
        if r.status == "pass":
            assert r.details["witness"]
    # the plain arrows have small witnesses, the starred ones do not
    by_name = {r.instance: r.status for r in rows}
    assert by_name["strict cd<c"] == "pass"
    assert by_name["strict cd<d"] == "pass"


def test_guts_deletion_depth_values():
    clear_check_caches()
    assert guts_deletion_depth(uniform(1, 1)) == 1
    assert guts_deletion_depth(loops_matroid(3)) == 1
    assert guts_deletion_depth(uniform(1, 2)) == 2
    # one deletion leaves the free matroid, so two levels suffice
    assert guts_deletion_depth(uniform(3, 4)) == 2
    assert guts_deletion_depth(uniform(2, 4)) == 3


def test_explore_csdsd_reports_without_asserting():
    probe = explore_open_csdsd(2, caps={"matrix_rows": 1, "matrix_cols": 2})
    assert probe
    for rows, mat_val, abs_val, equal in probe:
        assert isinstance(mat_val, int) and isinstance(abs_val, int)
        assert equal == (mat_val == abs_val)
    flat = {rows: equal for rows, _, _, equal in probe}
    assert flat[((1, 1),)] is True


def test_explore_csdsd_other_field():
    probe = explore_open_csdsd(3, caps={"matrix_rows": 1, "matrix_cols": 2})
    assert all(isinstance(e, bool) for *_, e in probe)


def test_explore_csdd_closure_sound():
    rep = explore_open_csdd_closure(caps={"n": 3, "budget": 1})
    assert rep["probe"] == "csdd-closure"
    assert rep["instances"] == len(rep["entries"])
    # the one-sided bound is a theorem; equality is only counted
    assert rep["all_sound"] is True
    assert 0 <= rep["equal_count"] <= rep["instances"]
