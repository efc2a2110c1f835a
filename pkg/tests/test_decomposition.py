"""Branch/tree decompositions and the rooted contraction-chain certificates."""

import pytest
from hypothesis import given, settings, strategies as st

from matroid_depth.core import (
    connectivity,
    delete,
    direct_sum,
    dual,
    fano,
    free,
    loops_matroid,
    uniform,
)
from matroid_depth.decomposition import (
    branch_depth,
    branch_width,
    check_csd_decomposition,
    csd_decomposition,
    csd_decomposition_brute,
    decomposition_depth,
    depth_tree_decomposition,
    matroid_tree_depth,
    matroid_tree_width,
    partition_connectivity,
    rank_base_adjust,
    replay_closure_trace,
    restriction_closure_witness,
    tree_decomposition_width,
    tree_radius,
)
from matroid_depth.depth import Measure, depth
from matroid_depth.errors import CapExceeded, InvalidInput
from matroid_depth.families import census
from matroid_depth.graphs import cycle, cycle_matroid

CENSUS4 = census(4)


def test_partition_connectivity_matches_lambda():
    m = fano()
    for mask in (0b0000011, 0b0010110, 0b1111000):
        assert partition_connectivity(m, [mask, m.full ^ mask]) == connectivity(m, mask)
    assert partition_connectivity(m, []) == m.rank()


def test_partition_connectivity_rejects_overlap():
    with pytest.raises(InvalidInput):
        partition_connectivity(uniform(2, 3), [0b011, 0b110])
    with pytest.raises(InvalidInput):
        partition_connectivity(uniform(2, 3), [0b1011])


def test_tree_radius():
    assert tree_radius([(0, 1), (1, 2)], 3) == 1
    assert tree_radius([], 1) == 0
    star_edges = [(0, i) for i in range(1, 5)]
    assert tree_radius(star_edges, 5) == 1


def test_branch_width_small_values():
    assert branch_width(free(1)) == 0
    assert branch_width(loops_matroid(3)) == 0
    assert branch_width(free(4)) == 0
    assert branch_width(uniform(1, 2)) == 1
    assert branch_width(uniform(2, 4)) == 2
    for n in range(3, 7):
        assert branch_width(uniform(n - 1, n)) == 1
    assert branch_width(fano()) == 2


def test_branch_width_self_dual():
    for m in CENSUS4:
        assert branch_width(m) == branch_width(dual(m))


def test_branch_depth_values():
    assert branch_depth(free(1)) == 0
    assert branch_depth(uniform(1, 2)) == 1
    assert branch_depth(uniform(2, 3)) == 1
    assert branch_depth(uniform(2, 4)) == 2
    assert branch_depth(loops_matroid(4)) == 1
    assert branch_depth(cycle_matroid(cycle(5))) == 1
    assert branch_depth(fano(), cap=7) == 2


def test_branch_parameters_capped():
    with pytest.raises(CapExceeded):
        branch_width(uniform(4, 9))
    with pytest.raises(CapExceeded):
        branch_depth(fano())


def test_branch_depth_sandwich():
    # branch-depth lower-bounds the starred depth, which a quadratic bounds back
    for m in CENSUS4:
        bd = branch_depth(m)
        star = depth(m, Measure.CSTAR_DSTAR)
        assert bd <= star <= 2 * bd * bd + 1


def test_matroid_tree_values():
    assert matroid_tree_depth(loops_matroid(2)) == 0
    assert matroid_tree_depth(uniform(1, 2)) == 1
    assert matroid_tree_depth(uniform(2, 3)) == 2
    assert matroid_tree_depth(free(3)) == 1
    assert matroid_tree_width(uniform(2, 3)) == 2
    assert matroid_tree_width(free(3)) == 1
    assert matroid_tree_width(uniform(2, 4)) == 2
    assert matroid_tree_width(uniform(2, 5)) == 2


def test_matroid_tree_depth_sandwich():
    for m in census(3):
        mtd = matroid_tree_depth(m)
        csd = depth(m, Measure.CSTAR)
        if m.rank() == 0:
            assert mtd == 0
            continue
        assert mtd <= csd <= mtd * mtd + 1


def test_tree_decomposition_width_public():
    m = uniform(2, 3)
    # single node holding everything: width is the rank
    assert tree_decomposition_width(m, [], [0, 0, 0]) == 2
    # a path with elements spread over both ends
    assert tree_decomposition_width(m, [(0, 1)], [0, 0, 1]) >= 2


def test_depth_tree_decomposition_certifies():
    for m in CENSUS4:
        edges, tau = depth_tree_decomposition(m)
        nv = max((max(e) for e in edges), default=0) + 1
        assert sorted(tau) == sorted(range(m.n)) or m.n == 0 or nv >= 1
        width = tree_decomposition_width(m, edges, tau)
        radius = tree_radius(edges, nv)
        csd = depth(m, Measure.CSTAR)
        assert max(width, radius) <= csd
        assert matroid_tree_depth(m) <= max(width, radius) or m.rank() == 0


def test_rank_base_adjust():
    assert rank_base_adjust(5, uniform(2, 3)) == 4
    assert rank_base_adjust(1, free(3)) == 1
    assert rank_base_adjust(1, loops_matroid(2)) == 0
    assert rank_base_adjust(1, direct_sum(free(1), loops_matroid(1))) == 1


def test_csd_decomposition_matches_brute():
    for m in CENSUS4:
        parent, fmap = csd_decomposition(m)
        got = decomposition_depth(parent)
        assert got == csd_decomposition_brute(m)
        assert got == rank_base_adjust(depth(m, Measure.CSTAR), m)


def test_csd_decomposition_fano():
    parent, fmap = csd_decomposition(fano())
    assert decomposition_depth(parent) == 3
    assert len(parent) == fano().rank() + 1
    check_csd_decomposition(fano(), parent, fmap)


def test_check_csd_decomposition_rejects():
    m = uniform(2, 3)
    good_parent, good_fmap = csd_decomposition(m)
    with pytest.raises(InvalidInput):
        check_csd_decomposition(m, (0, 0, 1), good_fmap)  # root not marked
    with pytest.raises(InvalidInput):
        check_csd_decomposition(m, (-1, 0), good_fmap)  # edge count != rank
    with pytest.raises(InvalidInput):
        check_csd_decomposition(m, (-1, 0, 1), (1, 1, 1))  # target not a leaf
    # all elements on one leaf two edges up fails the rank inequality
    big = uniform(3, 4)
    with pytest.raises(InvalidInput):
        check_csd_decomposition(big, (-1, 0, 1, 1), (2, 2, 2, 2))


def test_restriction_closure_witness_small():
    for m in CENSUS4:
        wit = restriction_closure_witness(m)
        assert delete(wit.matroid, wit.matroid.full ^ m.full) == m
        assert replay_closure_trace(m, wit.trace) == wit.matroid
        assert depth(wit.matroid, Measure.C) == depth(m, Measure.CSTAR)


def test_restriction_closure_witness_fano():
    wit = restriction_closure_witness(fano())
    assert depth(wit.matroid, Measure.C) == depth(fano(), Measure.CSTAR) == 4


def test_replay_rejects_unknown_op():
    with pytest.raises(InvalidInput):
        replay_closure_trace(uniform(1, 2), [{"op": "shuffle"}])


@given(st.sampled_from(CENSUS4))
@settings(max_examples=50)
def test_branch_width_duality_property(m):
    assert branch_width(m) == branch_width(dual(m))


@given(st.sampled_from(CENSUS4), st.data())
@settings(max_examples=50)
def test_partition_connectivity_nonnegative(m, data):
    if m.n == 0:
        return
    classes = [0, 0, 0]
    for e in range(m.n):
        classes[data.draw(st.integers(0, 2))] |= 1 << e
    parts = [c for c in classes if c]
    assert partition_connectivity(m, parts) >= 0
