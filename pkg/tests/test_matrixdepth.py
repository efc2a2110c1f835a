import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matroid_depth.depth import Measure, depth
from matroid_depth.errors import CapExceeded, InvalidInput
from matroid_depth.families import matrix_family
from matroid_depth.gfield import row_space_key, vector_matroid
from matroid_depth.matrixdepth import (
    FFMatrix,
    csdd_legacy,
    dual_graph,
    incidence_graph,
    matrix_depth,
    primal_graph,
    row_equivalent_forms,
    td_star_enumerated,
    td_star_formula,
    td_variants,
)

ONES = [[1, 1]]
I2 = [[1, 0], [0, 1]]
U23 = [[1, 0, 1], [0, 1, 1]]
I2_PAD = [[1, 0, 0], [0, 1, 0]]
Z1 = [[0]]
FANO = [
    [1, 0, 0, 1, 1, 0, 1],
    [0, 1, 0, 1, 0, 1, 1],
    [0, 0, 1, 0, 1, 1, 1],
]

STARRED = (
    Measure.CSTAR,
    Measure.DSTAR,
    Measure.CSTAR_D,
    Measure.C_DSTAR,
    Measure.CSTAR_DSTAR,
)


def test_ffmatrix_basics():
    m = FFMatrix([[3, 4], [5, 6]], 3)
    assert m.a.tolist() == [[0, 1], [2, 0]]
    assert (m.rows, m.cols) == (2, 2)
    with pytest.raises(ValueError):
        m.a[0, 0] = 1
    row = FFMatrix([1, 0, 1], 2)
    assert row.rows == 1 and row.cols == 3
    assert FFMatrix(np.zeros((0, 2)), 2).rank() == 0


def test_ffmatrix_rejects_bad_shapes():
    with pytest.raises(InvalidInput):
        FFMatrix(np.zeros((2, 0)), 2)
    with pytest.raises(InvalidInput):
        FFMatrix(np.zeros((2, 2, 2)), 2)
    with pytest.raises(CapExceeded):
        FFMatrix(np.zeros((1, 11)), 2)


def test_class_key_tracks_row_space():
    a = FFMatrix(U23, 2)
    b = FFMatrix([[1, 1, 0], [0, 1, 1]], 2)
    c = FFMatrix([[1, 0, 1], [0, 1, 0]], 2)
    assert a.class_key() == b.class_key()
    assert a.class_key() != c.class_key()
    assert FFMatrix(np.zeros((0, 3)), 2).class_key() != a.class_key()


def test_matroid_of_zero_rows_is_all_loops():
    m = FFMatrix(np.zeros((0, 3)), 2).matroid()
    assert m.rank() == 0 and m.loops() == m.full


def test_td_variants_fixed_points():
    assert td_variants(ONES, 2) == (2, 1, 2)
    assert td_variants(I2, 2) == (1, 1, 2)
    assert td_variants(Z1, 2) == (1, 1, 1)


def test_support_graphs_explicit():
    a = FFMatrix([[1, 1, 0], [0, 0, 1]], 2)
    assert primal_graph(a).edges == ((0, 1),)
    assert dual_graph(a).nv == 2 and dual_graph(a).edges == ()
    inc = incidence_graph(a)
    assert inc.nv == 5
    assert inc.edges == ((0, 2), (0, 3), (1, 4))


def test_dual_graph_joins_rows_sharing_a_column():
    a = FFMatrix([[1, 1], [0, 1], [1, 0]], 3)
    assert dual_graph(a).edges == ((0, 1), (0, 2))


def test_legacy_csdd_values():
    expected = {
        (tuple(map(tuple, ONES))): 1,
        (tuple(map(tuple, I2))): 1,
        (tuple(map(tuple, U23))): 2,
        (tuple(map(tuple, Z1))): 0,
        (tuple(map(tuple, I2_PAD))): 1,
    }
    for rows, want in expected.items():
        assert csdd_legacy(list(rows), 2) == want


def test_td_star_formula_reports():
    cases = {
        tuple(map(tuple, ONES)): ((2, 1, 2), False, False),
        tuple(map(tuple, I2)): ((1, 1, 2), True, False),
        tuple(map(tuple, U23)): ((2, 2, 3), False, False),
        tuple(map(tuple, Z1)): ((1, 1, 1), True, True),
        tuple(map(tuple, I2_PAD)): ((1, 1, 2), True, False),
    }
    for rows, (starred, lc, zr) in cases.items():
        r = td_star_formula(list(rows), 2)
        assert r.starred() == starred
        assert r.loops_coloops_only is lc
        assert r.zero_rank is zr
        assert r.consistent()
        d = r.to_dict()
        assert d["td_star"] == list(starred)
        assert "enumerated" not in d


def test_row_equivalent_forms_cover_the_class():
    forms = list(row_equivalent_forms(U23, 2))
    assert len(forms) == 6  # |GL(2, 2)|
    assert any((f == np.array(U23)).all() for f in forms)
    key = row_space_key(np.array(U23), 2)
    assert all(row_space_key(f, 2) == key for f in forms)
    zero = list(row_equivalent_forms(Z1, 2))
    assert len(zero) == 1 and not zero[0].any()


def test_enumerated_matches_formula_on_small_family():
    for rows in matrix_family(2, 3, 2):
        r = td_star_formula(rows, 2)
        r.enumerated = td_star_enumerated(rows, 2)
        assert r.consistent(), rows


def test_enumeration_cap():
    wide = np.eye(3, 4, dtype=int)
    with pytest.raises(CapExceeded):
        td_star_enumerated(np.vstack([wide, np.zeros((2, 4), dtype=int)]), 2)


def test_move_enumeration_cap():
    with pytest.raises(CapExceeded):
        matrix_depth([[1] * 10], Measure.DSTAR, 3)


def test_matrix_depth_rejects_plain_measures():
    with pytest.raises(InvalidInput):
        matrix_depth(I2, Measure.C, 2)


@pytest.mark.parametrize("measure", STARRED, ids=lambda m: m.value)
def test_matrix_depth_matches_abstract_depth(measure):
    for rows in matrix_family(2, 3, 2):
        m = vector_matroid(np.array(rows), 2)
        assert matrix_depth(rows, measure, 2) == depth(m, measure), rows


def test_matrix_depth_across_fields():
    reps = {
        "u12": ([[1, 1]], [[1, 2]]),
        "u23": (U23, [[1, 0, 1], [0, 1, 2]]),
    }
    for gf2_rep, gf3_rep in reps.values():
        for measure in STARRED:
            assert matrix_depth(gf2_rep, measure, 2) == matrix_depth(
                gf3_rep, measure, 3
            )


def test_fano_matrix_chain_depth():
    assert matrix_depth(FANO, Measure.CSTAR, 2) == 4


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(0, 2), min_size=3, max_size=3),
        min_size=2,
        max_size=3,
    ),
    st.integers(0, 1),
    st.integers(1, 2),
)
def test_row_ops_do_not_change_depth(rows, target, scale):
    a = np.array(rows) % 3
    b = a.copy()
    b[target] = (b[target] + scale * b[(target + 1) % len(rows)]) % 3
    b = b[::-1]
    for measure in (Measure.CSTAR_D, Measure.DSTAR):
        assert matrix_depth(a, measure, 3) == matrix_depth(b, measure, 3)
