"""Modular cuts, single-element extensions, guts contractions."""

import pytest
from hypothesis import given, strategies as st

from matroid_depth.core import (
    closure,
    components,
    connectivity,
    contract,
    delete,
    direct_sum,
    dual,
    fano,
    free,
    loops_matroid,
    restrict,
    uniform,
)
from matroid_depth.errors import InvalidExtension
from matroid_depth.extensions import (
    all_extensions,
    all_modular_cuts,
    cstar_transformations,
    dstar_transformations,
    extension_by_cut,
    extension_is_valid,
    flats,
    free_extension,
    guts_contract,
    is_modular_cut,
    relatively_free_extension,
)
from matroid_depth.families import CENSUS_COUNTS, all_rank_tables, census

CENSUS3 = census(3)


def test_flats_of_uniform():
    m = uniform(2, 3)
    got = sorted(flats(m))
    assert got == [0b000, 0b001, 0b010, 0b100, 0b111]


def test_flats_closed_under_closure():
    for m in CENSUS3:
        for f in flats(m):
            assert closure(m, f) == f


def test_is_modular_cut():
    m = uniform(2, 3)
    assert is_modular_cut(m, frozenset({0b111}))
    assert is_modular_cut(m, frozenset())
    assert not is_modular_cut(m, frozenset({0b001}))  # not up-closed


def test_extension_count_matches_census():
    """Appending one labeled element bijects cuts with larger matroids."""
    for n in range(5):
        cuts = sum(len(all_modular_cuts(m)) for m in all_rank_tables(n))
        assert cuts == CENSUS_COUNTS[n + 1]


def test_extensions_are_valid_matroids():
    for m in CENSUS3:
        for ext in all_extensions(m):
            ext.validate()
            assert extension_is_valid(m, ext)


def test_free_extension_rank():
    m = uniform(2, 4)
    ext = free_extension(m)
    assert ext == uniform(2, 5)
    f = free_extension(free(2))
    assert f.rank(0b111) == 2 and f.rank(0b100) == 1


def test_principal_cut_gives_parallel_element():
    m = uniform(2, 3)
    cut = frozenset(f for f in flats(m) if f & 0b001)
    ext = extension_by_cut(m, cut)
    assert ext.rank(0b1001) == 1  # new element parallel to element 0
    assert extension_is_valid(m, ext)


def test_cstar_transformations_drop_rank():
    m = uniform(2, 4)
    outs = cstar_transformations(m)
    assert outs
    for out in outs:
        assert out.n == m.n
        assert out.rank() == m.rank() - 1
        assert out != m


def test_cstar_skips_identity_moves():
    assert cstar_transformations(loops_matroid(2)) == []
    assert cstar_transformations(free(0)) == []


def test_dstar_transformations_raise_rank():
    m = uniform(1, 3)
    outs = dstar_transformations(m)
    assert outs
    for out in outs:
        assert out.n == m.n
        assert out.rank() == m.rank() + 1
    duals = {dual(x).fingerprint() for x in outs}
    assert duals == {x.fingerprint() for x in cstar_transformations(dual(m))}


def test_relatively_free_extension_guts():
    m = uniform(3, 4)
    x, y = 0b0011, 0b1100
    ext = relatively_free_extension(m, x, y)
    e = 1 << m.n
    assert extension_is_valid(m, ext)
    assert ext.rank() == m.rank()
    assert closure(ext, x) & e  # e lies in cl(X)
    assert closure(ext, y) & e  # ... and in cl(Y)
    assert ext.rank(e) == 1  # not a loop


def test_relatively_free_extension_rejects_bad_pairs():
    with pytest.raises(InvalidExtension):
        relatively_free_extension(free(3), 0b001, 0b110)
    with pytest.raises(InvalidExtension):
        relatively_free_extension(uniform(2, 4), 0b0001, 0b0010)


def test_guts_contract_splits():
    m = uniform(3, 4)
    a, b = 0b0011, 0b1100
    end, steps = guts_contract(m, a, b)
    assert steps == connectivity(m, a)
    assert end.n == m.n
    assert connectivity(end, a) == 0
    assert restrict(end, b) == contract(m, a)
    assert restrict(end, a) == contract(m, b)


def test_guts_contract_on_sum_is_noop():
    s = direct_sum(uniform(1, 2), uniform(2, 3))
    end, steps = guts_contract(s, 0b00011, 0b11100)
    assert steps == 0
    assert end == s


def test_guts_contract_fano():
    m = fano()
    a = 0b0000111
    b = m.full ^ a
    end, steps = guts_contract(m, a, b)
    assert steps == connectivity(m, a)
    assert sorted(components(end), key=lambda c: c.bit_count()) != [end.full]
    assert restrict(end, b) == contract(m, a)


@given(st.sampled_from(CENSUS3))
def test_all_extensions_unique(m):
    outs = all_extensions(m)
    fps = {x.fingerprint() for x in outs}
    assert len(fps) == len(outs)
    for ext in outs:
        assert delete(ext, 1 << m.n) == m
