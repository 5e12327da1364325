import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubforge.datafiles import DataUnavailable
from cubforge.designs import (
    DESIGN_CATALOG,
    BlockDesign,
    OrthogonalArray,
    SearchLimitExceeded,
    block_count,
    catalog_design,
    complete_design,
    derive_design,
    dual_bch_oa,
    nordstrom_robinson,
    read_design,
    read_oa,
    search_design,
    trivial_oa,
    verify_design,
    verify_oa,
    write_design,
    write_oa,
    xiang_bound,
)
from oracles import coverage_counts, oa_strength

EXPECTED = {
    "fano": (7, 3, 2, 1, 7),
    "sqs8": (8, 4, 3, 1, 14),
    "inversive10": (10, 4, 3, 1, 30),
    "biplane16": (16, 6, 2, 2, 16),
    "sym25": (25, 9, 2, 3, 25),
    "sqs14": (14, 4, 3, 1, 91),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_catalog_designs_against_enumeration(name):
    v, k, t, lam, b = EXPECTED[name]
    d, t_file, lam_file = catalog_design(name)
    assert (d.v, d.b, t_file, lam_file) == (v, b, t, lam)
    assert d.block_sizes() == {k: b}
    assert coverage_counts(v, d.blocks, t) == {lam: math.comb(v, t)}
    rep = verify_design(d, t)
    assert rep.balanced and rep.regular and rep.lam == lam
    assert block_count(v, k, t, lam, 0) == b


def test_placeholders_raise_data_unavailable():
    placeholders = [n for n, (rel, _) in DESIGN_CATALOG.items() if rel is None]
    assert placeholders
    for name in placeholders:
        with pytest.raises(DataUnavailable):
            catalog_design(name)


def test_unbalanced_design_reports_failure():
    d = BlockDesign(4, ((0, 1), (1, 2), (2, 3)))
    rep = verify_design(d, 2)
    assert not rep.balanced and rep.failures and rep.lam is None
    assert rep.max_t == 0


def test_block_count_nonintegral_warns():
    with pytest.warns(UserWarning):
        assert block_count(8, 3, 2, 1, 0) == Fraction(28, 3)
    assert block_count(7, 3, 2, 1, 1) == 3


@pytest.mark.parametrize("name,point", [("sqs8", 0), ("sqs14", 5), ("inversive10", 9)])
def test_derived_designs_are_designs(name, point):
    d, t, lam = catalog_design(name)
    der = derive_design(d, point)
    k = len(d.blocks[0])
    want = block_count(d.v, k, t, lam, t - 1)
    rep = verify_design(der, t - 1)
    assert rep.regular and rep.lam == want
    assert coverage_counts(der.v, der.blocks, t - 1) == {want: math.comb(der.v, t - 1)}


def test_derive_of_fano_gives_pairs():
    d, _, _ = catalog_design("fano")
    der = derive_design(d, 0)
    assert der.v == 6 and der.block_sizes() == {2: 3, 3: 4}


def test_xiang_bound_values():
    assert xiang_bound(7, 2, 1) == 21
    assert xiang_bound(10, 3, 2) == 120 + 45
    with pytest.raises(ValueError):
        xiang_bound(5, 0, 2)


def test_search_design_finds_and_refutes():
    d = search_design(7, [3], 2, 1)
    assert d is not None and verify_design(d, 2).lam == 1
    d = search_design(6, [3], 3, 1)
    assert d is not None and verify_design(d, 3).lam == 1
    assert search_design(6, [4], 3, 1) is None
    with pytest.raises(SearchLimitExceeded):
        search_design(30, [3], 2, 1)


def test_complete_design_is_a_design_at_every_level():
    d = complete_design(8, 3)
    assert d.b == 56
    assert verify_design(d, 3).regular


def test_design_file_round_trip(tmp_path):
    d, t, lam = catalog_design("fano")
    write_design(d, tmp_path / "f.txt", t, lam)
    assert read_design(tmp_path / "f.txt") == (d, t, lam)


@pytest.mark.parametrize("l", range(1, 9))
def test_trivial_oa_has_full_strength(l):
    a = trivial_oa(l)
    assert a.N == 2 ** l and a.l == l
    rep = verify_oa(a, l)
    assert rep.passed and rep.strength == l and rep.centrally_symmetric
    assert oa_strength(a.rows, l) == l


@given(st.integers(1, 7), st.data())
def test_column_subsets_never_lose_strength(l, data):
    a = trivial_oa(l)
    cols = data.draw(st.lists(st.integers(0, l - 1), min_size=1, max_size=l, unique=True))
    sub = a.columns(cols)
    assert verify_oa(sub, len(cols)).passed


@given(st.integers(2, 6), st.integers(0, 2 ** 6 - 1))
def test_strength_is_monotone_and_matches_oracle(l, seed):
    rng = np.random.default_rng(seed)
    rows = rng.choice([-1, 1], size=(16, l)).astype(np.int8)
    a = OrthogonalArray(rows)
    want = oa_strength(rows, l)
    assert verify_oa(a, 1, probe=l).strength == want if want else not verify_oa(a, 1).passed
    for t in range(1, l + 1):
        assert verify_oa(a, t).passed == (t <= want)


def test_nordstrom_robinson_strength_five():
    a = nordstrom_robinson()
    rep = verify_oa(a, 5)
    assert (a.N, a.l) == (256, 16)
    assert rep.passed and rep.strength == 5 and rep.centrally_symmetric
    assert oa_strength(a.rows, 6) == 5


def test_dual_bch_plain_and_augmented():
    plain = dual_bch_oa()
    rep = verify_oa(plain, 4)
    assert (plain.N, plain.l) == (1024, 31) and rep.passed and rep.strength == 4
    assert not rep.centrally_symmetric
    aug = dual_bch_oa(augment=True)
    rep = verify_oa(aug, 5, probe=0)
    assert aug.N == 2048 and rep.passed and rep.centrally_symmetric


def test_oa_violation_is_reported():
    rows = np.array([[1, 1], [1, 1], [-1, -1], [-1, -1]], dtype=np.int8)
    rep = verify_oa(OrthogonalArray(rows), 2)
    assert not rep.passed and rep.violation == (0, 1) and rep.strength == 1


def test_oa_file_round_trip(tmp_path):
    a = nordstrom_robinson()
    write_oa(a, tmp_path / "nr.txt")
    b = read_oa(tmp_path / "nr.txt")
    assert np.array_equal(a.rows, b.rows)
