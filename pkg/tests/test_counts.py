from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dlcurves.dlcore.counts import curve_degree, expected_counts, family_params


def test_frozen_tables():
    t = expected_counts("su3", 1)
    assert (t.q0, t.q, t.points) == (2, 4, {1: 9, 3: 72, 4: 216})
    assert expected_counts("su3", 1, 3).points == {1: 28, 3: 864, 4: 6048}
    assert expected_counts("sz", 0).points == {1: 5, 4: 20, 5: 20}
    assert expected_counts("sz", 1).points[1] == 65
    assert expected_counts("ree", 0).points[1] == 28
    assert expected_counts("ree", 1).points[1] == 19684


def test_gap_and_unknown():
    t = expected_counts("ree", 0)
    assert [t.expected(n) for n in range(2, 6)] == [0, 0, 0, 0]
    assert t.expected(8) is None


@given(st.sampled_from(["su3", "sz", "ree"]), st.integers(0, 6))
def test_degree_identity(family, m):
    if family == "su3" and m == 0:
        return  # q = 1: every group order vanishes
    t = expected_counts(family, m)
    assert t.degree_identity()
    assert t.embedding_degree() == Fraction(curve_degree(family, t.q0, t.q))


@given(st.sampled_from(["su3", "sz", "ree"]), st.integers(1, 6))
def test_top_degree_count_is_group_order(family, m):
    t = expected_counts(family, m)
    assert t.points[t.d + 1] == t.G


def test_bad_params():
    with pytest.raises(ValueError):
        family_params("sz", 1, 3)
    with pytest.raises(ValueError):
        family_params("su3", 1, 5)
    with pytest.raises(ValueError):
        family_params("xx", 1)
    with pytest.raises(ValueError):
        family_params("ree", -1)
