import numpy as np
import pytest
from hypothesis import given, strategies as st

from dlcurves import gf, hermitian, suzuki
from dlcurves.dlcore.enumerate import (BudgetExceeded, ambient_chunks, enumerate_points,
                                       estimate_cost, projective_size)
from dlcurves.dlcore.model import normalize


@given(st.sampled_from([(2, 1), (2, 2), (3, 1), (3, 2)]), st.integers(1, 4), st.integers(1, 64))
def test_ambient_chunks_cover_projective_space(pk, n, chunk):
    F = gf.mk_field(*pk)
    if projective_size(F.order, n) > 5000:
        return
    blocks = list(ambient_chunks(F, n, chunk))
    pts = np.concatenate(blocks, axis=1)
    assert pts.shape[1] == projective_size(F.order, n)
    assert np.array_equal(normalize(F, pts), pts)
    assert len({tuple(c) for c in pts.T}) == pts.shape[1]


def test_exact_degree_partition():
    M = suzuki.sz_model(0)
    for n in (1, 2, 3, 4, 5, 6):
        ps = enumerate_points(M, n)
        by = ps.count_by_degree()
        assert sum(by.values()) == len(ps)
        # points of degree d over F_{q^n} are the degree-d points seen in F_{q^d}
        for d, c in by.items():
            assert c == enumerate_points(M, d).count_by_degree()[d]


def test_gap_theorem_su3():
    M = hermitian.su3_model(2, 1)
    assert enumerate_points(M, 2).count_by_degree() == {1: 9, 2: 0}


def test_budget_refusal():
    M = suzuki.sz_model(1)
    assert estimate_cost(M, 4, "ambient") > 10 ** 8
    with pytest.raises(BudgetExceeded) as e:
        enumerate_points(M, 4, "ambient")
    assert e.value.estimate == projective_size(8 ** 4, 5)
    with pytest.raises(BudgetExceeded):
        enumerate_points(M, 2, "ambient", budget=10)


def test_vscan_unavailable_for_su3():
    with pytest.raises(ValueError):
        estimate_cost(hermitian.su3_model(2, 1), 1, "vscan")
    with pytest.raises(ValueError):
        enumerate_points(hermitian.su3_model(2, 1), 0)


def test_points_sorted_canonically():
    ps = enumerate_points(suzuki.sz_model(1), 1, "vscan")
    keys = [tuple(r) for r in ps.coords.tolist()]
    assert keys == sorted(keys)
