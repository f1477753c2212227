import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dlcurves import hermitian as h
from dlcurves.dlcore.enumerate import enumerate_points

seeds = st.integers(0, 2 ** 31)

FQ_POINTS_Q0_2 = [[0, 1, 1], [0, 1, 2], [0, 1, 3], [1, 0, 1], [1, 0, 2], [1, 0, 3],
                  [1, 1, 0], [1, 2, 0], [1, 3, 0]]


@pytest.fixture(scope="module")
def model():
    return h.su3_model(2, 1)


def test_frozen_Fq_points(model):
    ps = enumerate_points(model, 1)
    assert ps.coords.tolist() == FQ_POINTS_Q0_2
    for w in FQ_POINTS_Q0_2:
        assert h.su3_membership(model, w)
        assert h.su3_F(model, w, 1) == 0
        assert h.su3_P1(model, w) == 0


def test_non_point_rejected(model):
    assert not h.su3_membership(model, [1, 1, 1])


@given(seeds)
def test_sigma_squared_is_FE(seed):
    M = h.su3_model(2, 1)
    g = h.random_sl3(M.Fq, np.random.default_rng(seed))
    assert h.su3_check_sigma_squared(M, g)


@settings(max_examples=5)
@given(seeds)
def test_conjugated_form_gives_same_count(seed):
    # an isomorphic Hermitian structure has the same number of F_q points
    rng = np.random.default_rng(seed)
    M0 = h.su3_model(2, 1)
    M = h.su3_model(2, 1, h.conjugated_form(M0.Fq, 1, rng))
    assert len(enumerate_points(M, 1)) == 9
    assert len(enumerate_points(M, 3)) == 9 + 72


def test_relation_constant_is_one(model):
    ps = enumerate_points(model, 4)
    pts = ps.columns(4)
    a, root, holds = h.su3_relation_check(model, ps.field, pts)
    assert int(a) == 1 and root and holds


def test_relation_exponent_and_degrees(model):
    assert model.relation_exponent() == 2 ** 3 * (4 - 1)
    assert model.cleared_degree() == 165
    assert model.curve_degree() == 3
    assert h.su3_model(3, 1).cleared_degree() == 2440


def test_degenerate_m0():
    M = h.su3_model(2, 0)
    assert M.degenerate
    with pytest.raises(ValueError):
        M.field(1)


def test_bad_parameters():
    with pytest.raises(ValueError):
        h.su3_model(5, 1)
    with pytest.raises(ValueError):
        h.su3_F(h.su3_model(2, 1), [0, 1, 1], 4)
