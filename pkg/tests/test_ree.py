import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dlcurves import gf, ree
from dlcurves.dlcore.enumerate import enumerate_points, sample_points

seeds = st.integers(0, 2 ** 31)
fields = st.sampled_from([1, 2, 3]).map(lambda k: gf.mk_field(3, k))


@pytest.fixture(scope="module")
def m0():
    return ree.ree_model(0)


@pytest.fixture(scope="module")
def m0_points(m0):
    return enumerate_points(m0, 1, "vscan")


def test_structure_constants_frozen():
    c = ree.STRUCT
    assert c[0, 1, 3] == 1 and c[1, 0, 3] == 2
    assert c[1, 3, 0] == 1 and c[3, 0, 1] == 1
    assert int((c != 0).sum()) == 42


def test_derivations_have_dim_14():
    assert ree.derivations_check().shape == (14, 49)
    D = ree.derivations()
    assert len(D.W) == 14 and len(D.Wperp) == 7


@given(fields, seeds)
def test_composition_identity(F, seed):
    rng = np.random.default_rng(seed)
    alg = ree.octonion_algebra(F)
    x, y = F.random(rng, size=7), F.random(rng, size=7)
    lhs = alg.mul(x, alg.mul(x, y))
    rhs = F.sub(F.mul(alg.pair(x, x), y), F.mul(alg.pair(x, y), x))
    assert np.array_equal(lhs, rhs)


@given(fields, seeds)
def test_jacobi(F, seed):
    rng = np.random.default_rng(seed)
    alg = ree.octonion_algebra(F)
    assert alg.jacobi_ok(*(F.random(rng, size=7) for _ in range(3)))


@settings(max_examples=25)
@given(fields, seeds)
def test_isotropic_kernel_and_exp(F, seed):
    rng = np.random.default_rng(seed)
    alg = ree.octonion_algebra(F)
    x = alg.random_isotropic(rng)
    K = alg.ker_ad(x)
    assert len(K) == 3
    assert all(int(alg.pair(a, b)) == 0 for a in K for b in K)
    assert alg.is_automorphism(alg.exp_auto(x))


@settings(max_examples=20)
@given(seeds)
def test_commutator_terms(seed):
    F = gf.mk_field(3, 1)
    rng = np.random.default_rng(seed)
    alg = ree.octonion_algebra(F)
    a, b = ree.commutator_check(alg, alg.random_isotropic(rng), ree.random_derivation(F, rng))
    assert a and b


@settings(max_examples=10)
@given(seeds)
def test_rho_is_multiplicative_mod_inner(seed):
    F = gf.mk_field(3, 1)
    rng = np.random.default_rng(seed)
    alg = ree.octonion_algebra(F)
    D = ree.derivations()
    x, y = alg.random_isotropic(rng), alg.random_isotropic(rng)
    assert np.array_equal(D.rho_extended(F, alg.mul(x, y)),
                          alg.mul(D.rho_extended(F, x), D.rho_extended(F, y)))


@settings(max_examples=10)
@given(seeds, st.sampled_from([0, 1]))
def test_sigma_squared_is_FE(seed, m):
    M = ree.ree_model(m)
    F = M.field(1)
    rng = np.random.default_rng(seed)
    alg = ree.octonion_algebra(F)
    g = alg.exp_auto(alg.random_isotropic(rng))
    assert np.array_equal(M.sigma(F, M.sigma(F, g)), M.FE(F, g))


def test_m0_points(m0, m0_points):
    F = m0_points.field
    W = m0_points.columns()
    assert len(m0_points) == 28
    assert m0_points.keys() == enumerate_points(m0, 1, "ambient").keys()
    assert all(ree.ree_membership(m0, w, F) for w in m0_points.coords)
    assert all(ree.ree_membership(m0, m0.lam2(F, w), F) for w in m0_points.coords[:5])
    assert np.all(ree.ree_P1(m0, F, W) == 0)
    for k in (1, 2, 3):
        assert np.all(ree.ree_F(m0, F, W, k) == 0)
    assert ree.rho_flag_check(m0, F, W).all()


def test_m0_parameters(m0):
    assert (m0.q_minus, m0.q_plus) == (1, 7)
    assert m0.curve_degree() == 28
    assert m0.cleared_degree() == 544
    assert m0.relation_exponent() == 27 * 2


def test_m0_no_new_points_over_F9(m0):
    assert enumerate_points(m0, 2, "vscan").count_by_degree() == {1: 28, 2: 0}


def test_m1_sampled_points():
    M = ree.ree_model(1)
    pts, stats = sample_points(M, 1, 2 * 10 ** 5, seed=3)
    assert stats["trials"] == 2 * 10 ** 5
    assert pts.shape[1] >= 1
    F = M.field(1)
    assert M.is_member(F, pts).all()
    assert np.all(ree.ree_P1(M, F, pts) == 0)
    assert {ree.ree_tangent_dim(M, F, w) for w in pts.T} == {1}


def test_bad_inputs(m0):
    F = m0.field(1)
    with pytest.raises(ValueError):
        ree.ree_membership(m0, np.zeros(14, dtype=np.int64), F)
    with pytest.raises(ValueError):
        ree.ree_F(m0, F, np.ones(14, dtype=np.int64), 6)
