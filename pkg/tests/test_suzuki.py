import numpy as np
import pytest
from hypothesis import given, strategies as st

from dlcurves import gf, suzuki as s
from dlcurves.dlcore.enumerate import enumerate_points
from dlcurves.exterior import bilinear

seeds = st.integers(0, 2 ** 31)


@pytest.fixture(scope="module")
def m0():
    return s.sz_model(0)


@pytest.fixture(scope="module")
def m1():
    return s.sz_model(1)


def test_frozen_m0_Fq_points(m0):
    ps = enumerate_points(m0, 1)
    assert len(ps) == 5
    for w in ps.coords:
        assert s.sz_membership(m0, w, ps.field)
        assert s.sz_membership(m0, s.to_lambda2(ps.field, w), ps.field)


def test_lambda2_round_trip(rng):
    F = gf.mk_field(2, 3)
    for _ in range(20):
        w = F.random(rng, size=5)
        a = s.to_lambda2(F, w)
        assert int(a[1]) == int(a[4])  # pairs to zero with omega
        assert np.array_equal(s.from_lambda2(F, a), w)
    with pytest.raises(ValueError):
        s.from_lambda2(F, np.array([0, 1, 0, 0, 0, 0]))


@given(seeds)
def test_random_symplectic_preserves_form(seed):
    F = gf.mk_field(2, 3)
    rng = np.random.default_rng(seed)
    g = s.random_symplectic(F, rng)
    x, y = F.random(rng, size=4), F.random(rng, size=4)
    assert int(bilinear(F, s.GRAM, gf.mat_mul(F, g, x), gf.mat_mul(F, g, y))) == \
        int(bilinear(F, s.GRAM, x, y))


@given(seeds, st.sampled_from([0, 1]))
def test_sigma_squared_is_FE(seed, m):
    M = s.sz_model(m)
    F = M.field(1)
    g = s.random_symplectic(F, np.random.default_rng(seed))
    assert np.array_equal(M.sigma(F, M.sigma(F, g)), M.FE(F, g))


@given(seeds)
def test_prime_is_functorial(seed):
    F = gf.mk_field(2, 3)
    rng = np.random.default_rng(seed)
    g, h = s.random_symplectic(F, rng), s.random_symplectic(F, rng)
    assert np.array_equal(s.prime_of(F, gf.mat_mul(F, g, h)),
                          gf.mat_mul(F, s.prime_of(F, g), s.prime_of(F, h)))


def test_rho_kills_omega_and_is_bilinear(rng):
    F = gf.mk_field(2, 3)
    for _ in range(20):
        a = s.to_lambda2(F, F.random(rng, size=5))
        b = s.to_lambda2(F, F.random(rng, size=5))
        v = F.random(rng, size=4)
        assert int(s.sz_rho_pair(F, s.OMEGA, a, v)) == 0
        ab = F.add(a, b)
        assert int(s.sz_rho_pair(F, ab, ab, v)) == int(F.add(
            F.add(s.sz_rho_pair(F, a, a, v), s.sz_rho_pair(F, b, b, v)),
            F.add(s.sz_rho_pair(F, a, b, v), s.sz_rho_pair(F, b, a, v))))


def test_m0_relation_and_chain(m0):
    ps = enumerate_points(m0, 5)
    pts = ps.columns(5)
    assert pts.shape[1] == 20
    c, const, holds = s.sz_relation_check(m0, ps.field, pts)
    assert int(c) == 1 and const and holds
    assert s.sz_chain_identity(m0, ps.field, pts).all()


def test_m1_counts_and_tangent(m1):
    ps = enumerate_points(m1, 1, "vscan")
    assert len(ps) == 65
    F = ps.field
    assert {s.sz_tangent_dim(m1, F, w) for w in ps.coords[:10]} == {1}
    assert np.all(m1.F_poly(F, ps.columns(), 1) == 0)


def test_tangent_refused_at_m0(m0):
    F = m0.field(1)
    w = enumerate_points(m0, 1).coords[0]
    with pytest.raises(NotImplementedError):
        s.sz_tangent_dim(m0, F, w)
    assert s.sz_tangent_dim(m0, F, w, allow_degenerate=True) == 1


def test_vscan_matches_ambient_m0(m0):
    for n in (1, 3, 4):
        assert enumerate_points(m0, n, "vscan").keys() == enumerate_points(m0, n, "ambient").keys()


def test_degrees(m0, m1):
    assert m0.cleared_degree() == 27 and m0.curve_degree() == 5
    assert m1.curve_degree() == 13
