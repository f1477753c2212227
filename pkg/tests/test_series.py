import numpy as np
import pytest
from hypothesis import given, strategies as st

from dlcurves import gf
from dlcurves.dlcore.series import DualRing, SeriesRing, constant_codes, pow_by_frobenius

seeds = st.integers(0, 2 ** 31)
fields = st.sampled_from([(2, 1), (2, 3), (3, 1), (3, 2), (2, 6), (3, 3)]).map(lambda pk: gf.mk_field(*pk))


def naive_mul(F, a, b, L):
    out = np.zeros(L, dtype=np.int64)
    for i in range(L):
        for j in range(L - i):
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]))
    return out


def rand_series(F, rng, L, unit=False):
    c = F.random(rng, size=L)
    if unit:
        c[0] = F.random(rng, nonzero=True)
    return c


@given(fields, st.integers(1, 40), seeds)
def test_mul_matches_schoolbook(F, L, seed):
    rng = np.random.default_rng(seed)
    R = SeriesRing(F, L)
    a, b = rand_series(F, rng, L), rand_series(F, rng, L)
    got = R.codes(R.mul(R.from_codes(a), R.from_codes(b)))
    assert np.array_equal(got, naive_mul(F, a, b, L))


@given(fields, st.integers(1, 40), seeds)
def test_inverse(F, L, seed):
    rng = np.random.default_rng(seed)
    R = SeriesRing(F, L)
    a = R.from_codes(rand_series(F, rng, L, unit=True))
    one = np.zeros(L, dtype=np.int64)
    one[0] = 1
    assert np.array_equal(R.codes(R.mul(a, R.inv(a))), one)


@given(fields, st.integers(1, 30), seeds, st.integers(0, 3))
def test_frobenius_is_pth_power(F, L, seed, s):
    rng = np.random.default_rng(seed)
    R = SeriesRing(F, L)
    a = R.from_codes(rand_series(F, rng, L))
    want = a
    for _ in range(s):
        want = pow_by_frobenius(R, want, F.p)
    assert np.array_equal(R.codes(R.frob(a, s)), R.codes(want))


@given(fields, seeds, st.integers(0, 60))
def test_pow_matches_repeated_mul(F, seed, e):
    rng = np.random.default_rng(seed)
    R = SeriesRing(F, 12)
    a = R.from_codes(rand_series(F, rng, 12))
    want = R.const(np.ones((), dtype=np.int64))
    for _ in range(e):
        want = R.mul(want, a)
    assert np.array_equal(R.codes(R.pow(a, e)), R.codes(want))


def test_valuation_and_constant():
    F = gf.mk_field(3, 2)
    R = SeriesRing(F, 10)
    a = R.monomial(4, 3)
    assert R.valuation(a) == 3
    assert int(constant_codes(R, a)) == 0
    assert R.valuation(R.zeros()) >= 10


@given(fields, st.integers(1, 4), seeds)
def test_mat_inv_and_matmul(F, n, seed):
    rng = np.random.default_rng(seed)
    L = 16
    R = SeriesRing(F, L)
    while True:
        A0 = F.random(rng, size=(n, n))
        if int(gf.det(F, A0)):
            break
    codes = F.random(rng, size=(n, n, L))
    codes[..., 0] = A0
    A = R.from_codes(codes)
    I = np.zeros((n, n, L), dtype=np.int64)
    I[np.arange(n), np.arange(n), 0] = 1
    assert np.array_equal(R.codes(R.matmul(A, R.mat_inv(A))), I)


@given(fields, seeds)
def test_dual_numbers_give_derivative(F, seed):
    # d/de (x + e)^3 = 3 x^2
    rng = np.random.default_rng(seed)
    D = DualRing(F)
    x = F.random(rng)
    v = D.make(np.array(x), np.array(1))
    cube = D.mul(D.mul(v, v), v)
    assert int(D.part(cube, 0)) == int(F.pow(x, 3))
    assert int(D.part(cube, 1)) == int(F.cmul(3 % F.p, F.mul(x, x)))


def test_rejects_bad_length():
    with pytest.raises(ValueError):
        SeriesRing(gf.mk_field(2, 1), 0)
