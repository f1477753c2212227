import numpy as np
import pytest
from hypothesis import given, strategies as st

from dlcurves import gf

FIELDS = [(2, 1), (2, 2), (2, 3), (2, 5), (3, 1), (3, 2), (3, 3), (2, 8), (3, 7)]


def field_and_codes(n=3):
    return st.sampled_from(FIELDS).flatmap(
        lambda pk: st.tuples(st.just(gf.mk_field(*pk)),
                             *[st.integers(0, pk[0] ** pk[1] - 1) for _ in range(n)]))


def elem(F, c):
    return F.elements[c]


# -- frozen values ---------------------------------------------------------


def test_default_moduli():
    assert gf.least_irreducible(2, 2) == (1, 1, 1)
    assert gf.least_irreducible(2, 3) == (1, 1, 0, 1)
    assert gf.least_irreducible(3, 2) == (1, 0, 1)
    assert gf.least_irreducible(3, 7) == (2, 0, 1, 0, 0, 0, 0, 1)


def test_gf4_table():
    F = gf.mk_field(2, 2)
    table = [[int(F.mul(a, b)) for b in range(4)] for a in range(4)]
    assert table == [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]
    assert [int(F.frob(a)) for a in range(4)] == [0, 1, 3, 2]


def test_gf9_packed_codes():
    F = gf.mk_field(3, 2)
    assert F.elements.tolist() == [0, 1, 2, 4, 5, 6, 8, 9, 10]
    x = F.from_coeffs([0, 1])
    assert int(x) == 4
    assert int(F.mul(x, x)) == 2  # x^2 = -1


def test_primitive_orders():
    F = gf.mk_field(3, 7)
    orders = [int(F.element_order(c)) for c in F.elements[1:]]
    assert max(orders) == 2186
    assert all(2186 % o == 0 for o in orders)
    assert sum(o == 2186 for o in orders) == 1092  # phi(2 * 1093)


def test_reducible_modulus_rejected():
    with pytest.raises(gf.ReducibleModulus):
        gf.mk_field(2, 2, (1, 0, 1))


# -- field axioms -----------------------------------------------------------


@given(field_and_codes(3))
def test_ring_axioms(args):
    F, a, b, c = args
    a, b, c = (elem(F, x) for x in (a, b, c))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a


@given(field_and_codes(1))
def test_inverse_and_fermat(args):
    F, a = args
    a = elem(F, a)
    assert F.pow(a, F.order) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(field_and_codes(2))
def test_frobenius_is_additive_and_multiplicative(args):
    F, a, b = args
    a, b = elem(F, a), elem(F, b)
    assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
    assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
    assert F.frob(a) == F.pow(a, F.p)
    assert F.frob(a, F.k) == a


@given(field_and_codes(1))
def test_subfield_membership(args):
    F, a = args
    a = elem(F, a)
    for j in range(1, F.k + 1):
        if F.k % j == 0:
            assert bool(F.in_subfield(a, j)) == (F.frob(a, j) == a)


def test_prime_codes_are_prime_subfield():
    for p, k in FIELDS:
        F = gf.mk_field(p, k)
        for i in range(p):
            for j in range(p):
                assert F.add(i, j) == (i + j) % p
                assert F.mul(i, j) == (i * j) % p


# -- linear algebra -----------------------------------------------------------


@given(st.sampled_from([(2, 2), (3, 2), (2, 3)]), st.integers(1, 5), st.integers(1, 5),
       st.integers(0, 2 ** 31))
def test_rank_nullity(pk, r, c, seed):
    F = gf.mk_field(*pk)
    M = F.random(np.random.default_rng(seed), size=(r, c))
    N = gf.nullspace(F, M)
    assert gf.rank(F, M) + len(N) == c
    for v in N:
        assert not np.any(gf.mat_mul(F, M, np.asarray(v)))


@given(st.sampled_from([(2, 3), (3, 1), (3, 2)]), st.integers(1, 4), st.integers(0, 2 ** 31))
def test_inverse_and_det(pk, n, seed):
    F = gf.mk_field(*pk)
    rng = np.random.default_rng(seed)
    M = F.random(rng, size=(n, n))
    d = int(gf.det(F, M))
    if d == 0:
        assert gf.rank(F, M) < n
        return
    Minv = gf.mat_inv(F, M)
    assert np.array_equal(gf.mat_mul(F, M, Minv), np.eye(n, dtype=np.int64))
    b = F.random(rng, size=n)
    x = gf.solve(F, M, b)
    assert np.array_equal(gf.mat_mul(F, M, x), b)
