import numpy as np
from hypothesis import given, strategies as st

from dlcurves import _accel, gf


@given(st.sampled_from([2, 3]), st.integers(0, 40), st.integers(1, 9), st.integers(1, 9),
       st.integers(0, 2 ** 31))
def test_rank_backends_agree(p, B, r, c, seed):
    M = np.random.default_rng(seed).integers(0, p, size=(B, r, c))
    a = _accel.batched_rank_modp(M, p, backend="numpy")
    b = _accel.batched_rank_modp(M, p, backend="numba")
    assert np.array_equal(a, b)
    F = gf.mk_field(p, 1)
    for i in range(min(B, 3)):
        assert a[i] == gf.rank(F, M[i])


@given(st.sampled_from([(2, 8), (3, 5)]), st.integers(0, 2 ** 31))
def test_table_mul_backends_agree(pk, seed):
    F = gf.mk_field(*pk)
    rng = np.random.default_rng(seed)
    a, b = F.random(rng, size=5000), F.random(rng, size=5000)
    x = _accel.table_mul(a, b, F._log, F._exp, backend="numpy")
    y = _accel.table_mul(a, b, F._log, F._exp, backend="numba")
    assert np.array_equal(x, y)


def test_backend_selected():
    assert _accel.BACKEND in ("numba", "numpy")
