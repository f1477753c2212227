"""Hot kernels with a numba implementation and a pure-numpy fallback.

The backend is chosen once at import from the environment variable
DLCURVES_BACKEND ("numba" or "numpy"; default "numba" when numba imports).
Both backends return identical results; tests run each against the other.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
    from numba import njit, prange
    if "NUMBA_THREADING_LAYER" not in os.environ:
        numba.config.THREADING_LAYER = "workqueue"
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_requested = os.environ.get("DLCURVES_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(f"DLCURVES_BACKEND must be 'numba' or 'numpy', got {_requested!r}")
BACKEND = "numba" if (_requested == "numba" and HAVE_NUMBA) else "numpy"

__all__ = ["BACKEND", "batched_rank_modp", "table_mul", "set_threads"]


def set_threads(n):
    if n and BACKEND == "numba":
        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


# ---------------------------------------------------------------------------
# batched rank of small matrices over GF(p)


def _rank_numpy(M, p):
    M = np.array(M, dtype=np.int64) % p
    B, r, c = M.shape
    inv = np.array([0] + [pow(i, -1, p) for i in range(1, p)], dtype=np.int64)
    rank = np.zeros(B, dtype=np.int64)
    idx = np.arange(B)
    rows = np.arange(r)
    for col in range(c):
        active = rows[None, :] >= rank[:, None]
        cand = (M[:, :, col] != 0) & active
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        sel = idx[has]
        pr = piv[has]
        tr = rank[has]
        # swap pivot row into position rank
        a = M[sel, pr].copy()
        M[sel, pr] = M[sel, tr]
        M[sel, tr] = a
        prow = (M[sel, tr] * inv[M[sel, tr, col]][:, None]) % p
        M[sel, tr] = prow
        f = M[sel, :, col].copy()
        f[np.arange(len(sel)), tr] = 0
        M[sel] = (M[sel] - f[:, :, None] * prow[:, None, :]) % p
        rank[has] += 1
    return rank


if HAVE_NUMBA:

    @njit(cache=True, parallel=True)
    def _rank_numba(M, p):  # pragma: no cover - compiled
        B, r, c = M.shape
        out = np.zeros(B, dtype=np.int64)
        inv = np.zeros(p, dtype=np.int64)
        for i in range(1, p):
            for j in range(1, p):
                if (i * j) % p == 1:
                    inv[i] = j
        for b in prange(B):
            A = M[b].copy()
            for i in range(r):
                for j in range(c):
                    A[i, j] %= p
            rk = 0
            for col in range(c):
                piv = -1
                for i in range(rk, r):
                    if A[i, col] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != rk:
                    for j in range(c):
                        t = A[piv, j]
                        A[piv, j] = A[rk, j]
                        A[rk, j] = t
                s = inv[A[rk, col]]
                for j in range(c):
                    A[rk, j] = (A[rk, j] * s) % p
                for i in range(rk + 1, r):
                    f = A[i, col]
                    if f != 0:
                        for j in range(col, c):
                            A[i, j] = (A[i, j] - f * A[rk, j]) % p
                rk += 1
                if rk == r:
                    break
            out[b] = rk
        return out

    @njit(cache=True, parallel=True)
    def _table_mul_numba(a, b, log, exp):  # pragma: no cover - compiled
        out = np.empty(a.size, dtype=np.int64)
        af = a.ravel()
        bf = b.ravel()
        for i in prange(a.size):
            x = af[i]
            y = bf[i]
            if x == 0 or y == 0:
                out[i] = 0
            else:
                out[i] = exp[log[x] + log[y]]
        return out.reshape(a.shape)


def batched_rank_modp(M, p, backend=None):
    """Ranks over GF(p) of a stack of matrices (B, rows, cols) with integer entries."""
    M = np.ascontiguousarray(M, dtype=np.int64)
    if M.ndim != 3:
        raise ValueError("expected a (B, rows, cols) stack")
    if M.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    be = backend or BACKEND
    if be == "numba" and HAVE_NUMBA:
        return _rank_numba(M, p)
    return _rank_numpy(M, p)


def table_mul(a, b, log, exp, backend=None):
    """Elementwise product of field codes through log/exp tables."""
    be = backend or BACKEND
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if be == "numba" and HAVE_NUMBA and a.shape == b.shape and a.size >= 4096:
        return _table_mul_numba(np.ascontiguousarray(a), np.ascontiguousarray(b), log, exp)
    r = exp[log[a] + log[b]]
    return np.where((a == 0) | (b == 0), 0, r)
