"""Vectors, exterior squares and semilinear maps over a coefficient ring.

Coordinates always sit on the *first* axis: a vector of length n is an
array of shape (n, *batch, *tail), where ``tail`` is the ring's own element
shape (empty for a FieldCtx, (k, L) for truncated power series).  Every
routine here only touches the ring through ``add``, ``sub``, ``neg``,
``mul``, ``cmul`` and ``frob``, so the same formulas evaluate points over a
finite field, branches over a power-series ring, and first-order
perturbations over a dual-number ring.

Two-forms use the lexicographic basis e_i^e_j (i < j); three-forms the
lexicographic basis e_i^e_j^e_k.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from . import gf

__all__ = [
    "pairs",
    "triples",
    "pair_index",
    "wedge2",
    "wedge21",
    "wedge22",
    "contract",
    "bilinear",
    "top_pair",
    "plucker_quadrics",
    "plucker_rank2",
    "induced_lambda2",
    "matvec",
    "SemilinearMap",
    "basis_vector",
]


@functools.lru_cache(maxsize=None)
def pairs(n):
    return tuple(itertools.combinations(range(n), 2))


@functools.lru_cache(maxsize=None)
def triples(n):
    return tuple(itertools.combinations(range(n), 3))


@functools.lru_cache(maxsize=None)
def pair_index(n):
    """Map (i, j) -> (position, sign) for any i != j."""
    out = {}
    for t, (i, j) in enumerate(pairs(n)):
        out[(i, j)] = (t, 1)
        out[(j, i)] = (t, -1)
    return out


def n_from_pairs(npairs):
    n = int(round((1 + (1 + 8 * npairs) ** 0.5) / 2))
    if n * (n - 1) // 2 != npairs:
        raise ValueError(f"{npairs} is not a binomial coefficient C(n, 2)")
    return n


def _signed(R, sign, x):
    return x if sign > 0 else R.neg(x)


def wedge2(R, u, v):
    """u ^ v; coordinates u_i v_j - u_j v_i."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape[0] != v.shape[0]:
        raise ValueError("wedge2: length mismatch")
    n = u.shape[0]
    return np.stack([R.sub(R.mul(u[i], v[j]), R.mul(u[j], v[i])) for i, j in pairs(n)])


def wedge21(R, a, v):
    """(two-form a) ^ v as a three-form."""
    a = np.asarray(a)
    v = np.asarray(v)
    n = v.shape[0]
    if a.shape[0] != n * (n - 1) // 2:
        raise ValueError("wedge21: dimension mismatch")
    idx = pair_index(n)
    out = []
    for i, j, k in triples(n):
        t = R.mul(a[idx[(i, j)][0]], v[k])
        t = R.sub(t, R.mul(a[idx[(i, k)][0]], v[j]))
        t = R.add(t, R.mul(a[idx[(j, k)][0]], v[i]))
        out.append(t)
    return np.stack(out)


def wedge22(R, a, b):
    """a ^ b for two-forms in dimension 4, as the coefficient of e0^e1^e2^e3."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[0] != 6 or b.shape[0] != 6:
        raise ValueError("wedge22 needs dimension 4")
    # basis order (01, 02, 03, 12, 13, 23)
    t = R.mul(a[0], b[5])
    t = R.sub(t, R.mul(a[1], b[4]))
    t = R.add(t, R.mul(a[2], b[3]))
    t = R.add(t, R.mul(a[3], b[2]))
    t = R.sub(t, R.mul(a[4], b[1]))
    t = R.add(t, R.mul(a[5], b[0]))
    return t


def top_pair(R, a, b, mu=1):
    """<a, b> = (a ^ b) / mu in dimension 4.

    ``mu`` is the coordinate of the volume form on e0^e1^e2^e3 (a field code);
    with a symplectic basis ordered (e0, e1, f0, f1) the canonical volume form
    is the basis 4-vector itself, so mu = 1.
    """
    if mu is None:
        raise ValueError("no volume form set")
    val = wedge22(R, a, b)
    if mu == 1:
        return val
    F = R.field
    return R.cmul(F.inv(mu), val)


def bilinear(R, G, x, y):
    """x^T G y for a constant matrix G (field codes)."""
    G = np.asarray(G, dtype=np.int64)
    x = np.asarray(x)
    y = np.asarray(y)
    acc = None
    for i in range(G.shape[0]):
        for j in range(G.shape[1]):
            g = int(G[i, j])
            if g == 0:
                continue
            t = R.mul(x[i], y[j])
            if g != 1:
                t = R.cmul(g, t)
            acc = t if acc is None else R.add(acc, t)
    if acc is None:
        return R.zeros_like(x[0])
    return acc


def _covector(R, G, v):
    """g_i = <v, e_i> = sum_k v_k G[k, i]."""
    G = np.asarray(G, dtype=np.int64)
    out = []
    for i in range(G.shape[1]):
        acc = None
        for k in range(G.shape[0]):
            g = int(G[k, i])
            if g == 0:
                continue
            t = v[k] if g == 1 else R.cmul(g, v[k])
            acc = t if acc is None else R.add(acc, t)
        out.append(acc if acc is not None else R.zeros_like(v[0]))
    return out


def contract(R, v, a, G):
    """i_v(a): the linear extension of i_v(x ^ y) = <v,x> y - <v,y> x.

    G is the Gram matrix of the bilinear form on V (<x, y> = x^T G y).
    """
    v = np.asarray(v)
    a = np.asarray(a)
    n = v.shape[0]
    if a.shape[0] != n * (n - 1) // 2:
        raise ValueError("contract: dimension mismatch")
    g = _covector(R, G, v)
    out = [R.zeros_like(v[0]) for _ in range(n)]
    for t, (i, j) in enumerate(pairs(n)):
        # a_ij (g_i e_j - g_j e_i)
        out[j] = R.add(out[j], R.mul(a[t], g[i]))
        out[i] = R.sub(out[i], R.mul(a[t], g[j]))
    return np.stack(out)


def plucker_quadrics(R, a):
    """All three-term Plucker relations p_ij p_kl - p_ik p_jl + p_il p_jk."""
    a = np.asarray(a)
    n = n_from_pairs(a.shape[0])
    idx = pair_index(n)
    out = []
    for i, j, k, l in itertools.combinations(range(n), 4):
        t = R.mul(a[idx[(i, j)][0]], a[idx[(k, l)][0]])
        t = R.sub(t, R.mul(a[idx[(i, k)][0]], a[idx[(j, l)][0]]))
        t = R.add(t, R.mul(a[idx[(i, l)][0]], a[idx[(j, k)][0]]))
        out.append(t)
    if not out:
        return np.zeros((0,) + a.shape[1:], dtype=np.int64)
    return np.stack(out)


def plucker_rank2(F, a):
    """True where the two-form is decomposable (all Plucker quadrics vanish).

    Works over a FieldCtx on a batch; the zero form counts as decomposable.
    """
    q = plucker_quadrics(F, a)
    if q.shape[0] == 0:
        return np.ones(np.asarray(a).shape[1:], dtype=bool)
    return np.all(q == 0, axis=0)


def induced_lambda2(F, A):
    """Matrix of Lambda^2 A on the lexicographic basis: A_ik A_jl - A_il A_jk."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    P = pairs(n)
    out = np.zeros((len(P), len(P)), dtype=np.int64)
    for r, (i, j) in enumerate(P):
        for c, (k, l) in enumerate(P):
            out[r, c] = F.sub(F.mul(A[i, k], A[j, l]), F.mul(A[i, l], A[j, k]))
    return out


def matvec(R, A, x):
    """A x for a constant matrix A (field codes) and a ring-valued vector x."""
    A = np.asarray(A, dtype=np.int64)
    x = np.asarray(x)
    if A.shape[1] != x.shape[0]:
        raise ValueError(f"matvec: {A.shape} against vector of length {x.shape[0]}")
    rows = []
    for i in range(A.shape[0]):
        acc = None
        for j in range(A.shape[1]):
            c = int(A[i, j])
            if c == 0:
                continue
            t = x[j] if c == 1 else R.cmul(c, x[j])
            acc = t if acc is None else R.add(acc, t)
        rows.append(acc if acc is not None else R.zeros_like(x[0]))
    return np.stack(rows)


def basis_vector(n, i, batch=()):
    v = np.zeros((n,) + tuple(batch), dtype=np.int64)
    v[i] = 1
    return v


class SemilinearMap:
    """x -> A . phi^s(x) with A a constant matrix over ``field``.

    ``s`` counts powers of the absolute Frobenius x -> x^p.  Composition
    follows (A, s) o (B, t) = (A . phi^s(B), s + t).
    """

    def __init__(self, field, A, s=0):
        A = np.array(A, dtype=np.int64)
        if A.ndim != 2:
            raise ValueError("matrix required")
        if s < 0:
            raise ValueError("Frobenius exponent must be non-negative")
        self.field = field
        self.A = A
        self.A.setflags(write=False)
        self.s = int(s)

    @property
    def n_in(self):
        return self.A.shape[1]

    @property
    def n_out(self):
        return self.A.shape[0]

    def apply(self, x, ring=None):
        R = ring if ring is not None else self.field
        x = np.asarray(x)
        if x.shape[0] != self.n_in:
            raise ValueError(f"map expects length {self.n_in}, got {x.shape[0]}")
        if self.s:
            x = R.frob(x, self.s)
        return matvec(R, self.A, x)

    __call__ = apply

    def compose(self, other):
        """self o other."""
        if self.n_in != other.n_out:
            raise ValueError("dimension mismatch in composition")
        F = self._common(other)
        A = gf.mat_mul(F, self._over(F).A, F.frob(other._over(F).A, self.s))
        return SemilinearMap(F, A, self.s + other.s)

    def __matmul__(self, other):
        return self.compose(other)

    def _common(self, other):
        a, b = self.field, other.field
        if a is b:
            return a
        return a if a.k % b.k == 0 and a.k >= b.k else b

    def _over(self, F):
        if F is self.field:
            return self
        return self.over(F)

    def over(self, target):
        """Same map with matrix entries embedded in ``target``."""
        if target is self.field:
            return self
        A = gf.embed(self.A, self.field, target)
        return SemilinearMap(target, A, self.s)

    def induced_lambda2(self):
        return SemilinearMap(self.field, induced_lambda2(self.field, self.A), self.s)

    def invertible(self):
        n = self.A.shape[0]
        return self.A.shape == (n, n) and gf.rank(self.field, self.A) == n

    def power(self, k):
        out = SemilinearMap(self.field, np.eye(self.n_in, dtype=np.int64), 0)
        for _ in range(k):
            out = self.compose(out)
        return out

    def __eq__(self, other):
        if not isinstance(other, SemilinearMap):
            return NotImplemented
        return (self.s == other.s and self.field is other.field
                and np.array_equal(self.A, other.A))

    def __hash__(self):
        return hash((self.s, self.A.tobytes()))

    def __repr__(self):
        return f"SemilinearMap({self.field.label}, n={self.n_in}, s={self.s})"
