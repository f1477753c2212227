"""The 2B2 family: symplectic 4-space in characteristic 2.

V has the symplectic basis (e0, e1, f0, f1) (indices 0..3) with
<e_i, f_j> = delta_ij, and omega = e0^f0 + e1^f1.  W = omega^perp inside
Lambda^2 V is 5-dimensional; points use the W basis
(e0^e1, e0^f1, f0^f1, e1^f0, omega), and the first four coordinates are the
class in V' = W/<omega>, whose basis is symplectic for the pairing
<a, b> = a^b / mu with mu = e0^e1^f0^f1.

In these coordinates the default F : V' -> V is the identity matrix twisted
by phi^m, rho : V'' -> V is the identity twisted by phi^-1, and
FR = F o F' o rho^-1 is the coordinatewise q-th power map.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import gf
from .dlcore.model import CurveModel
from .exterior import (SemilinearMap, bilinear, contract, induced_lambda2, matvec,
                       plucker_quadrics, top_pair, wedge2, wedge21)

__all__ = [
    "GRAM",
    "SuzukiModel",
    "sz_model",
    "sz_membership",
    "sz_rho_pair",
    "sz_rho",
    "sz_P1",
    "sz_F",
    "sz_relation_check",
    "sz_tangent_dim",
    "sz_chain_identity",
    "random_symplectic",
    "to_lambda2",
    "vprime_class",
]

GRAM = np.zeros((4, 4), dtype=np.int64)
GRAM[0, 2] = GRAM[2, 0] = GRAM[1, 3] = GRAM[3, 1] = 1

OMEGA = np.array([0, 1, 0, 0, 1, 0], dtype=np.int64)  # e0^f0 + e1^f1

# Lambda^2 positions (01, 02, 03, 12, 13, 23) of the V' basis
# e0^e1, e0^f1, f0^f1, e1^f0
VPRIME_POS = np.array([0, 2, 5, 3])

# W coordinates -> Lambda^2 coordinates
_W_TO_L2 = np.zeros((6, 5), dtype=np.int64)
_W_TO_L2[0, 0] = 1
_W_TO_L2[2, 1] = 1
_W_TO_L2[5, 2] = 1
_W_TO_L2[3, 3] = 1
_W_TO_L2[1, 4] = 1
_W_TO_L2[4, 4] = 1

BASIS_NAMES = ("e0^e1", "e0^f1", "f0^f1", "e1^f0", "omega")


def to_lambda2(R, w):
    """W coordinates (5, ...) -> Lambda^2 V coordinates (6, ...)."""
    return matvec(R, _W_TO_L2, w)


def from_lambda2(F, a):
    """Lambda^2 coordinates of an element of W -> W coordinates; raises if not in W."""
    a = np.asarray(a, dtype=np.int64)
    if np.any(a[1] != a[4]):
        raise ValueError("two-form is not orthogonal to omega")
    return np.stack([a[0], a[2], a[5], a[3], a[1]])


def vprime_class(R, a):
    """Class in V' of an element of W given in Lambda^2 coordinates."""
    a = np.asarray(a)
    return a[VPRIME_POS]


def random_symplectic(F, rng, n_transvections=6):
    """Product of random symplectic transvections x -> x + c <x, v> v."""
    g = np.eye(4, dtype=np.int64)
    for _ in range(n_transvections):
        v = F.random(rng, size=4)
        c = int(F.random(rng))
        Gv = gf.mat_mul(F, GRAM, v)
        T = F.add(np.eye(4, dtype=np.int64), F.mul(c, F.mul(v[:, None], Gv[None, :])))
        g = gf.mat_mul(F, T, g)
    return g


def prime_of(F, g):
    """g' : the action of a symplectic g on V' = omega^perp / <omega>."""
    L2 = induced_lambda2(F, g)
    C = np.zeros((6, 4), dtype=np.int64)
    C[VPRIME_POS, np.arange(4)] = 1
    return gf.mat_mul(F, L2, C)[VPRIME_POS]


def default_F_matrix():
    """Least (lexicographic over basis assignments) pairing-compatible map V' -> V.

    Assignments send the V' basis to a permutation of (e0, e1, f0, f1); a
    matrix is compatible when it carries the V' Gram matrix to GRAM.
    """
    for perm in itertools.permutations(range(4)):
        A = np.zeros((4, 4), dtype=np.int64)
        A[list(perm), range(4)] = 1
        if np.array_equal((A.T @ GRAM @ A) % 2, GRAM):
            return A
    raise AssertionError("no pairing-compatible assignment")  # pragma: no cover


class SuzukiModel(CurveModel):
    family = "sz"
    p = 2
    a = 1
    d = 4
    dim = 5
    basis_names = BASIS_NAMES

    def __init__(self, m):
        if m < 0:
            raise ValueError("m must be non-negative")
        self.m = m
        self.degenerate = m == 0
        F2 = gf.mk_field(2, 1)
        self.A = default_F_matrix()
        self.F = SemilinearMap(F2, self.A, m)
        self.Fprime = SemilinearMap(F2, self.A, m)
        # rho : V'' -> V is phi^-1-linear; store its inverse V -> V''
        self.rho_inv = SemilinearMap(F2, np.eye(4, dtype=np.int64), 1)
        self.FR = self.F @ self.Fprime @ self.rho_inv
        self.fr_coordinatewise = bool(np.array_equal(self.FR.A, np.eye(4, dtype=np.int64)))

    # -- maps ------------------------------------------------------------------

    def apply_F(self, R, vp):
        """F on V' coordinates (4, ...)."""
        return matvec(R, self.A, R.frob(vp, self.m))

    def F_of_lambda2(self, R, a):
        return self.apply_F(R, vprime_class(R, a))

    def rho(self, F, X):
        """rho on V'' coordinates: the inverse Frobenius coordinatewise."""
        return F.frob(np.asarray(X, dtype=np.int64), -1)

    def equations(self, R, w):
        lam = to_lambda2(R, w)
        eqs = [plucker_quadrics(R, lam), wedge21(R, lam, self.F_of_lambda2(R, lam))]
        return np.concatenate(eqs, axis=0)

    def pairing(self, R, a, b):
        return top_pair(R, a, b)

    def F_poly(self, R, w, k):
        """<alpha, FR^k alpha>."""
        lam = to_lambda2(R, w)
        return top_pair(R, lam, self.fr(R, lam, k))

    # -- witnesses and P1 ---------------------------------------------------------

    def witness(self, F, w):
        """Deterministic aux vectors (c, d, u0) per point, each (4, *batch).

        w = i_c(alpha) needs <c, v> != 0 with v = F(alpha); u = <d,v>u0 - <u0,v>d
        must pair nontrivially with w (so u lies outside M).
        """
        w = np.asarray(w, dtype=np.int64)
        batch = w.shape[1:]
        lam = to_lambda2(F, w)
        v = self.F_of_lambda2(F, lam)
        E = np.eye(4, dtype=np.int64)
        c = np.zeros((4,) + batch, dtype=np.int64)
        have = np.zeros(batch, dtype=bool)
        for i in range(4):
            e = np.broadcast_to(E[i].reshape((4,) + (1,) * len(batch)), (4,) + batch)
            ok = (bilinear(F, GRAM, e, v) != 0) & ~have
            c = np.where(ok[None], e, c)
            have |= ok
        if not have.all():
            raise ValueError("degenerate point: F(alpha) = 0")
        ww = contract(F, c, lam, GRAM)
        d = np.zeros_like(c)
        u0 = np.zeros_like(c)
        have = np.zeros(batch, dtype=bool)
        for i, j in itertools.permutations(range(4), 2):
            ed = np.broadcast_to(E[i].reshape((4,) + (1,) * len(batch)), (4,) + batch)
            eu = np.broadcast_to(E[j].reshape((4,) + (1,) * len(batch)), (4,) + batch)
            u = self._u(F, v, ed, eu)
            ok = (bilinear(F, GRAM, u, ww) != 0) & ~have
            d = np.where(ok[None], ed, d)
            u0 = np.where(ok[None], eu, u0)
            have |= ok
        if not have.all():
            raise ValueError("no valid witness u")
        return c, d, u0

    def _u(self, R, v, d, u0):
        return R.sub(R.mul(bilinear(R, GRAM, d, v)[None], u0),
                     R.mul(bilinear(R, GRAM, u0, v)[None], d))

    def P1(self, R, w, aux):
        """(alpha/v^w)^(q-2q0+1) (F(v^u)^alpha / u^alpha) <u,w>^(1-q0) (F(v^w)/v)^(2q0-1)."""
        q, q0 = self.q, self.q0
        c, d, u0 = (R.const(x) for x in aux)
        lam = to_lambda2(R, w)
        v = self.F_of_lambda2(R, lam)
        ww = contract(R, c, lam, GRAM)
        vw = wedge2(R, v, ww)
        t1 = R.ratio(lam, vw)
        u = self._u(R, v, d, u0)
        Fvu = self.F_of_lambda2(R, wedge2(R, v, u))
        t2 = R.ratio(wedge21(R, lam, Fvu), wedge21(R, lam, u))
        t3 = R.pow(bilinear(R, GRAM, u, ww), 1 - q0)
        t4 = R.pow(R.ratio(self.F_of_lambda2(R, vw), v), 2 * q0 - 1)
        out = R.mul(R.pow(t1, q - 2 * q0 + 1), t2)
        return R.mul(out, R.mul(t3, t4))

    def relation_exponent(self):
        return self.q ** 2 * (self.q - 1)

    def relation_terms(self, R, w, aux):
        """(P1^E, P4^(q-2q0+1), P5)."""
        q, q0 = self.q, self.q0
        G2 = self.F_poly(R, w, 2)
        G3 = self.F_poly(R, w, 3)
        G4 = self.F_poly(R, w, 4)
        P4 = R.mul(G3, R.inv(G2))
        P5 = R.mul(G4, R.inv(R.mul(R.pow(P4, 2 * q0), G2)))
        P1 = self.P1(R, w, aux)
        return R.pow(P1, self.relation_exponent()), R.pow(P4, q - 2 * q0 + 1), P5

    def cleared_relation(self, R, w, aux, c):
        """c P1^E G2^(q-2q0+1) G3^(2q0) + G3^(q+1) + G4 G2^q."""
        q, q0 = self.q, self.q0
        G2 = self.F_poly(R, w, 2)
        G3 = self.F_poly(R, w, 3)
        G4 = self.F_poly(R, w, 4)
        P1 = self.P1(R, w, aux)
        t1 = R.mul(R.pow(P1, self.relation_exponent()),
                   R.mul(R.pow(G2, q - 2 * q0 + 1), R.pow(G3, 2 * q0)))
        t2 = R.pow(G3, q + 1)
        t3 = R.mul(G4, R.pow(G2, q))
        return R.add(R.add(R.cmul(c, t1), t2), t3)

    def cleared_parts(self, R, w, aux):
        """(T1, T2) with the cleared relation equal to c T1 + T2."""
        q, q0 = self.q, self.q0
        G2 = self.F_poly(R, w, 2)
        G3 = self.F_poly(R, w, 3)
        G4 = self.F_poly(R, w, 4)
        P1 = self.P1(R, w, aux)
        T1 = R.mul(R.pow(P1, self.relation_exponent()),
                   R.mul(R.pow(G2, q - 2 * q0 + 1), R.pow(G3, 2 * q0)))
        T2 = R.add(R.pow(G3, q + 1), R.mul(G4, R.pow(G2, q)))
        return T1, T2

    def cleared_degree(self):
        return (1 + self.q ** 3) * (self.q + 1)

    def curve_degree(self):
        return self.q + 2 * self.q0 + 1

    # -- group side ---------------------------------------------------------------

    def sigma(self, F, g):
        """sigma(g) = phi^m(g') in the default coordinates."""
        return F.frob(prime_of(F, g), self.m)

    def FE(self, F, g):
        return F.frob(g, 2 * self.m + 1)

    # -- v-scan -------------------------------------------------------------------

    vscan_dim = 4

    def vscan_filter(self, F, v):
        return np.ones(np.shape(v)[1:], dtype=bool)

    def vscan_conditions(self, F, v):
        """Semilinear conditions on w for fixed v (4, B): <v,w> = 0 and F([v^w]) ^ v = 0."""
        v = np.asarray(v, dtype=np.int64)

        def cond(y):
            vv = v[:, :, None]
            vb = np.broadcast_to(vv, y.shape)
            e1 = bilinear(F, GRAM, vb, y)[None]
            e2 = wedge2(F, self.F_of_lambda2(F, wedge2(F, vb, y)), vb)
            return np.concatenate([e1, e2], axis=0)

        return cond

    def point_from_pair(self, F, v, y):
        return from_lambda2(F, wedge2(F, v, y))


def sz_model(m, F=None):
    if F is not None:
        raise NotImplementedError("only the default F is supported")
    return SuzukiModel(m)


def sz_membership(model, alpha, F):
    """alpha given by 5 W coordinates or 6 Lambda^2 coordinates."""
    alpha = np.asarray(alpha, dtype=np.int64)
    if not alpha.any():
        raise ValueError("zero input")
    if alpha.shape[0] == 6:
        if alpha[1] != alpha[4]:
            return False
        alpha = from_lambda2(F, alpha)
    return bool(model.is_member(F, alpha[:, None])[0])


def sz_rho_pair(F, alpha, beta, v):
    """(alpha ^ beta, v) = <i_v(alpha), i_v(beta)> with alpha, beta in Lambda^2 V."""
    return bilinear(F, GRAM, contract(F, v, alpha, GRAM), contract(F, v, beta, GRAM))


def sz_rho(model):
    """The phi-linear inverse of rho, V -> V'' (coordinates), as a SemilinearMap."""
    return model.rho_inv


def sz_P1(model, F, w, aux=None):
    w = np.asarray(w, dtype=np.int64)
    if w.ndim == 1:
        w = w[:, None]
    if aux is None:
        aux = model.witness(F, w)
    return model.P1(F, w, aux)


def sz_F(model, F, w, k):
    if k not in (1, 2, 3, 4):
        raise ValueError("k must be in 1..4")
    w = np.asarray(w, dtype=np.int64)
    if w.ndim == 1:
        w = w[:, None]
    return model.F_poly(F, w, k)


def sz_relation_check(model, F, points):
    """Solve the normalization c at the first point; return (c, constant, holds)."""
    pts = np.asarray(points, dtype=np.int64)
    if pts.shape[1] == 0:
        raise ValueError("empty point list")
    if np.any(model.F_poly(F, pts, 2) == 0) or np.any(model.F_poly(F, pts, 3) == 0):
        raise ValueError("relation needs points with <a,FR^2 a> and P4 nonzero")
    aux = model.witness(F, pts)
    P1e, P4e, P5 = model.relation_terms(F, pts, aux)
    if np.any(P1e == 0):
        raise ValueError("P1 vanishes at a supplied point")
    cs = F.div(F.add(P4e, P5), P1e)  # char 2: c P1^E = P4^e + P5
    c = int(cs[0])
    holds = F.add(F.add(F.mul(c, P1e), P4e), P5) == 0
    return c, bool(np.all(cs == c)), bool(holds.all())


def sz_tangent_dim(model, F, w, allow_degenerate=False):
    if model.m == 0 and not allow_degenerate:
        raise NotImplementedError("tangent dimension is only claimed for m > 0")
    return model.tangent_dim(F, np.asarray(w, dtype=np.int64))


def sz_chain_identity(model, F, w):
    """<a,FR^2 a>^(q^3+1) == <a,FR^3 a>^(q^2+1) per point (w: (5, N))."""
    q = model.q
    w = np.asarray(w, dtype=np.int64)
    G2 = model.F_poly(F, w, 2)
    G3 = model.F_poly(F, w, 3)
    return F.pow(G2, q ** 3 + 1) == F.pow(G3, q ** 2 + 1)
