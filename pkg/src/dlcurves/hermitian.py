"""The 2A2 family: SL3 with a Hermitian structure and its Fermat curve.

V is 3-dimensional with volume form e0^e1^e2.  V' = Lambda^2 V is written in
the basis (e1^e2, e2^e0, e0^e1), in which the pairing <v, omega> = v^omega/Omega
is the dot product and u^v is the cross product.  F : V' -> V is
omega -> A . phi^m(omega); the curve is <omega, F(omega)> = 0 in P(V').
"""

from __future__ import annotations

import numpy as np

from . import gf
from .dlcore.model import CurveModel
from .exterior import SemilinearMap, matvec

__all__ = [
    "HermitianModel",
    "su3_model",
    "su3_membership",
    "su3_sigma_on_group",
    "su3_check_sigma_squared",
    "su3_P1",
    "su3_F",
    "su3_relation_check",
    "cross",
    "dot",
    "conjugated_form",
    "random_sl3",
]


def dot(R, u, v):
    acc = R.mul(u[0], v[0])
    for i in range(1, u.shape[0]):
        acc = R.add(acc, R.mul(u[i], v[i]))
    return acc


def cross(R, u, v):
    return np.stack([
        R.sub(R.mul(u[1], v[2]), R.mul(u[2], v[1])),
        R.sub(R.mul(u[2], v[0]), R.mul(u[0], v[2])),
        R.sub(R.mul(u[0], v[1]), R.mul(u[1], v[0])),
    ])


def cofactor(F, A):
    """Adjugate transpose: cof(A) with A^T cof(A) = det(A) I."""
    A = np.asarray(A, dtype=np.int64)
    cols = [A[:, j] for j in range(3)]
    c0 = cross(F, cols[1], cols[2])
    c1 = cross(F, cols[2], cols[0])
    c2 = cross(F, cols[0], cols[1])
    return np.stack([c0, c1, c2], axis=1)


def random_sl3(F, rng):
    while True:
        g = F.random(rng, size=(3, 3))
        d = int(gf.det(F, g))
        if d:
            g = g.copy()
            g[0] = F.mul(g[0], F.inv(d))
            return g


def conjugated_form(Fq, m, rng):
    """A = g . phi^m(g)^T for random g in SL3(F_q): an isomorphic Hermitian structure."""
    g = random_sl3(Fq, rng)
    return gf.mat_mul(Fq, g, Fq.frob(g, m).T)


class HermitianModel(CurveModel):
    family = "su3"
    a = 0
    d = 3
    dim = 3
    basis_names = ("e1^e2", "e2^e0", "e0^e1")

    def __init__(self, p, m, A=None):
        if p not in (2, 3):
            raise ValueError("characteristic must be 2 or 3")
        if m < 0:
            raise ValueError("m must be non-negative")
        self.p = p
        self.m = m
        self.degenerate = m == 0
        if self.degenerate:
            # q = 1: no field to work over; only the parameter bookkeeping exists
            self.Fq = None
            self.F = self.Fprime = self.FR = None
            return
        Fq = gf.mk_field(p, 2 * m)
        self.Fq = Fq
        if A is None:
            A = np.eye(3, dtype=np.int64)
        A = np.asarray(A, dtype=np.int64)
        det = int(gf.det(Fq, A))
        if det != 1:
            raise ValueError(
                f"F does not respect the volume forms: F(e1^e2)^F(e2^e0)^F(e0^e1) = {det} * Omega")
        self.A = A
        self.F = SemilinearMap(Fq, A, m)
        # F'(x^y) = F(x)^F(y): the cofactor matrix, twisted by phi^m
        self.Fprime = SemilinearMap(Fq, cofactor(Fq, A), m)
        self.rho = SemilinearMap(Fq, np.eye(3, dtype=np.int64), 0)
        self.FR = self.F @ self.Fprime @ self.rho
        self.fr_coordinatewise = bool(np.array_equal(self.FR.A, np.eye(3, dtype=np.int64)))
        self._A_cache = {}

    def _A(self, F):
        if F is self.Fq:
            return self.A
        if F not in self._A_cache:
            self._A_cache[F] = gf.embed(self.A, self.Fq, F)
        return self._A_cache[F]

    def apply_F(self, R, omega):
        """F(omega) = A . phi^m(omega) as a vector of V."""
        return matvec(R, self._A(R.field), R.frob(omega, self.m))

    def apply_FR_vprime(self, R, omega, k=1):
        """FR^k induced on V' = Lambda^2 V."""
        if not self.fr_coordinatewise:
            raise NotImplementedError("FR is not coordinatewise for this F")
        return R.frob(omega, 2 * self.m * k)

    def equations(self, R, w):
        w = np.asarray(w)
        return dot(R, w, self.apply_F(R, w))[None]

    def fr(self, R, w, k=1):
        return self.apply_FR_vprime(R, w, k)

    def exact_degree(self, F, w):
        if not self.fr_coordinatewise:
            raise NotImplementedError("exact-degree labeling needs an FR-rational basis")
        return super().exact_degree(F, w)

    # -- polynomials ----------------------------------------------------------

    def F_poly(self, R, w, k):
        """<omega, F(FR^k omega)>: F3, F5, F7 for k = 1, 2, 3."""
        w = np.asarray(w)
        return dot(R, w, self.apply_F(R, self.apply_FR_vprime(R, w, k)))

    def witness(self, F, w):
        """Per point: first basis vector u with omega ^ u != 0 (codes, shape (3, *batch))."""
        w = np.asarray(w, dtype=np.int64)
        j = np.argmax(w != 0, axis=0)
        u = np.zeros(w.shape, dtype=np.int64)
        np.put_along_axis(u, j[None], 1, axis=0)
        return u

    def P1(self, R, w, u):
        """F(F(omega)^u)^omega / (omega^u)^q0, in units of Omega."""
        w = np.asarray(w)
        u = R.const(u)
        v = self.apply_F(R, w)
        num = dot(R, self.apply_F(R, cross(R, v, u)), w)
        den = dot(R, w, u)
        return R.mul(num, R.pow(den, -self.q0))

    def relation_exponent(self):
        return self.q0 ** 3 * (self.q - 1)

    def relation_terms(self, R, w, u):
        """(P4, P3^(q-q0+1), P1^E) evaluated on a field batch."""
        F3 = self.F_poly(R, w, 1)
        F5 = self.F_poly(R, w, 2)
        F7 = self.F_poly(R, w, 3)
        P3 = R.mul(F5, R.inv(F3))
        P4 = R.mul(F7, R.inv(R.mul(F3, R.pow(P3, self.q0))))
        P1 = self.P1(R, w, u)
        return P4, R.pow(P3, self.q - self.q0 + 1), R.pow(P1, self.relation_exponent())

    def cleared_relation(self, R, w, u, a):
        """F7 F3^q - F5^(q+1) + a P1^E F5^q0 F3^(q-q0+1): the relation times F5^q0 F3^(q-q0+1)."""
        q, q0 = self.q, self.q0
        F3 = self.F_poly(R, w, 1)
        F5 = self.F_poly(R, w, 2)
        F7 = self.F_poly(R, w, 3)
        P1 = self.P1(R, w, u)
        t1 = R.mul(F7, R.pow(F3, q))
        t2 = R.pow(F5, q + 1)
        t3 = R.mul(R.pow(P1, self.relation_exponent()), R.mul(R.pow(F5, q0), R.pow(F3, q - q0 + 1)))
        return R.add(R.sub(t1, t2), R.cmul(a, t3))

    def cleared_parts(self, R, w, u):
        """(T1, T2) with the cleared relation equal to a T1 + T2."""
        q, q0 = self.q, self.q0
        F3 = self.F_poly(R, w, 1)
        F5 = self.F_poly(R, w, 2)
        F7 = self.F_poly(R, w, 3)
        P1 = self.P1(R, w, u)
        T1 = R.mul(R.pow(P1, self.relation_exponent()), R.mul(R.pow(F5, q0), R.pow(F3, q - q0 + 1)))
        T2 = R.sub(R.mul(F7, R.pow(F3, q)), R.pow(F5, q + 1))
        return T1, T2

    def cleared_degree(self):
        q, q0 = self.q, self.q0
        return (1 + q0 * q ** 3) + q * (1 + q0 * q)

    def curve_degree(self):
        return self.q0 + 1

    # -- group side ------------------------------------------------------------

    def sigma(self, F, g):
        """sigma(g) = A phi^m(g^{-T}) A^{-1}; sigma(g) o F = F o g'."""
        A = self._A(F)
        ginvT = gf.mat_inv(F, g).T
        return gf.mat_mul(F, gf.mat_mul(F, A, F.frob(ginvT, self.m)), gf.mat_inv(F, A))

    def FE(self, F, g):
        B = gf.embed(self.FR.A, self.Fq, F) if F is not self.Fq else self.FR.A
        return gf.mat_mul(F, gf.mat_mul(F, B, F.frob(g, 2 * self.m)), gf.mat_inv(F, B))

    def hermitian_form(self, F, x, y):
        """H(x, y) = <x, A phi^m(y)> on V'; sigma-fixed elements preserve it."""
        return dot(F, x, self.apply_F(F, y))


def su3_model(p, m, F=None):
    A = None
    if F is not None:
        if isinstance(F, SemilinearMap):
            if F.s != m:
                raise ValueError("F must be phi^m-semilinear")
            A = F.A
        else:
            A = F
    return HermitianModel(p, m, A)


def su3_membership(model, omega, F=None):
    omega = np.asarray(omega, dtype=np.int64)
    F = F or model.Fq
    if not omega.any():
        raise ValueError("zero vector")
    return bool(model.is_member(F, omega[:, None])[0])


def su3_sigma_on_group(model, g, F=None):
    F = F or model.Fq
    if int(gf.det(F, g)) != 1:
        raise ValueError("g is not unimodular")
    return model.sigma(F, g)


def su3_check_sigma_squared(model, g, F=None):
    F = F or model.Fq
    s2 = model.sigma(F, su3_sigma_on_group(model, g, F))
    return bool(np.array_equal(s2, model.FE(F, g)))


def su3_P1(model, omega, u=None, F=None):
    F = F or model.Fq
    omega = np.asarray(omega, dtype=np.int64)[:, None]
    if u is None:
        u = model.witness(F, omega)
    else:
        u = np.asarray(u, dtype=np.int64).reshape(3, 1)
    if dot(F, omega, u)[0] == 0:
        raise ValueError("degenerate witness: u lies in M")
    return int(model.P1(F, omega, u)[0])


def su3_F(model, omega, k, F=None):
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    F = F or model.Fq
    return int(model.F_poly(F, np.asarray(omega, dtype=np.int64)[:, None], k)[0])


def su3_relation_check(model, F, points):
    """Solve a at the first point, then check the relation everywhere.

    ``points`` is (3, N) over F with F3 and F5 nonzero.  Returns
    (a, a^(q0+1) == 1, all points satisfy the relation).
    """
    pts = np.asarray(points, dtype=np.int64)
    if pts.shape[1] == 0:
        raise ValueError("empty point list")
    if np.any(model.F_poly(F, pts, 1) == 0) or np.any(model.F_poly(F, pts, 2) == 0):
        raise ValueError("relation needs points with F3 and F5 nonzero")
    u = model.witness(F, pts)
    P4, P3e, P1e = model.relation_terms(F, pts, u)
    if P1e[0] == 0:
        raise ValueError("P1 vanishes at the first point")
    # P4 - P3^e + a P1^E = 0
    a = int(F.div(F.sub(P3e[0], P4[0]), P1e[0]))
    ok = F.add(F.sub(P4, P3e), F.mul(a, P1e)) == 0
    root = int(F.pow(a, model.q0 + 1)) == 1
    return a, root, bool(ok.all())
