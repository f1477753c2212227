"""The 2G2 family: imaginary octonions in characteristic 3.

V has basis a0..a6 with a_i a_{i+1} = a_{i+3} (indices mod 7) on each
quaternion triple, <a_i, a_j> = -delta_ij, and x*y the imaginary part of the
product.  Two-forms act as endomorphisms by
D_{x^y}(a) = <x,a> y - <y,a> x; W = ker(*) is the 14-dimensional derivation
algebra, W^perp the inner derivations, and V' = W/W^perp is again an
octonion algebra under the bracket [Da, Db] := Db Da - Da Db (the opposite of
the usual commutator; with it rho is a Lie map rather than an anti-map).

A frame of V' (a basis obeying the a_i multiplication table) is chosen by a
deterministic search among frames for which the q-power Frobenius FR is the
coordinatewise map.  In frame coordinates F : V' -> V and rho : V -> V'' are
the identity matrices twisted by phi^m and phi.

Points use W coordinates: seven coordinates along a basis of W^perp followed
by the seven frame coordinates of the class in V'.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from . import gf
from .dlcore.model import CurveModel
from .dlcore.series import constant_codes
from .exterior import (bilinear, induced_lambda2, matvec, pairs, plucker_quadrics, wedge2,
                       wedge21)

__all__ = [
    "OctonionAlgebra",
    "DerivationSpace",
    "ReeModel",
    "octonion_algebra",
    "derivations",
    "find_frame",
    "ree_model",
    "ree_membership",
    "ree_P1",
    "ree_F",
    "ree_relation_check",
    "ree_tangent_dim",
    "structure_constants",
    "derivations_check",
    "commutator_terms",
    "commutator_check",
    "random_derivation",
    "chain_links",
    "rho_flag_check",
    "dmat",
]

N7 = 7
PAIRS7 = pairs(7)


def structure_constants():
    """c[i, j, k]: coefficient of a_k in a_i * a_j (values mod 3)."""
    c = np.zeros((7, 7, 7), dtype=np.int64)
    for i in range(7):
        a, b, d = i, (i + 1) % 7, (i + 3) % 7
        for x, y, z in ((a, b, d), (b, d, a), (d, a, b)):
            c[x, y, z] = 1
            c[y, x, z] = 2
    return c


GRAM = 2 * np.eye(7, dtype=np.int64)
STRUCT = structure_constants()


# ---------------------------------------------------------------------------
# integer helpers over GF(3) (codes of GF(3) are the residues themselves)


def _mm(A, B):
    return (np.asarray(A) @ np.asarray(B)) % 3


def _mul3(cc, x, y):
    return np.einsum("i,j,ijk->k", x, y, cc) % 3


def _lam2_int(k):
    """Lambda^2 of an integer matrix mod 3 (lexicographic pairs)."""
    P = np.array(PAIRS7)
    I, J = P[:, 0], P[:, 1]
    return (k[I][:, I] * k[J][:, J] - k[I][:, J] * k[J][:, I]) % 3


def _table_ok_int(fr, cc, target):
    """Columns of fr multiply by the table ``target`` under ``cc``."""
    lhs = np.einsum("ia,jb,ijk->abk", fr, fr, cc) % 3
    rhs = np.einsum("kc,abc->abk", fr, target) % 3
    return bool(np.array_equal(lhs, rhs))


@functools.lru_cache(maxsize=None)
def _all_vectors():
    v = np.array(list(itertools.product(range(3), repeat=7)), dtype=np.int64)
    return v[:, ::-1].copy()


def _frames(cc, B, order=None):
    """Generate frames (7x7, columns b0..b6) of the algebra (cc, B) over GF(3)."""
    allv = _all_vectors()
    if order is not None:
        allv = allv[order]
    norms = np.einsum("vi,ij,vj->v", allv, B, allv) % 3
    cands = allv[norms == 2]
    BC = (cands @ B) % 3
    for i0, b0 in enumerate(cands):
        o0 = (BC @ b0) % 3 == 0
        for b1 in cands[o0]:
            b3 = _mul3(cc, b0, b1)
            ok = o0 & ((BC @ b1) % 3 == 0) & ((BC @ b3) % 3 == 0)
            for b2 in cands[ok]:
                b4 = _mul3(cc, b1, b2)
                b5 = _mul3(cc, b2, b3)
                b6 = _mul3(cc, b3, b4)
                fr = np.stack([b0, b1, b2, b3, b4, b5, b6], axis=1)
                if _table_ok_int(fr, cc, STRUCT):
                    yield fr


def find_frame(cc=None, B=None, seed=None):
    """First frame of the octonion algebra with structure constants cc and form B.

    The search runs over candidate vectors in a fixed order (shuffled by
    ``seed`` when given): b0, b1 of norm -1 and orthogonal, b3 = b0 b1, b2 of
    norm -1 orthogonal to b0, b1, b3, then b4 = b1 b2, b5 = b2 b3, b6 = b3 b4
    and a full table check.
    """
    cc = STRUCT if cc is None else np.asarray(cc)
    B = GRAM if B is None else np.asarray(B)
    order = None
    if seed is not None:
        order = np.random.default_rng(seed).permutation(3 ** 7)
    for fr in _frames(cc, B, order):
        return fr
    raise RuntimeError("frame search exhausted: the input is not an octonion algebra")


# ---------------------------------------------------------------------------


class OctonionAlgebra:
    """The imaginary octonions over a characteristic-3 field."""

    def __init__(self, field):
        if field.p != 3:
            raise ValueError("octonion model needs characteristic 3")
        self.field = field
        self.c = STRUCT
        self.G = GRAM

    def mul(self, x, y, R=None):
        """x*y for vectors with coordinates on axis 0 (ring-generic)."""
        R = R or self.field
        out = [None] * 7
        for i, j, k in zip(*np.nonzero(self.c)):
            t = R.mul(x[i], y[j])
            if self.c[i, j, k] == 2:
                t = R.neg(t)
            out[k] = t if out[k] is None else R.add(out[k], t)
        return np.stack(out)

    def pair(self, x, y, R=None):
        """<x, y> = -sum x_i y_i."""
        R = R or self.field
        acc = R.mul(x[0], y[0])
        for i in range(1, 7):
            acc = R.add(acc, R.mul(x[i], y[i]))
        return R.neg(acc)

    def cubic(self, x, y, z, R=None):
        return self.pair(x, self.mul(y, z, R), R)

    def ad(self, x):
        """Matrix of y -> x*y for a single vector x (codes)."""
        F = self.field
        x = np.asarray(x, dtype=np.int64)
        M = np.zeros((7, 7), dtype=np.int64)
        for i, j, k in zip(*np.nonzero(self.c)):
            t = x[i] if self.c[i, j, k] == 1 else F.neg(x[i])
            M[k, j] = F.add(M[k, j], t)
        return M

    def is_isotropic(self, x):
        return int(self.pair(np.asarray(x), np.asarray(x))) == 0

    def ker_ad(self, x):
        return gf.nullspace(self.field, self.ad(x))

    def ker_ad_image_check(self, x):
        """ker(ad x) == ad(x)(x^perp) for isotropic x != 0."""
        F = self.field
        x = np.asarray(x, dtype=np.int64)
        if not x.any() or not self.is_isotropic(x):
            raise ValueError("x must be a nonzero isotropic vector")
        K = self.ker_ad(x)
        perp = gf.nullspace(F, F.neg(x)[None, :])  # <x, y> = -x.y
        A = self.ad(x)
        img = gf.mat_mul(F, A, np.asarray(perp).T).T
        rk = gf.rank(F, K)
        return rk == gf.rank(F, img) and gf.rank(F, np.vstack([K, img])) == rk

    def exp_auto(self, x):
        """e_x = 1 + ad(x) + 2 ad(x)^2 for isotropic x (an automorphism)."""
        F = self.field
        x = np.asarray(x, dtype=np.int64)
        if not self.is_isotropic(x):
            raise ValueError("exp_auto needs an isotropic vector")
        A = self.ad(x)
        A2 = gf.mat_mul(F, A, A)
        return F.add(F.add(np.eye(7, dtype=np.int64), A), F.neg(A2))

    def is_automorphism(self, g):
        F = self.field
        E = np.eye(7, dtype=np.int64)
        for i in range(7):
            for j in range(7):
                lhs = self.mul(g[:, i], g[:, j])
                rhs = gf.mat_mul(F, g, self.mul(E[i], E[j]))
                if not np.array_equal(lhs, rhs):
                    return False
        return True

    def jacobi_ok(self, x, y, z):
        R = self.field
        t = R.add(self.mul(x, self.mul(y, z)), self.mul(y, self.mul(z, x)))
        t = R.add(t, self.mul(z, self.mul(x, y)))
        return not np.any(t)

    def random_isotropic(self, rng, nonzero=True):
        F = self.field
        while True:
            x = F.random(rng, size=7)
            s = int(self.pair(x, x))
            if s == 0 and (x.any() or not nonzero):
                return x


def octonion_algebra(field):
    return OctonionAlgebra(field)


# ---------------------------------------------------------------------------


def dmat(F, xi, G=GRAM):
    """Endomorphism of V given by the two-form xi: e_i^e_j -> (a -> <e_i,a> e_j - <e_j,a> e_i)."""
    xi = np.asarray(xi, dtype=np.int64)
    M = np.zeros((7, 7), dtype=np.int64)
    for t, (i, j) in enumerate(PAIRS7):
        if xi[t] == 0:
            continue
        M[j] = F.add(M[j], F.mul(xi[t], G[i]))
        M[i] = F.sub(M[i], F.mul(xi[t], G[j]))
    return M


class DerivationSpace:
    """W = ker(*), W^perp = inner derivations, and V' = W/W^perp with a frame."""

    def __init__(self):
        F = gf.mk_field(3, 1)
        self.F3 = F
        S = np.zeros((7, 21), dtype=np.int64)
        for t, (i, j) in enumerate(PAIRS7):
            S[:, t] = STRUCT[i, j]
        self.star = S
        self.W = np.array(gf.nullspace(F, S))
        self.Q = induced_lambda2(F, GRAM)  # induced pairing on Lambda^2
        self.Wperp = np.array(gf.nullspace(F, gf.mat_mul(F, self.W, self.Q)))
        # two-forms <-> endomorphisms
        self.Dlin = np.stack([dmat(F, e).ravel() for e in np.eye(21, dtype=np.int64)], axis=1)
        sel = []
        for r in range(49):
            if gf.rank(F, self.Dlin[sel + [r]]) > len(sel):
                sel.append(r)
            if len(sel) == 21:
                break
        self.Dinv = np.zeros((21, 49), dtype=np.int64)
        self.Dinv[:, sel] = gf.mat_inv(F, self.Dlin[sel])
        self.inner = np.array([self.to_lam2(F, self._ad_int(e)) for e in np.eye(7, dtype=np.int64)])
        raw = derivations_check(F)
        as_forms = [self.to_lam2(F, r.reshape(7, 7)) for r in raw]
        if len(raw) != 14 or gf.rank(F, np.vstack([self.W] + [np.array(as_forms)])) != 14:
            raise AssertionError("derivations do not match ker(*)")  # pragma: no cover
        # section of W -> V' and the coordinate map on W
        basis = [w for w in self.Wperp]
        comp = []
        for w in self.W:
            if gf.rank(F, np.array(basis + [w])) > len(basis):
                basis.append(w)
                comp.append(w)
        self.C = np.array(comp).T  # 21 x 7
        Bw = np.array(basis).T  # 21 x 14
        rows = []
        for r in range(21):
            if gf.rank(F, Bw[rows + [r]]) > len(rows):
                rows.append(r)
        Y = np.zeros((14, 21), dtype=np.int64)
        Y[:, rows] = gf.mat_inv(F, Bw[rows])
        self.L = Y[7:]  # 7 x 21
        self.cp = self._bracket_table(self.L, self.C)
        self.B = self._solve_pairing(self.cp)
        self.frame = self._frobenius_frame()
        Phi = self.frame
        Phinv = gf.mat_inv(F, Phi)
        self.LF = _mm(Phinv, self.L)  # frame coordinates of classes, 7 x 21
        self.CF = _mm(self.C, Phi)  # section in frame coordinates, 21 x 7
        self.Wbasis = np.vstack([self.Wperp, self.CF.T])  # 14 x 21
        rows = []
        for r in range(21):
            if gf.rank(F, self.Wbasis.T[rows + [r]]) > len(rows):
                rows.append(r)
        self.Wcoord = np.zeros((14, 21), dtype=np.int64)
        self.Wcoord[:, rows] = gf.mat_inv(F, self.Wbasis.T[rows])

    @staticmethod
    def _ad_int(x):
        return np.einsum("i,ijk->kj", x, STRUCT) % 3

    def to_lam2(self, F, M):
        """Two-form of an endomorphism in the image of dmat (codes)."""
        return matvec(F, self.Dinv, np.asarray(M, dtype=np.int64).ravel())

    def is_twoform_image(self, F, M):
        xi = self.to_lam2(F, M)
        return np.array_equal(matvec(F, self.Dlin, xi), np.asarray(M).ravel())

    def _bracket_int(self, L, C, a, b):
        F = self.F3
        Da = dmat(F, _mm(C, a))
        Db = dmat(F, _mm(C, b))
        M = (Db @ Da - Da @ Db) % 3
        return _mm(L, self.to_lam2(F, M))

    def _bracket_table(self, L, C):
        E = np.eye(7, dtype=np.int64)
        cp = np.zeros((7, 7, 7), dtype=np.int64)
        for i in range(7):
            for j in range(7):
                cp[i, j] = self._bracket_int(L, C, E[i], E[j])
        return cp

    def _solve_pairing(self, cp):
        """Symmetric B with x*(x*y) = B(x,x) y - B(x,y) x, solved by polarization."""
        F = self.F3
        E = np.eye(7, dtype=np.int64)
        idx = {}
        cnt = 0
        for i in range(7):
            for j in range(i, 7):
                idx[(i, j)] = idx[(j, i)] = cnt
                cnt += 1
        rows, rhs = [], []
        for u, v, y in itertools.product(range(7), repeat=3):
            lhs = (_mul3(cp, E[u], _mul3(cp, E[v], E[y])) + _mul3(cp, E[v], _mul3(cp, E[u], E[y]))) % 3
            for k in range(7):
                row = np.zeros(cnt, dtype=np.int64)
                if y == k:
                    row[idx[(u, v)]] += 2
                if v == k:
                    row[idx[(u, y)]] -= 1
                if u == k:
                    row[idx[(v, y)]] -= 1
                rows.append(row % 3)
                rhs.append(lhs[k])
        sol = gf.solve(F, np.array(rows), np.array(rhs))
        if sol is None:
            raise RuntimeError("V' carries no compatible pairing")
        return np.array([[sol[idx[(i, j)]] for j in range(7)] for i in range(7)])

    # -- rho ------------------------------------------------------------------------

    def rho_closed(self, F, x, frame=None, check=True):
        """V'' frame coordinates of rho(x) for isotropic x via d -> ad(x) ad(d(x)) ad(x)."""
        Phi = self.frame if frame is None else frame
        LF = _mm(gf.mat_inv(self.F3, Phi), self.L) if frame is not None else self.LF
        CF = _mm(self.C, Phi) if frame is not None else self.CF
        alg = OctonionAlgebra(F)
        ax = alg.ad(x)
        cols = []
        for i in range(7):
            D = dmat(F, CF[:, i])
            T = gf.mat_mul(F, gf.mat_mul(F, ax, alg.ad(gf.mat_mul(F, D, x))), ax)
            xi = self.to_lam2(F, T)
            if check:
                if not self.is_twoform_image(F, T):
                    raise AssertionError("ad(x) ad(d x) ad(x) is not a two-form")
                if matvec(F, self.star, xi).any():
                    raise AssertionError("ad(x) ad(d x) ad(x) is not a derivation")
            cols.append(matvec(F, LF, xi))
        M = np.stack(cols, axis=1)  # derivation of V' in frame coordinates
        return matvec(F, LF, self.to_lam2(F, M)), M

    @functools.cached_property
    def isotropic_basis(self):
        """First 7 independent isotropic vectors over GF(3), as columns."""
        F = self.F3
        X = []
        for v in _all_vectors():
            if v.any() and (v @ v) % 3 == 0 and gf.rank(F, np.array(X + [v])) > len(X):
                X.append(v)
            if len(X) == 7:
                break
        return np.array(X).T

    def rho_extended(self, F, x):
        """rho on arbitrary x: phi-semilinear extension from the isotropic basis.

        x = sum c_i X_i gives rho(x) = sum phi(c_i) rho(X_i), each rho(X_i)
        from the closed formula.
        """
        imgs, Xinv = self._isotropic_images
        c = matvec(F, Xinv, np.asarray(x, dtype=np.int64))
        return matvec(F, imgs, F.frob(c, 1))

    @functools.cached_property
    def _isotropic_images(self):
        X = self.isotropic_basis
        imgs = np.stack([self.rho_closed(self.F3, X[:, j])[0] for j in range(7)], axis=1)
        return imgs, gf.mat_inv(self.F3, X)

    def _rho_matrix(self, frame):
        """R with rho(x) = R phi(x), from an isotropic basis over GF(3)."""
        F = self.F3
        X = self.isotropic_basis
        cols = [self.rho_closed(F, X[:, j], frame=frame)[0] for j in range(7)]
        return _mm(np.array(cols).T, gf.mat_inv(F, X))

    def _frobenius_frame(self):
        """First frame of V', then the first change of frame k making rho the identity."""
        F = self.F3
        Phi0 = find_frame(self.cp, self.B)
        R0 = self._rho_matrix(Phi0)
        Phinv0 = gf.mat_inv(F, Phi0)
        LC = _mm(Phinv0, self.L)
        CC = _mm(self.C, Phi0)
        target = gf.mat_inv(F, R0)
        for k in _frames(STRUCT, GRAM):
            kp = _mm(LC, _mm(_lam2_int(k), CC))
            if np.array_equal(_mm(k, kp), target):
                Phi = _mm(Phi0, gf.mat_inv(F, k))
                if not _table_ok_int(Phi, self.cp, STRUCT):  # pragma: no cover
                    raise AssertionError("corrected frame fails the table")
                if not np.array_equal(self._rho_matrix(Phi), np.eye(7, dtype=np.int64)):
                    raise AssertionError("corrected frame does not trivialize rho")  # pragma: no cover
                return Phi
        raise RuntimeError("no frame makes FR coordinatewise")  # pragma: no cover

    # -- conversions ------------------------------------------------------------------

    def prime(self, F, g):
        """g' on V' (frame coordinates) for an automorphism g of V."""
        return gf.mat_mul(F, self.LF, gf.mat_mul(F, induced_lambda2(F, g), self.CF))

    def vprime_bracket(self, F, a, b):
        """Bracket of V' in frame coordinates (computed from the derivations)."""
        Da = dmat(F, gf.mat_mul(F, self.CF, a))
        Db = dmat(F, gf.mat_mul(F, self.CF, b))
        M = F.sub(gf.mat_mul(F, Db, Da), gf.mat_mul(F, Da, Db))
        return matvec(F, self.LF, self.to_lam2(F, M))


@functools.lru_cache(maxsize=None)
def derivations():
    return DerivationSpace()


# ---------------------------------------------------------------------------


class ReeModel(CurveModel):
    family = "ree"
    p = 3
    a = 1
    d = 6
    dim = 14
    basis_names = tuple([f"perp{i}" for i in range(7)] + [f"b{i}" for i in range(7)])

    def __init__(self, m):
        if m < 0:
            raise ValueError("m must be non-negative")
        self.m = m
        self.degenerate = m == 0
        self.der = derivations()
        self.WT = self.der.Wbasis.T.copy()  # 21 x 14
        self.fr_coordinatewise = True

    @property
    def q_minus(self):
        return self.q - 3 * self.q0 + 1

    @property
    def q_plus(self):
        return self.q + 3 * self.q0 + 1

    def algebra(self, F):
        return OctonionAlgebra(F)

    # -- coordinates --------------------------------------------------------------------

    def lam2(self, R, w):
        return matvec(R, self.WT, w)

    def from_lam2(self, F, lam):
        lam = np.asarray(lam, dtype=np.int64)
        if matvec(F, self.der.star, lam).any():
            raise ValueError("two-form is not in W")
        return matvec(F, self.der.Wcoord, lam)

    def vclass(self, R, lam):
        """Frame coordinates in V' of a two-form lying in W."""
        return matvec(R, self.der.LF, lam)

    def apply_F(self, R, vp):
        return R.frob(vp, self.m)

    def rho(self, R, x):
        """rho_V : V -> V'' in frame coordinates."""
        return R.frob(x, 1)

    def x_of(self, R, w):
        """x = F(omega)."""
        return self.apply_F(R, np.asarray(w)[7:])

    def equations(self, R, w):
        lam = self.lam2(R, w)
        x = self.x_of(R, w)
        eqs = [plucker_quadrics(R, lam), bilinear(R, self.der.Q, lam, lam)[None],
               wedge21(R, lam, x)]
        return np.concatenate(eqs, axis=0)

    def pair_vec(self, R, x, y):
        return OctonionAlgebra(R.field).pair(x, y, R)

    def F_poly(self, R, w, k):
        lam = self.lam2(R, w)
        return bilinear(R, self.der.Q, lam, self.fr(R, lam, k))

    # -- P1 -------------------------------------------------------------------------------

    def _u(self, R, x, c, d):
        alg = OctonionAlgebra(R.field)
        return R.sub(R.mul(alg.pair(x, d, R)[None], c), R.mul(alg.pair(x, c, R)[None], d))

    def flag_vectors(self, R, w, aux):
        """(x, z, N, D, rho) with N, D, rho in V'' frame coordinates."""
        c, d = (R.const(t) for t in aux)
        alg = OctonionAlgebra(R.field)
        w = np.asarray(w)
        x = self.x_of(R, w)
        z = alg.mul(x, self._u(R, x, c, d), R)
        xz = self.vclass(R, wedge2(R, x, z))
        xF = self.vclass(R, wedge2(R, x, self.apply_F(R, xz)))
        om = w[7:]
        N = self.vclass(R, wedge2(R, xF, om))
        D = self.vclass(R, wedge2(R, om, xz))
        return x, z, N, D, self.rho(R, x)

    def witness(self, F, w):
        """Per point the first basis pair (c, d) with [omega] ^ [x ^ z] != 0."""
        w = np.asarray(w, dtype=np.int64)
        batch = w.shape[1:]
        E = np.eye(7, dtype=np.int64)
        c = np.zeros((7,) + batch, dtype=np.int64)
        d = np.zeros_like(c)
        have = np.zeros(batch, dtype=bool)
        shp = (7,) + (1,) * len(batch)
        for i, j in itertools.combinations(range(7), 2):
            ci = np.broadcast_to(E[i].reshape(shp), c.shape)
            dj = np.broadcast_to(E[j].reshape(shp), c.shape)
            D = self.flag_vectors(F, w, (ci, dj))[3]
            ok = (D != 0).any(axis=0) & ~have
            c = np.where(ok[None], ci, c)
            d = np.where(ok[None], dj, d)
            have |= ok
            if have.all():
                break
        if not have.all():
            raise ValueError("no valid witness z")
        return c, d

    def P1(self, R, w, aux):
        """(N / D) (rho(x) / D)^(q0-1): the polynomial vanishing on the F_q-points."""
        _, _, N, D, rho = self.flag_vectors(R, w, aux)
        out = R.ratio(N, D)
        if self.q0 > 1:
            out = R.mul(out, R.pow(R.ratio(rho, D), self.q0 - 1))
        return out

    def relation_exponent(self):
        return self.q ** 3 * (self.q - 1)

    def relation_terms(self, R, w, aux):
        """(P1^E, P6^(q-), P7)."""
        F3 = self.F_poly(R, w, 3)
        F4 = self.F_poly(R, w, 4)
        F5 = self.F_poly(R, w, 5)
        P6 = R.mul(F4, R.inv(F3))
        P7 = R.mul(F5, R.inv(R.mul(F3, R.pow(P6, 3 * self.q0))))
        P1 = self.P1(R, w, aux)
        return R.pow(P1, self.relation_exponent()), R.pow(P6, self.q_minus), P7

    def cleared_parts(self, R, w, aux, j=None):
        """(T1, T2) with c T1 + T2 = 0 the relation cleared by D_j^(q0 E) F3^(q-) F4^(3q0).

        j is a coordinate where D is a unit (the first one by default); N, D
        and rho(x) are proportional in V''.
        """
        q0, E, qm = self.q0, self.relation_exponent(), self.q_minus
        _, _, N, D, rho = self.flag_vectors(R, w, aux)
        if j is None:
            c0 = constant_codes(R, D).reshape(7, -1)
            units = np.nonzero((c0 != 0).all(axis=1))[0]
            if units.size == 0:
                raise ZeroDivisionError("no unit coordinate of D")
            j = int(units[0])
        F3 = self.F_poly(R, w, 3)
        F4 = self.F_poly(R, w, 4)
        F5 = self.F_poly(R, w, 5)
        T1 = R.mul(R.pow(N[j], E), R.mul(R.pow(F3, qm), R.pow(F4, 3 * q0)))
        if q0 > 1:
            T1 = R.mul(T1, R.pow(rho[j], (q0 - 1) * E))
        T2 = R.mul(R.pow(D[j], q0 * E),
                   R.sub(R.pow(F4, qm + 3 * q0), R.mul(F5, R.pow(F3, 3 * q0 - 1 + qm))))
        return T1, T2

    def cleared_degree(self):
        q0, q, E = self.q0, self.q, self.relation_exponent()
        degN = 1 + q0 + 3 * q0 ** 2
        return E * degN + (q0 - 1) * E * 3 * q0 + (1 + q ** 3) * self.q_minus + 3 * q0 * (1 + q ** 4)

    def curve_degree(self):
        return self.q_plus * (self.q + 1)

    # -- group side ------------------------------------------------------------------------

    def sigma(self, F, g):
        return F.frob(self.der.prime(F, g), self.m)

    def FE(self, F, g):
        return F.frob(g, 2 * self.m + 1)

    # -- v-scan ---------------------------------------------------------------------------

    vscan_dim = 7

    def vscan_filter(self, F, x):
        return OctonionAlgebra(F).pair(x, x) == 0

    def vscan_conditions(self, F, x):
        """Conditions on y for fixed isotropic x: x*y = 0 and F([x^y]) ^ x = 0."""
        alg = OctonionAlgebra(F)

        def cond(y):
            xb = np.broadcast_to(x[:, :, None], y.shape)
            e1 = alg.mul(xb, y)
            e2 = wedge2(F, self.apply_F(F, self.vclass(F, wedge2(F, xb, y))), xb)
            return np.concatenate([e1, e2], axis=0)

        return cond

    def point_from_pair(self, F, x, y):
        return matvec(F, self.der.Wcoord, wedge2(F, x, y))


def derivations_check(F=None):
    """Raw derivation solve: D(a*b) = D(a)*b + a*D(b) over GF(3) (49 unknowns)."""
    F = F or gf.mk_field(3, 1)
    rows = []
    for i in range(7):
        for j in range(7):
            for k in range(7):
                row = np.zeros((7, 7), dtype=np.int64)
                # coefficient of e_k in D(e_i*e_j) - D(e_i)*e_j - e_i*D(e_j)
                for l in range(7):
                    if STRUCT[i, j, l]:
                        row[k, l] = (row[k, l] + STRUCT[i, j, l]) % 3
                for l in range(7):
                    row[l, i] = (row[l, i] - STRUCT[l, j, k]) % 3
                    row[l, j] = (row[l, j] - STRUCT[i, l, k]) % 3
                rows.append(row.ravel())
    return np.array(gf.nullspace(F, np.array(rows)))


def ree_model(m):
    return ReeModel(m)


def ree_membership(model, omega, F):
    """omega given by 14 W coordinates or 21 Lambda^2 coordinates."""
    omega = np.asarray(omega, dtype=np.int64)
    if not omega.any():
        raise ValueError("zero input")
    if omega.shape[0] == 21:
        if matvec(F, model.der.star, omega).any():
            return False
        omega = model.from_lam2(F, omega)
    return bool(model.is_member(F, omega[:, None])[0])


def ree_P1(model, F, w, aux=None):
    w = np.asarray(w, dtype=np.int64)
    if w.ndim == 1:
        w = w[:, None]
    if aux is None:
        aux = model.witness(F, w)
    return model.P1(F, w, aux)


def ree_F(model, F, w, k):
    if k not in (1, 2, 3, 4, 5):
        raise ValueError("k must be in 1..5")
    w = np.asarray(w, dtype=np.int64)
    if w.ndim == 1:
        w = w[:, None]
    return model.F_poly(F, w, k)


def ree_relation_check(model, F, points):
    """Pointwise mode: needs points off F_q, F_{q^6}, F_{q^7}; returns (c, constant, holds)."""
    pts = np.asarray(points, dtype=np.int64)
    if pts.shape[1] == 0:
        raise ValueError("no points available for the pointwise relation")
    if np.any(model.F_poly(F, pts, 3) == 0) or np.any(model.F_poly(F, pts, 4) == 0):
        raise ValueError("relation needs F3 and F4 nonzero")
    aux = model.witness(F, pts)
    P1e, P6e, P7 = model.relation_terms(F, pts, aux)
    cs = F.div(F.sub(P7, P6e), P1e)
    c = int(cs[0])
    holds = F.sub(F.add(F.mul(c, P1e), P6e), P7) == 0
    return c, bool(np.all(cs == c)), bool(holds.all())


def ree_tangent_dim(model, F, w, allow_degenerate=False):
    if model.m == 0 and not allow_degenerate:
        raise NotImplementedError("tangent dimension is only claimed for m > 0")
    return model.tangent_dim(F, np.asarray(w, dtype=np.int64))


# ---------------------------------------------------------------------------
# the nilpotent calculus behind the exp(ad x) automorphisms


def _nil_mul(F, A, B):
    """Product in Mat_n(F)[eps, delta]/(eps^4, delta^2); arrays (4, 2, n, n)."""
    out = np.zeros_like(A)
    for i in range(4):
        for j in range(2):
            if not A[i, j].any():
                continue
            for k in range(4 - i):
                for l in range(2 - j):
                    if B[k, l].any():
                        out[i + k, j + l] = F.add(out[i + k, j + l], gf.mat_mul(F, A[i, j], B[k, l]))
    return out


def commutator_terms(alg, x, D):
    """eps*delta and eps^2*delta coefficients of e_d e_x e_d^-1 e_x^-1.

    e_x = 1 + eps ad(x) + eps^2 ad(x)^2 / 2 for isotropic x (ad(x)^3 = 0) and
    e_d = 1 + delta D for a derivation D.
    """
    F = alg.field
    n = 7
    I = np.eye(n, dtype=np.int64)
    A = alg.ad(x)
    half = F.inv(2)
    A2 = F.mul(half, gf.mat_mul(F, A, A))
    ex = np.zeros((4, 2, n, n), dtype=np.int64)
    ex[0, 0], ex[1, 0], ex[2, 0] = I, A, A2
    exi = ex.copy()
    exi[1, 0] = F.neg(A)
    ed = np.zeros_like(ex)
    ed[0, 0], ed[0, 1] = I, D
    edi = ed.copy()
    edi[0, 1] = F.neg(D)
    C = _nil_mul(F, _nil_mul(F, _nil_mul(F, ed, ex), edi), exi)
    return C[1, 1], C[2, 1]


def commutator_check(alg, x, D):
    """The eps*delta term is ad(d(x)) and the eps^2*delta term is ad(x*d(x))/2."""
    F = alg.field
    t1, t2 = commutator_terms(alg, x, D)
    dx = gf.mat_mul(F, D, np.asarray(x)[:, None])[:, 0]
    e1 = alg.ad(dx)
    e2 = F.mul(F.inv(2), alg.ad(alg.mul(np.asarray(x), dx)))
    return bool(np.array_equal(t1, e1)), bool(np.array_equal(t2, e2))


def random_derivation(F, rng):
    """A random derivation of V over F as a matrix (random element of W)."""
    der = derivations()
    c = F.random(rng, size=14)
    xi = matvec(F, der.W.T, c)
    return dmat(F, xi)


def chain_links(model, F, w):
    """Each equality of the F3^(q^4+1) = F4^(q^3+1) chain for FR^7-fixed w (14, N)."""
    q = model.q
    w = np.asarray(w, dtype=np.int64)
    lam = model.lam2(F, w)
    Q = model.der.Q

    def pr(a, b):
        return bilinear(F, Q, a, b)

    fr = [model.fr(F, lam, k) for k in range(8)]
    F3 = pr(fr[0], fr[3])
    F4 = pr(fr[0], fr[4])
    L0 = F.pow(F3, q ** 4 + 1)
    A = F.mul(F.pow(F3, q ** 4), F3)
    L1 = F.mul(pr(fr[4], fr[7]), F3)
    L2 = F.mul(pr(fr[4], fr[0]), pr(fr[7], fr[3]))
    L3 = F.mul(F.pow(F4, q ** 3), F4)
    L4 = F.pow(F4, q ** 3 + 1)
    chain = [L0, A, L1, L2, L3, L4]
    return [bool(np.array_equal(a, b)) for a, b in zip(chain, chain[1:])]


def rho_flag_check(model, F, w):
    """rho_V(x) is a nonzero multiple of (x^y)^(x^z) at each point (w: (14, N))."""
    w = np.asarray(w, dtype=np.int64)
    aux = model.witness(F, w)
    _, _, _, D, rho = model.flag_vectors(F, w, aux)
    par = ~wedge2(F, rho, D).any(axis=0)
    return par & rho.any(axis=0) & D.any(axis=0)
