"""Power-series branches at rational points and what is measured along them.

A branch is a curve germ omega(t) in W[[t]] through a smooth point: one
coordinate is fixed to 1, a second one (the first coordinate along which the
tangent line moves) is the local parameter, and the rest are solved by
Newton iteration on a square subsystem of the membership equations.  Terms
twisted by phi^s, s > 0, have zero derivative; their error is a p^s-th power
of the correction, so the iteration still doubles precision.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .. import gf
from .model import normalize
from .series import DualRing, SeriesRing

__all__ = [
    "SeriesBranch",
    "SingularBranch",
    "branch_expand",
    "vanishing_order",
    "certify_relation",
    "ratio_constancy",
]


class SingularBranch(ArithmeticError):
    pass


@dataclasses.dataclass
class SeriesBranch:
    """omega(t) truncated mod t^(order+1), coordinates on axis 0."""

    model: object
    field: object
    base: np.ndarray
    order: int
    series: np.ndarray  # (dim, k, order+1) digits
    lead: int
    param: int
    iterations: int

    @property
    def ring(self):
        return SeriesRing(self.field, self.order + 1)

    def coefficients(self):
        """Coefficient codes (dim, order+1)."""
        return self.ring.codes(self.series)

    def tangent(self):
        return self.coefficients()[:, 1]

    def residual_order(self):
        """Least t-adic valuation over all membership equations."""
        R = self.ring
        return int(np.min(R.valuation(self.model.equations(R, self.series))))


def _tangent_setup(model, F, w0):
    J = model.jacobian(F, w0)
    n = model.dim
    rk = gf.rank(F, J)
    if rk != n - 2:
        raise SingularBranch(f"Jacobian rank {rk} at the base point; a smooth curve point needs {n - 2}")
    ker = np.asarray(gf.nullspace(F, J))
    lead = int(np.argmax(w0 != 0))
    # a kernel direction with zero lead coordinate (kernel = span(w0, v))
    v = None
    for kv in ker:
        cand = F.sub(kv, F.mul(F.div(kv[lead], w0[lead]), w0))
        if cand.any():
            v = cand
            break
    if v is None:  # pragma: no cover - kernel is 2-dimensional
        raise SingularBranch("tangent direction not found")
    param = int(np.argmax(v != 0))
    free = [i for i in range(n) if i not in (lead, param)]
    # square subsystem: rows independent on the free columns
    Jf = J[:, free]
    rows = []
    for r in range(J.shape[0]):
        if gf.rank(F, Jf[rows + [r]]) > len(rows):
            rows.append(r)
        if len(rows) == len(free):
            break
    return lead, param, free, rows


def _resize(x, P):
    out = np.zeros(x.shape[:-1] + (P,), dtype=np.int64)
    m = min(P, x.shape[-1])
    out[..., :m] = x[..., :m]
    return out


def branch_expand(model, point, order, field=None, max_iter=None):
    """Newton lifting of the membership system to precision t^(order+1)."""
    F = field or model.field(1)
    w0 = normalize(F, np.asarray(point, dtype=np.int64).reshape(-1, 1))[:, 0]
    if not model.is_member(F, w0[:, None])[0]:
        raise ValueError("base point is not on the curve")
    lead, param, free, rows = _tangent_setup(model, F, w0)
    L = int(order) + 1
    n, nf = model.dim, len(free)
    x = SeriesRing(F, 2).const(w0)
    x[param, 0, 1] = 1
    prec = 1  # x solves the system mod t^prec
    max_iter = max_iter or (2 * int(np.ceil(np.log2(L + 1))) + 6)
    it = 0
    for it in range(1, max_iter + 1):
        P = min(2 * prec, L)
        R = SeriesRing(F, P)
        D = DualRing(R)
        x = _resize(x, P)
        eqs = model.equations(R, x)
        if not eqs.any():
            if P == L:
                break
            prec = P
            continue
        # Jacobian over the series in the free directions
        X = np.zeros((n, nf, 2) + x.shape[1:], dtype=np.int64)
        X[:, :, 0] = x[:, None]
        for b, i in enumerate(free):
            X[i, b, 1] = R.const(1)
        Jd = D.part(model.equations(D, X)[rows], 1)  # (nf, nf, k, P)
        delta = R.matmul(R.mat_inv(Jd), eqs[rows][:, None])[:, 0]
        x[free] = R.sub(x[free], delta)
        prec = P
    else:
        raise SingularBranch(f"Newton iteration did not converge in {max_iter} steps")
    res = model.equations(SeriesRing(F, L), x)
    if res.any():
        raise SingularBranch("residual does not vanish")
    return SeriesBranch(model, F, w0, int(order), x, lead, param, it)


def vanishing_order(R, value):
    """(valuation, exact) of a series; exact is False when it is zero to precision."""
    v = int(np.min(R.valuation(value)))
    return v, v < R.L


def certify_relation(model, branch, parts, degree, curve_degree, aux=None):
    """Certify c*T1 + T2 = 0 on the curve through one branch.

    ``parts(R, x, aux)`` returns (T1, T2).  The constant c is read off at the
    lowest nonzero coefficient of T1 and every coefficient below t^(order+1)
    is then checked.  Vanishing to order above degree * curve_degree on an
    irreducible curve forces the identity.
    """
    need = degree * curve_degree
    out = {"order": branch.order, "degree": degree, "curve_degree": curve_degree,
           "bound": need, "assumes_irreducible": True}
    if branch.order <= need:
        raise ValueError(f"branch order {branch.order} does not exceed the bound {need}")
    R = branch.ring
    F = branch.field
    T1, T2 = parts(R, branch.series, aux)
    c1 = R.codes(T1)
    c2 = R.codes(T2)
    nz = np.nonzero(c1)[0]
    if nz.size == 0:
        out.update(constant=None, certified=bool(not c2.any()), valuation_T1=None)
        return out
    j = int(nz[0])
    c = int(F.neg(F.div(c2[j], c1[j])))
    total = R.add(R.cmul(c, T1), T2)
    out.update(constant=c, valuation_T1=j, certified=bool(not total.any()),
               valuation_T2=int(R.valuation(T2)))
    return out


def ratio_constancy(F, f_vals, g_vals):
    """(constant, all equal) for f/g over a point batch with g nonzero."""
    f_vals = np.asarray(f_vals, dtype=np.int64)
    g_vals = np.asarray(g_vals, dtype=np.int64)
    if f_vals.size == 0:
        raise ValueError("empty point list")
    if np.any(g_vals == 0):
        raise ZeroDivisionError("g vanishes at a supplied point")
    r = F.div(f_vals, g_vals)
    return int(r.flat[0]), bool(np.all(r == r.flat[0]))
