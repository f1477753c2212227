"""Shared scaffolding for the three curve families.

A model fixes the ambient projective space P(W) (coordinates in a fixed
basis of W), a list of membership equations written against the ring
protocol, and the q-power Frobenius FR.  In every default model FR acts on
the W coordinates as the coordinatewise map x -> x^q, so a point lies over
F_{q^n} exactly when its normalized coordinates do.
"""

from __future__ import annotations

import numpy as np

from .. import gf
from .series import DualRing

__all__ = ["CurveModel", "normalize", "projective_key"]


def normalize(F, w):
    """Scale each column of w (coordinates on axis 0) so its first nonzero entry is 1."""
    w = np.asarray(w, dtype=np.int64)
    nz = w != 0
    if not nz.any(axis=0).all():
        raise ValueError("zero vector has no projective point")
    first = np.argmax(nz, axis=0)
    lead = np.take_along_axis(w, first[None], axis=0)[0]
    return F.mul(w, F.inv(lead)[None])


def projective_key(w):
    """Hashable canonical key of a normalized coordinate vector."""
    return tuple(int(c) for c in w)


class CurveModel:
    """Base class; subclasses set the attributes below and ``equations``."""

    family = ""
    p = 0
    m = 0
    a = 0
    dim = 0
    basis_names: tuple = ()
    degenerate = False

    @property
    def q0(self):
        return self.p ** self.m

    @property
    def q(self):
        return self.p ** self.frob_exp

    @property
    def frob_exp(self):
        """FR is phi^frob_exp on W coordinates."""
        return 2 * self.m + self.a

    def field(self, n=1):
        """F_{q^n} with the default modulus."""
        if self.frob_exp * n < 1:
            raise ValueError("degenerate parameters: F_q is not a field")
        return gf.mk_field(self.p, self.frob_exp * n)

    def params(self):
        return {"family": self.family, "p": self.p, "m": self.m, "q0": self.q0,
                "q": self.q, "d": self.d}

    # -- to be provided by subclasses -------------------------------------

    def equations(self, R, w):
        raise NotImplementedError

    # -- generic helpers ----------------------------------------------------

    def check_point(self, w):
        w = np.asarray(w, dtype=np.int64)
        if w.shape[0] != self.dim:
            raise ValueError(f"{self.family} points have {self.dim} coordinates, got {w.shape[0]}")
        return w

    def is_member(self, F, w):
        """Boolean mask over the batch: nonzero and every equation vanishes."""
        w = self.check_point(w)
        eqs = self.equations(F, w)
        nonzero = (w != 0).any(axis=0)
        return nonzero & np.all(eqs == 0, axis=0)

    def fr(self, R, w, k=1):
        """FR^k on W coordinates."""
        return R.frob(w, self.frob_exp * k)

    def exact_degree(self, F, w):
        """Least n' with all coordinates in F_{q^n'} (w normalized, one column per point)."""
        w = np.asarray(w, dtype=np.int64)
        n = F.k // self.frob_exp
        out = np.full(w.shape[1:], n, dtype=np.int64)
        for d in sorted((d for d in range(1, n + 1) if n % d == 0), reverse=True):
            inside = np.all(F.in_subfield(w, self.frob_exp * d), axis=0)
            out = np.where(inside, d, out)
        return out

    def jacobian(self, F, w):
        """Matrix (n_eq, dim) of the linearized equations at a single point.

        Frobenius-twisted occurrences are frozen (their eps part dies), which
        is the exact derivative in characteristic p.
        """
        w = self.check_point(w)
        D = DualRing(F)
        n = self.dim
        x = np.zeros((n, n, 2), dtype=np.int64)
        x[:, :, 0] = w[:, None]
        x[np.arange(n), np.arange(n), 1] = 1
        eqs = self.equations(D, x)  # (n_eq, n, 2)
        return eqs[..., 1]

    def tangent_dim(self, F, w):
        """Dimension of the tangent space of the equation scheme, projectivized."""
        J = self.jacobian(F, w)
        return self.dim - gf.rank(F, J) - 1
