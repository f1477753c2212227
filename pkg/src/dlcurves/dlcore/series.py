"""Truncated power series over GF(p^k) and first-order dual numbers.

Both classes implement the small ring protocol used by the family formulas
(``add``, ``sub``, ``neg``, ``mul``, ``cmul``, ``frob``, ``const``,
``zeros_like``, ``inv``, ``pow``, ``ratio``), so one formula evaluates a
point, a branch, or a tangent direction.

A series element is an int64 array of shape (*batch, k, L): entry
[..., i, j] is the x^i coefficient (an integer mod p) of the t^j term.
Products go through a 2-D FFT of the (x, t) coefficient grid followed by
reduction mod p and mod the field's modulus; the grid sizes used here keep
the float error far below 1/2, and every product is rounded and checked.
"""

from __future__ import annotations

import numpy as np
import scipy.fft as sfft

from .. import gf

__all__ = ["SeriesRing", "DualRing", "pow_by_frobenius", "constant_codes"]


def constant_codes(R, a):
    """Field codes of the constant part of a ring element (field, series or dual)."""
    if isinstance(R, DualRing):
        return constant_codes(R.base, R.part(a, 0))
    if isinstance(R, SeriesRing):
        return R.constant_term(a)
    return np.asarray(a)


def pow_by_frobenius(R, a, e):
    """a**e for e >= 0 using the base-p digits of e and a^(p^i) = frob(a, i)."""
    if e < 0:
        raise ValueError("negative exponent; invert first")
    p = R.field.p
    out = None
    i = 0
    while e:
        d = e % p
        if d:
            f = R.frob(a, i) if i else a
            term = f if d == 1 else R.mul(f, f)
            out = term if out is None else R.mul(out, term)
        e //= p
        i += 1
    if out is None:
        return R.const(np.ones(R.batch_shape(a), dtype=np.int64))
    return out


class SeriesRing:
    """GF(p^k)[[t]] / (t^L)."""

    tail_ndim = 2

    def __init__(self, field, L):
        if L < 1:
            raise ValueError("truncation length must be positive")
        self.field = field
        self.p = field.p
        self.k = field.k
        self.L = int(L)
        self._nfft = sfft.next_fast_len(2 * self.L - 1, real=True)
        self._kfft = 2 * self.k - 1
        # x^k = sum red[i] x^i
        self._red = np.array([(-c) % self.p for c in field.modulus[:-1]], dtype=np.int64)

    def __repr__(self):
        return f"SeriesRing({self.field.label}, L={self.L})"

    # -- conversions ------------------------------------------------------

    def batch_shape(self, a):
        return np.shape(a)[:-2]

    def digits(self, codes):
        """Field codes (any shape) -> digit arrays (..., k)."""
        codes = np.asarray(codes, dtype=np.int64)
        F = self.field
        return np.stack([(codes >> (F.bits * i)) & F.digit_mask for i in range(self.k)], axis=-1)

    def codes(self, a):
        """Series (..., k, L) -> coefficient codes (..., L)."""
        a = np.asarray(a, dtype=np.int64)
        F = self.field
        out = np.zeros(a.shape[:-2] + (a.shape[-1],), dtype=np.int64)
        for i in range(self.k):
            out |= a[..., i, :] << (F.bits * i)
        return out

    def from_codes(self, codes):
        """Coefficient codes (..., L') -> series, zero padded or truncated to L."""
        codes = np.asarray(codes, dtype=np.int64)
        n = codes.shape[-1]
        if n < self.L:
            pad = np.zeros(codes.shape[:-1] + (self.L - n,), dtype=np.int64)
            codes = np.concatenate([codes, pad], axis=-1)
        else:
            codes = codes[..., :self.L]
        return np.moveaxis(self.digits(codes), -1, -2).copy()

    def const(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        out = np.zeros(codes.shape + (self.k, self.L), dtype=np.int64)
        out[..., :, 0] = self.digits(codes)
        return out

    def monomial(self, code, j, batch=()):
        out = np.zeros(tuple(batch) + (self.k, self.L), dtype=np.int64)
        if j < self.L:
            out[..., :, j] = self.digits(code)
        return out

    def zeros(self, batch=()):
        return np.zeros(tuple(batch) + (self.k, self.L), dtype=np.int64)

    def zeros_like(self, a):
        return np.zeros(np.shape(a), dtype=np.int64)

    # -- arithmetic -------------------------------------------------------

    def add(self, a, b):
        return (np.asarray(a) + np.asarray(b)) % self.p

    def sub(self, a, b):
        return (np.asarray(a) - np.asarray(b)) % self.p

    def neg(self, a):
        return (-np.asarray(a)) % self.p

    def _reduce_x(self, c):
        """Reduce a (..., 2k-1, L) digit grid mod the modulus and p."""
        k = self.k
        for d in range(c.shape[-2] - 1, k - 1, -1):
            top = c[..., d, :]
            if not top.any():
                continue
            for i, r in enumerate(self._red):
                if r:
                    c[..., d - k + i, :] += r * top
            c[..., d, :] = 0
            c[..., d - k:d, :] %= self.p
        return c[..., :k, :] % self.p

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        shape = np.broadcast_shapes(a.shape, b.shape)
        if self.k == 1:
            fa = sfft.rfft(a[..., 0, :].astype(np.float64), n=self._nfft, axis=-1)
            fb = sfft.rfft(b[..., 0, :].astype(np.float64), n=self._nfft, axis=-1)
            c = sfft.irfft(fa * fb, n=self._nfft, axis=-1)[..., :self.L]
            ci = np.rint(c).astype(np.int64)
            if np.abs(c - ci).max(initial=0.0) > 0.25:  # pragma: no cover
                raise ArithmeticError("FFT rounding error too large")
            return (ci % self.p)[..., None, :].reshape(shape)
        s = (self._kfft, self._nfft)
        fa = sfft.rfftn(a.astype(np.float64), s=s, axes=(-2, -1))
        fb = sfft.rfftn(b.astype(np.float64), s=s, axes=(-2, -1))
        c = sfft.irfftn(fa * fb, s=s, axes=(-2, -1))[..., :, :self.L]
        ci = np.rint(c).astype(np.int64)
        if np.abs(c - ci).max(initial=0.0) > 0.25:  # pragma: no cover
            raise ArithmeticError("FFT rounding error too large")
        return self._reduce_x(ci % self.p)

    def matmul(self, A, B):
        """Matrix product of series matrices A (r, s, k, L) and B (s, c, k, L).

        The contraction is done in the frequency domain, so only r*s + s*c
        forward and r*c inverse transforms are needed.
        """
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        s = (self._kfft, self._nfft)
        fa = sfft.rfftn(A.astype(np.float64), s=s, axes=(-2, -1))
        fb = sfft.rfftn(B.astype(np.float64), s=s, axes=(-2, -1))
        fc = np.einsum("rs...,sc...->rc...", fa, fb)
        c = sfft.irfftn(fc, s=s, axes=(-2, -1))[..., :, :self.L]
        ci = np.rint(c).astype(np.int64)
        if np.abs(c - ci).max(initial=0.0) > 0.25:  # pragma: no cover
            raise ArithmeticError("FFT rounding error too large")
        return self._reduce_x(ci % self.p)

    def mat_inv(self, A):
        """Inverse of a square series matrix whose constant term is invertible."""
        A = np.asarray(A, dtype=np.int64)
        n = A.shape[0]
        F = self.field
        A0 = self.codes(A[..., :, :1])[..., 0]
        X = self.const(gf.mat_inv(F, A0))
        two = self.const(np.where(np.eye(n, dtype=bool), 2 % self.p, 0))
        prec = 1
        while prec < self.L:
            X = self.matmul(X, self.sub(two, self.matmul(A, X)))
            prec *= 2
        return X

    def cmul(self, c, a):
        """Multiply by field constants ``c`` (codes, broadcast over the batch)."""
        a = np.asarray(a, dtype=np.int64)
        cd = self.digits(c)  # (..., k)
        if self.k == 1:
            return (cd[..., 0][..., None, None] * a) % self.p
        batch = np.broadcast_shapes(cd.shape[:-1], a.shape[:-2])
        grid = np.zeros(batch + (2 * self.k - 1, self.L), dtype=np.int64)
        for i in range(self.k):
            ci = cd[..., i][..., None]
            for j in range(self.k):
                grid[..., i + j, :] += ci * a[..., j, :]
        return self._reduce_x(grid % self.p)

    def frob(self, a, s=1):
        """a^(p^s), s >= 0: Frobenius on coefficients and t -> t^(p^s)."""
        if s < 0:
            raise ValueError("series Frobenius needs s >= 0")
        if s == 0:
            return np.asarray(a)
        codes = self.field.frob(self.codes(a), s)
        step = self.p ** s
        out = np.zeros_like(codes)
        n = -(-self.L // step)
        out[..., ::step] = codes[..., :n]
        return self.from_codes(out)

    def inv(self, a):
        """Inverse of a unit (nonzero constant term) by Newton iteration."""
        a = np.asarray(a, dtype=np.int64)
        c0 = self.codes(a[..., :, :1])[..., 0]
        if np.any(c0 == 0):
            raise ZeroDivisionError("series is not a unit")
        b = self.const(self.field.inv(c0))
        prec = 1
        two = self.const(np.full(c0.shape, 2 % self.p, dtype=np.int64))
        while prec < self.L:
            b = self.mul(b, self.sub(two, self.mul(a, b)))
            prec *= 2
        return b

    def pow(self, a, e):
        if e < 0:
            return pow_by_frobenius(self, self.inv(a), -e)
        return pow_by_frobenius(self, a, e)

    def is_zero(self, a):
        return ~np.asarray(a).any(axis=(-2, -1))

    def constant_term(self, a):
        return self.codes(np.asarray(a)[..., :, :1])[..., 0]

    def valuation(self, a):
        """t-adic valuation; L means "zero to the working precision"."""
        a = np.asarray(a)
        nz = a.any(axis=-2)
        has = nz.any(axis=-1)
        first = np.argmax(nz, axis=-1)
        return np.where(has, first, self.L)

    def ratio(self, num, den):
        """num / den for proportional vectors with a unit coordinate in den."""
        num = np.asarray(num)
        den = np.asarray(den)
        c0 = self.constant_term(den)  # (n, *batch)
        if c0.ndim > 1:
            flat = c0.reshape(c0.shape[0], -1)
            ok = (flat != 0).all(axis=1)
        else:
            ok = c0 != 0
        if not ok.any():
            raise ZeroDivisionError("no unit coordinate in the denominator")
        j = int(np.argmax(ok))
        return self.mul(num[j], self.inv(den[j]))


class DualRing:
    """base[eps]/(eps^2) with Frobenius killing the eps part.

    Evaluating a formula at x + eps*h yields f(x) + eps * Df(x) h, where the
    derivative treats every Frobenius-twisted occurrence as a constant
    (d(u^p) = 0 in characteristic p).
    """

    def __init__(self, base):
        self.base = base
        self.field = base.field
        self.tail_ndim = base.tail_ndim + 1
        self._ax = -(base.tail_ndim + 1)

    def __repr__(self):
        return f"DualRing({self.base!r})"

    def part(self, a, i):
        return np.take(np.asarray(a), i, axis=self._ax)

    def make(self, a0, a1):
        return np.stack([np.asarray(a0), np.asarray(a1)], axis=self._ax)

    def batch_shape(self, a):
        return np.shape(a)[:np.ndim(a) - self.tail_ndim]

    def const(self, codes):
        z = self.base.const(codes)
        return self.make(z, np.zeros_like(z))

    def zeros_like(self, a):
        return np.zeros(np.shape(a), dtype=np.int64)

    def add(self, a, b):
        B = self.base
        return self.make(B.add(self.part(a, 0), self.part(b, 0)), B.add(self.part(a, 1), self.part(b, 1)))

    def sub(self, a, b):
        B = self.base
        return self.make(B.sub(self.part(a, 0), self.part(b, 0)), B.sub(self.part(a, 1), self.part(b, 1)))

    def neg(self, a):
        B = self.base
        return self.make(B.neg(self.part(a, 0)), B.neg(self.part(a, 1)))

    def mul(self, a, b):
        B = self.base
        a0, a1 = self.part(a, 0), self.part(a, 1)
        b0, b1 = self.part(b, 0), self.part(b, 1)
        return self.make(B.mul(a0, b0), B.add(B.mul(a0, b1), B.mul(a1, b0)))

    def cmul(self, c, a):
        B = self.base
        return self.make(B.cmul(c, self.part(a, 0)), B.cmul(c, self.part(a, 1)))

    def frob(self, a, s=1):
        if s == 0:
            return np.asarray(a)
        B = self.base
        f = B.frob(self.part(a, 0), s)
        return self.make(f, np.zeros_like(f))

    def inv(self, a):
        B = self.base
        i0 = B.inv(self.part(a, 0))
        return self.make(i0, B.neg(B.mul(self.part(a, 1), B.mul(i0, i0))))

    def pow(self, a, e):
        if e < 0:
            return pow_by_frobenius(self, self.inv(a), -e)
        return pow_by_frobenius(self, a, e)

    def is_zero(self, a):
        return self.base.is_zero(self.part(a, 0)) & self.base.is_zero(self.part(a, 1))

    def ratio(self, num, den):
        num = np.asarray(num)
        den = np.asarray(den)
        B = self.base
        d0 = self.part(den, 0)
        if isinstance(B, SeriesRing):
            c0 = B.constant_term(d0)
        else:
            c0 = d0
        flat = np.asarray(c0).reshape(c0.shape[0], -1)
        ok = (flat != 0).all(axis=1)
        if not ok.any():
            raise ZeroDivisionError("no unit coordinate in the denominator")
        j = int(np.argmax(ok))
        return self.mul(num[j], self.inv(den[j]))
