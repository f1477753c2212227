"""Exact arithmetic in GF(p^k) for p in {2, 3}.

Elements are plain integers ("codes") so that whole arrays of them can be
pushed through numpy table lookups.  The code of a0 + a1 x + ... is

    p = 2:  sum a_i 2^i        (one bit per coefficient)
    p = 3:  sum a_i 4^i        (two bits per trit, 00/01/10)

Addition is carried out directly on the packed codes (xor, or a bit-sliced
trit adder), multiplication through log/antilog tables.  Zero is always
code 0 and one is always code 1.
"""

from __future__ import annotations

import functools
import itertools
import math

import numpy as np

from . import _accel

__all__ = [
    "FieldCtx",
    "FieldElem",
    "mk_field",
    "ReducibleModulus",
    "is_irreducible",
    "least_irreducible",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "mat_inv",
    "det",
    "mat_mul",
    "linearize",
]

# Past this many table slots we refuse to build a field.
MAX_TABLE = 1 << 22

_M55 = 0x5555555555555555


class ReducibleModulus(ValueError):
    """Raised when a user-supplied modulus factors over GF(p)."""

    def __init__(self, modulus, factor):
        self.modulus = tuple(modulus)
        self.factor = tuple(factor)
        super().__init__(f"modulus {self.modulus} is reducible; divisible by {self.factor}")


# ---------------------------------------------------------------------------
# polynomials over GF(p) as coefficient tuples, low degree first


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _monic_polys(p, d):
    """All monic polynomials of exact degree d, low degree first."""
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


def is_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree <= deg/2.

    Returns (True, None) or (False, factor).
    """
    m = _trim(modulus)
    n = len(m) - 1
    if n < 1:
        return False, tuple(m)
    for d in range(1, n // 2 + 1):
        for f in _monic_polys(p, d):
            if not _pmod(m, f, p):
                return False, f
    return True, None


def least_irreducible(p, k):
    """Least monic irreducible of degree k, ordered by the base-p integer
    sum c_i p^i (so the high coefficients are compared first)."""
    if k == 1:
        return (0, 1)
    for value in range(p ** k, 2 * p ** k):
        low = [(value // p ** i) % p for i in range(k)]
        cand = tuple(low) + (1,)
        if cand[0] == 0:
            continue
        if is_irreducible(cand, p)[0]:
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------


class FieldCtx:
    """The finite field GF(p^k) with a fixed monic irreducible modulus.

    Instances are immutable and cached by :func:`mk_field`; compare them with
    ``is`` or ``==`` freely.
    """

    def __init__(self, p, k, modulus):
        if p not in (2, 3):
            raise ValueError("only characteristic 2 and 3 are supported")
        if k < 1:
            raise ValueError("degree must be positive")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        if k > 1:
            ok, factor = is_irreducible(modulus, p)
            if not ok:
                raise ReducibleModulus(modulus, factor)
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p ** k
        self.bits = 1 if p == 2 else 2
        self.digit_mask = (1 << self.bits) - 1
        self.slots = 1 << (self.bits * k)
        if self.slots > MAX_TABLE:
            raise ValueError(f"GF({p}^{k}) is too large for table arithmetic")
        self.full_mask = self.slots - 1
        self.zero = 0
        self.one = 1
        self.label = f"GF({p}^{k})" if k > 1 else f"GF({p})"
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _build_tables(self):
        p, k, Q = self.p, self.k, self.order
        # dense <-> code
        dense = np.arange(Q, dtype=np.int64)
        codes = np.zeros(Q, dtype=np.int64)
        rem = dense.copy()
        for i in range(k):
            codes |= (rem % p) << (self.bits * i)
            rem //= p
        self.elements = codes
        index = np.full(self.slots, -1, dtype=np.int64)
        index[codes] = dense
        self._index = index
        # x^k = -(m_0 + ... + m_{k-1} x^{k-1}); red[c] = c * x^k reduced
        low = self.modulus[:-1]
        red = []
        for c in range(p):
            coeffs = [(-c * m) % p for m in low]
            red.append(self._pack(coeffs))
        self._red = np.array(red, dtype=np.int64)
        self.x = self._pack([0, 1]) if k > 1 else 0
        if k == 1:
            self.x = 0
        # primitive element and log tables
        gen = self._find_primitive()
        self.gen = gen
        exp = np.zeros(2 * (Q - 1) + 1, dtype=np.int64)
        # sequential powers for a block, then vectorised block multiplies
        block = max(1, int(math.isqrt(Q - 1)))
        cur = np.array([1], dtype=np.int64)
        first = np.zeros(block, dtype=np.int64)
        for i in range(block):
            first[i] = cur[0]
            cur = self._polymul(cur, np.array([gen]))
        step = cur[0]  # gen^block
        row = first
        pos = 0
        while pos < Q - 1:
            n = min(block, Q - 1 - pos)
            exp[pos:pos + n] = row[:n]
            pos += n
            row = self._polymul(row, np.full(block, step, dtype=np.int64))
        exp[Q - 1:2 * (Q - 1)] = exp[:Q - 1]
        exp[2 * (Q - 1)] = exp[0]
        log = np.zeros(self.slots, dtype=np.int64)
        log[exp[:Q - 1]] = np.arange(Q - 1, dtype=np.int64)
        if len(np.unique(exp[:Q - 1])) != Q - 1:  # pragma: no cover
            raise AssertionError("generator search failed")
        self._exp = exp
        self._log = log

    def _pack(self, coeffs):
        code = 0
        for i, c in enumerate(coeffs):
            code |= (int(c) % self.p) << (self.bits * i)
        return code

    def _find_primitive(self):
        Q = self.order
        if Q == 2:
            return 1
        facs = _prime_factors(Q - 1)
        for d in range(2, Q):
            g = int(self.elements[d])
            if all(self._slow_pow(g, (Q - 1) // r) != 1 for r in facs):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    def _slow_pow(self, g, e):
        r = np.array([1], dtype=np.int64)
        b = np.array([g], dtype=np.int64)
        while e:
            if e & 1:
                r = self._polymul(r, b)
            b = self._polymul(b, b)
            e >>= 1
        return int(r[0])

    def _mulx(self, a):
        top = (a >> (self.bits * (self.k - 1))) & self.digit_mask
        a = (a << self.bits) & self.full_mask
        return self.add(a, self._red[top])

    def _polymul(self, a, b):
        """Schoolbook product, used only while the tables are built."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        acc = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        shifted = np.broadcast_to(a, acc.shape).copy()
        for i in range(self.k):
            d = (b >> (self.bits * i)) & self.digit_mask
            if self.p == 2:
                acc = np.where(d == 1, acc ^ shifted, acc)
            else:
                acc = np.where(d == 1, self.add(acc, shifted), acc)
                acc = np.where(d == 2, self.sub(acc, shifted), acc)
            if self.k > 1:
                shifted = self._mulx(shifted)
        return acc

    # -- basic ops (vectorised) ---------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a0 = a & _M55
        a1 = (a >> 1) & _M55
        b0 = b & _M55
        b1 = (b >> 1) & _M55
        t = (a0 | b1) ^ (a1 | b0)
        z0 = (a1 | b1) ^ t
        z1 = (a0 | b0) ^ t
        return z0 | (z1 << 1)

    def neg(self, a):
        if self.p == 2:
            return a
        a = np.asarray(a, dtype=np.int64)
        return ((a & _M55) << 1) | ((a >> 1) & _M55)

    def sub(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        return _accel.table_mul(a, b, self._log, self._exp)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + self.label)
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        """a**e for any integer e (negative exponents need a != 0)."""
        a = np.asarray(a, dtype=np.int64)
        e = int(e)
        if e == 0:
            return np.ones_like(a)
        n = self.order - 1
        if e < 0 and np.any(a == 0):
            raise ZeroDivisionError("negative power of zero")
        r = self._exp[(self._log[a] * (e % n)) % n]
        if e > 0:
            r = np.where(a == 0, 0, r)
        return r

    def frob(self, a, s=1):
        """a**(p**s); s may be negative and is reduced modulo k."""
        s %= self.k
        if s == 0:
            return np.asarray(a, dtype=np.int64)
        return self.pow(a, self.p ** s)

    def scal(self, c, a):
        """Multiply by an integer (an element of the prime field)."""
        c %= self.p
        if c == 0:
            return np.zeros_like(np.asarray(a, dtype=np.int64))
        if c == 1:
            return np.asarray(a, dtype=np.int64)
        return self.neg(a)

    def sum(self, a, axis=0):
        a = np.asarray(a, dtype=np.int64)
        a = np.moveaxis(a, axis, 0)
        out = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            out = self.add(out, row)
        return out

    def dot(self, a, b, axis=-1):
        """sum_i a_i b_i along ``axis`` (broadcasting)."""
        return self.sum(self.mul(a, b), axis=axis)

    # -- ring protocol shared with the series and dual-number rings ---------

    tail_ndim = 0

    @property
    def field(self):
        return self

    def cmul(self, c, a):
        return self.mul(c, a)

    def zeros(self, shape=()):
        return np.zeros(shape, dtype=np.int64)

    def zeros_like(self, a):
        return np.zeros(np.shape(a), dtype=np.int64)

    def const(self, codes):
        return np.asarray(codes, dtype=np.int64)

    def is_zero(self, a):
        return np.asarray(a) == 0

    def ratio(self, num, den):
        """num / den for proportional vectors (coordinates on axis 0).

        Divides at the first coordinate where ``den`` is nonzero; returns 0
        where ``den`` vanishes identically.
        """
        num = np.asarray(num, dtype=np.int64)
        den = np.asarray(den, dtype=np.int64)
        nz = den != 0
        first = np.argmax(nz, axis=0)
        d = np.take_along_axis(den, first[None], axis=0)[0]
        n = np.take_along_axis(num, first[None], axis=0)[0]
        ok = nz.any(axis=0)
        return np.where(ok, self.mul(n, self.inv(np.where(ok, d, 1))), 0)

    # -- conversions ------------------------------------------------------

    def coeffs(self, a):
        """Coefficient vector (low degree first) of a single element."""
        a = int(a)
        return [(a >> (self.bits * i)) & self.digit_mask for i in range(self.k)]

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise ValueError("too many coefficients")
        return self._pack(coeffs)

    def to_dense(self, a):
        return self._index[np.asarray(a, dtype=np.int64)]

    def from_dense(self, d):
        return self.elements[np.asarray(d, dtype=np.int64)]

    def is_valid(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a >= 0) & (a < self.slots) & (self._index[np.clip(a, 0, self.slots - 1)] >= 0)

    def random(self, rng, size=None, nonzero=False):
        lo = 1 if nonzero else 0
        return self.elements[rng.integers(lo, self.order, size=size)]

    def element(self, code):
        return FieldElem(self, code)

    def log(self, a):
        return self._log[np.asarray(a, dtype=np.int64)]

    def in_subfield(self, a, j):
        """Boolean mask: a lies in the subfield GF(p^j)  (j must divide k)."""
        if self.k % j:
            raise ValueError(f"GF({self.p}^{j}) is not a subfield of {self.label}")
        a = np.asarray(a, dtype=np.int64)
        return self.frob(a, j) == a

    def element_order(self, a):
        a = int(a)
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.order - 1
        return n // math.gcd(n, int(self._log[a]))

    def __repr__(self):
        return f"FieldCtx({self.label}, modulus={self.modulus})"

    def __reduce__(self):
        return (mk_field, (self.p, self.k, self.modulus))


class FieldElem:
    """Convenience scalar wrapper around a code; arithmetic stays exact."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx, code):
        self.ctx = ctx
        self.code = int(code)

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise ValueError("elements of different fields")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(self.ctx.scal(int(other), 1)) if int(other) % self.ctx.p else 0
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.sub(self.code, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.sub(o, self.code))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.div(self.code, o))

    def __pow__(self, e):
        return FieldElem(self.ctx, self.ctx.pow(self.code, e))

    def frob(self, s=1):
        return FieldElem(self.ctx, self.ctx.frob(self.code, s))

    def inverse(self):
        return FieldElem(self.ctx, self.ctx.inv(self.code))

    @property
    def coeffs(self):
        return self.ctx.coeffs(self.code)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx is other.ctx and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"{self.ctx.label}<{'+'.join(f'{c}x^{i}' for i, c in enumerate(self.coeffs) if c) or '0'}>"


@functools.lru_cache(maxsize=None)
def _mk_field(p, k, modulus):
    return FieldCtx(p, k, modulus)


def mk_field(p, k, modulus=None):
    """GF(p^k); the modulus defaults to the least irreducible polynomial."""
    if p not in (2, 3):
        raise ValueError("only characteristic 2 and 3 are supported")
    if k < 1:
        raise ValueError("degree must be positive")
    if modulus is None:
        modulus = least_irreducible(p, k)
    modulus = tuple(int(c) % p for c in modulus)
    return _mk_field(p, k, modulus)


def embed(x, source, target):
    """Image of ``x`` (codes of ``source``) under the fixed embedding into ``target``."""
    return embedding_table(source, target)[source.to_dense(x)]


@functools.lru_cache(maxsize=None)
def embedding_table(source, target):
    """Dense-indexed table of the embedding source -> target.

    The generator x of ``source`` goes to the least (by code) root of the
    source modulus in ``target``, so the map is reproducible.
    """
    if source.p != target.p or target.k % source.k:
        raise ValueError(f"{source.label} does not embed in {target.label}")
    if source is target:
        return source.elements.copy()
    if source.k == 1:
        return source.elements.copy()
    # evaluate the source modulus on every element of target
    vals = np.zeros(target.order, dtype=np.int64)
    xs = target.elements
    powx = np.ones(target.order, dtype=np.int64)
    for c in source.modulus:
        vals = target.add(vals, target.scal(c, powx))
        powx = target.mul(powx, xs)
    roots = xs[vals == 0]
    root = int(roots.min())
    # image of sum a_i x^i
    out = np.zeros(source.order, dtype=np.int64)
    rpow = 1
    src = source.elements
    for i in range(source.k):
        d = (src >> (source.bits * i)) & source.digit_mask
        for c in range(1, source.p):
            out = np.where(d == c, target.add(out, target.scal(c, rpow)), out)
        rpow = int(target.mul(rpow, root))
    return out


# ---------------------------------------------------------------------------
# dense linear algebra over a FieldCtx (small matrices; rows are numpy arrays)


def mat_mul(F, A, B):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for j in range(A.shape[1]):
        out = F.add(out, F.mul(A[:, j:j + 1], B[j:j + 1, :]))
    return out[:, 0] if vec else out


def rref(F, M):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref needs a matrix")
    rows, cols = R.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.mul(R[r], F.inv(R[r, c]))
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            R[nzr] = F.sub(R[nzr], F.mul(col[nzr, None], R[r][None, :]))
        piv.append(c)
        r += 1
    return R, piv


def rank(F, M):
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F, M):
    """Basis (as rows) of {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(F, M)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = F.neg(R[i, f])
    return basis


def solve(F, M, b):
    """One solution of M x = b, or None if inconsistent."""
    M = np.asarray(M, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    aug = np.concatenate([M, b[:, None]], axis=1)
    R, piv = rref(F, aug)
    n = M.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = R[i, n]
    return x


def mat_inv(F, M):
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("square matrix required")
    aug = np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def det(F, M):
    R = np.array(M, dtype=np.int64, copy=True)
    n = R.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(R[c:, c])[0]
        if len(nz) == 0:
            return 0
        i = c + nz[0]
        if i != c:
            R[[c, i]] = R[[i, c]]
            d = int(F.neg(d))
        piv = R[c, c]
        d = int(F.mul(d, piv))
        inv = F.inv(piv)
        below = R[c + 1:, c]
        nzr = np.nonzero(below)[0] + c + 1
        if len(nzr):
            f = F.mul(R[nzr, c], inv)
            R[nzr] = F.sub(R[nzr], F.mul(f[:, None], R[c][None, :]))
    return d


# ---------------------------------------------------------------------------


def _prime_coords(F, v):
    """GF(p) coordinates of codes (last axis k): digit i of each code."""
    v = np.asarray(v, dtype=np.int64)
    return np.stack([(v >> (F.bits * i)) & F.digit_mask for i in range(F.k)], axis=-1)


def linearize(conditions, field):
    """GF(p)-basis of the common solutions of semilinear conditions.

    ``conditions`` is a list; each condition is a list of terms and is read as
    sum(term(x)) = 0.  A term is any object with ``apply(x)`` returning the
    image of the coordinate vector ``x`` (codes of ``field``, coordinates on
    axis 0, one column per vector) and attributes
    ``n_in``/``n_out``; :class:`dlcurves.exterior.SemilinearMap` qualifies.
    A condition may also be a bare callable together with explicit sizes,
    given as (callable, n_in, n_out).

    The solution set is only GF(p)-linear, so it is returned as an array of
    GF(p)-basis vectors (rows, codes in ``field``); it has p**len(rows)
    elements.
    """
    F = field
    normalized = []
    n_in = None
    for cond in conditions:
        if isinstance(cond, tuple) and callable(cond[0]):
            fn, ni, no = cond
        else:
            terms = list(cond)
            if not terms:
                continue
            ni = terms[0].n_in
            no = terms[0].n_out
            for t in terms:
                if t.n_in != ni or t.n_out != no:
                    raise ValueError("inconsistent dimensions inside one condition")

            def fn(x, terms=terms, no=no):
                acc = np.zeros((no,) + x.shape[1:], dtype=np.int64)
                for t in terms:
                    acc = F.add(acc, t.apply(x))
                return acc
        if n_in is None:
            n_in = ni
        elif ni != n_in:
            raise ValueError("conditions disagree on the domain dimension")
        normalized.append((fn, no))
    if n_in is None:
        raise ValueError("empty system: domain dimension unknown; pass at least one condition")
    # GF(p)-basis of the domain: g^j e_i  (g = x, the polynomial generator)
    basis = []
    powers = [F.from_coeffs([0] * j + [1]) for j in range(F.k)]
    for i in range(n_in):
        for j in range(F.k):
            v = np.zeros(n_in, dtype=np.int64)
            v[i] = powers[j]
            basis.append(v)
    basis = np.array(basis, dtype=np.int64)
    blocks = []
    for fn, no in normalized:
        img = np.asarray(fn(basis.T), dtype=np.int64).T  # (n_in*k, no)
        blocks.append(_prime_coords(F, img).reshape(len(basis), no * F.k))
    Fp = mk_field(F.p, 1)
    if blocks:
        M = np.concatenate(blocks, axis=1).T  # rows = GF(p) equations
        K = nullspace(Fp, M)
    else:
        K = np.eye(len(basis), dtype=np.int64)
    # back to GF(p^k) vectors
    out = np.zeros((len(K), n_in), dtype=np.int64)
    for r, kv in enumerate(K):
        acc = np.zeros(n_in, dtype=np.int64)
        for t, c in enumerate(kv):
            if c:
                acc = F.add(acc, F.scal(int(c), basis[t]))
        out[r] = acc
    return out
