"""Point enumeration: ambient projective scans and the v-scan.

The ambient scan walks every normalized point of P(W)(F_{q^n}) and keeps the
members.  The v-scan walks the line <v> of the flag instead and solves the
remaining conditions, which are additive and phi^s-semilinear in the plane
partner, as a linear system over the prime field.  Both strategies refuse to
run when the estimated work exceeds the budget of the chosen mode.
"""

from __future__ import annotations

import dataclasses
import itertools

import numpy as np

from .. import _accel, gf
from .model import normalize

__all__ = [
    "BUDGETS",
    "BudgetExceeded",
    "PointSet",
    "projective_size",
    "ambient_chunks",
    "estimate_cost",
    "enumerate_points",
    "semilinear_kernel_dims",
    "sample_points",
]

BUDGETS = {
    "ci": {"ambient": 10 ** 8, "vscan": 10 ** 7},
    "full": {"ambient": 10 ** 8, "vscan": 10 ** 8},
    "longrun": {"ambient": 10 ** 9, "vscan": 10 ** 9},
}


class BudgetExceeded(RuntimeError):
    def __init__(self, strategy, estimate, budget):
        self.strategy = strategy
        self.estimate = int(estimate)
        self.budget = int(budget)
        super().__init__(f"{strategy} scan needs about {self.estimate:.3e} candidates; "
                         f"budget is {self.budget:.1e}")


def projective_size(Q, n_coords):
    return (Q ** n_coords - 1) // (Q - 1)


def ambient_chunks(F, n_coords, chunk=1 << 20):
    """Yield (n_coords, B) blocks covering P^{n_coords-1}(F), first nonzero coordinate 1."""
    Q = F.order
    for lead in range(n_coords):
        r = n_coords - 1 - lead
        total = Q ** r
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            w = np.zeros((n_coords, idx.size), dtype=np.int64)
            w[lead] = 1
            rest = idx
            for t in range(n_coords - 1, lead, -1):
                w[t] = F.elements[rest % Q]
                rest = rest // Q
            yield w


@dataclasses.dataclass
class PointSet:
    """Normalized points (N, dim) over ``field`` with their exact degrees over F_q."""

    model: object
    field: object
    n: int
    coords: np.ndarray
    degrees: np.ndarray
    strategy: str
    candidates: int

    def __len__(self):
        return self.coords.shape[0]

    def count_by_degree(self):
        out = {}
        for d in range(1, self.n + 1):
            if self.n % d == 0:
                out[d] = int(np.sum(self.degrees == d))
        return out

    def exact(self, d):
        return self.coords[self.degrees == d]

    def keys(self):
        return {tuple(int(c) for c in row) for row in self.coords}

    def columns(self, d=None):
        """Points as a (dim, N) array, optionally restricted to exact degree d."""
        pts = self.coords if d is None else self.exact(d)
        return pts.T.copy()


def _finish(model, F, n, pts, strategy, candidates):
    if pts.shape[1] == 0:
        coords = np.zeros((0, model.dim), dtype=np.int64)
        return PointSet(model, F, n, coords, np.zeros(0, dtype=np.int64), strategy, candidates)
    pts = normalize(F, pts)
    coords = np.unique(pts.T, axis=0)
    degrees = model.exact_degree(F, coords.T)
    return PointSet(model, F, n, coords, degrees, strategy, candidates)


def estimate_cost(model, n, strategy):
    Q = model.q ** n
    if strategy == "ambient":
        return projective_size(Q, model.dim)
    if strategy == "vscan":
        if not hasattr(model, "vscan_conditions"):
            raise ValueError(f"v-scan is not available for family {model.family}")
        return projective_size(Q, model.vscan_dim)
    raise ValueError(f"unknown strategy {strategy!r}")


def enumerate_points(model, n, strategy="ambient", mode="ci", budget=None, chunk=1 << 20):
    """All points of the curve with coordinates in F_{q^n}, exact degrees labeled."""
    if n < 1:
        raise ValueError("extension degree must be positive")
    est = estimate_cost(model, n, strategy)
    limit = budget if budget is not None else BUDGETS[mode][strategy]
    if est > limit:
        raise BudgetExceeded(strategy, est, limit)
    F = model.field(n)
    if strategy == "ambient":
        found = []
        for w in ambient_chunks(F, model.dim, chunk):
            mask = model.is_member(F, w)
            if mask.any():
                found.append(w[:, mask])
        pts = np.concatenate(found, axis=1) if found else np.zeros((model.dim, 0), dtype=np.int64)
        return _finish(model, F, n, pts, strategy, est)
    pts = []
    for v in ambient_chunks(F, model.vscan_dim, min(chunk, 1 << 15)):
        pts.append(_vscan_block(model, F, v))
    pts = np.concatenate(pts, axis=1) if pts else np.zeros((model.dim, 0), dtype=np.int64)
    return _finish(model, F, n, pts, strategy, est)


# ---------------------------------------------------------------------------
# v-scan machinery


def _gfp_basis(F, n, batch):
    """GF(p)-basis of F^n as a (n, batch, n*k) stack of vectors g^j e_i."""
    k = F.k
    Y = np.zeros((n, batch, n * k), dtype=np.int64)
    for i in range(n):
        for j in range(k):
            Y[i, :, i * k + j] = 1 << (F.bits * j)
    return Y


def _system_matrices(F, cond, n, batch):
    """Matrices (batch, n_eq*k, n*k) over GF(p) of the semilinear conditions."""
    Y = _gfp_basis(F, n, batch)
    vals = cond(Y)  # (n_eq, batch, n*k)
    digits = np.stack([(vals >> (F.bits * i)) & F.digit_mask for i in range(F.k)], axis=1)
    # (n_eq, k, batch, nk) -> (batch, n_eq*k, nk)
    return np.moveaxis(digits.reshape(-1, batch, n * F.k), 1, 0)


def semilinear_kernel_dims(F, cond, n, batch):
    """GF(p)-dimension of the solution space for each member of the batch."""
    M = _system_matrices(F, cond, n, batch)
    return n * F.k - _accel.batched_rank_modp(M, F.p), M


def _pack_rows(F, rows, n):
    """GF(p) coordinate rows (r, n*k) -> F vectors (r, n)."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, n, F.k)
    out = np.zeros(rows.shape[:2], dtype=np.int64)
    for j in range(F.k):
        out |= rows[:, :, j] << (F.bits * j)
    return out


def _projective_combos(F, basis):
    """All projective points of span(basis) (rows over F)."""
    r = basis.shape[0]
    Q = F.order
    for coeffs in itertools.product(range(Q), repeat=r):
        c = F.elements[np.array(coeffs, dtype=np.int64)]
        nz = np.nonzero(c)[0]
        if nz.size == 0 or c[nz[0]] != 1:
            continue
        vec = np.zeros(basis.shape[1], dtype=np.int64)
        for ci, b in zip(c, basis):
            if ci:
                vec = F.add(vec, F.mul(ci, b))
        yield vec


def _solutions(model, F, v, M_row):
    """Plane partners y (mod v) for one v, from its GF(p) system matrix."""
    Fp = gf.mk_field(F.p, 1)
    n = model.vscan_dim
    null = gf.nullspace(Fp, M_row)
    if len(null) == 0:
        return []
    vecs = _pack_rows(F, null, n)
    # F-basis of the kernel, then a complement of <v>
    basis = [v.copy()]
    for y in vecs:
        if gf.rank(F, np.array(basis + [y])) > len(basis):
            basis.append(y)
    comp = np.array(basis[1:], dtype=np.int64)
    if comp.shape[0] == 0:
        return []
    return list(_projective_combos(F, comp))


def _vscan_block(model, F, v):
    keep = model.vscan_filter(F, v)
    v = v[:, keep]
    if v.shape[1] == 0:
        return np.zeros((model.dim, 0), dtype=np.int64)
    cond = model.vscan_conditions(F, v)
    dims, M = semilinear_kernel_dims(F, cond, model.vscan_dim, v.shape[1])
    hits = np.nonzero(dims > F.k)[0]
    out = []
    for b in hits:
        for y in _solutions(model, F, v[:, b], M[b]):
            w = model.point_from_pair(F, v[:, b][:, None], y[:, None])
            if w[:, 0].any() and model.is_member(F, w)[0]:
                out.append(w[:, 0])
    if not out:
        return np.zeros((model.dim, 0), dtype=np.int64)
    return np.stack(out, axis=1)


def sample_points(model, n, trials, seed, batch=4096):
    """Seeded random v-scan: returns (points (dim, N) normalized and deduplicated, stats)."""
    if not hasattr(model, "vscan_conditions"):
        raise ValueError(f"v-scan is not available for family {model.family}")
    F = model.field(n)
    rng = np.random.default_rng(seed)
    seen = {}
    done = 0
    hits = 0
    while done < trials:
        b = min(batch, trials - done)
        v = F.random(rng, size=(model.vscan_dim, b))
        v = v[:, (v != 0).any(axis=0)]
        done += b
        if v.shape[1] == 0:
            continue
        v = normalize(F, v)
        pts = _vscan_block(model, F, v)
        if pts.shape[1]:
            hits += pts.shape[1]
            pts = normalize(F, pts)
            for col in pts.T:
                seen.setdefault(tuple(int(c) for c in col), col)
    keys = sorted(seen)
    coords = np.array([seen[k] for k in keys], dtype=np.int64).reshape(-1, model.dim)
    stats = {"trials": int(done), "hits": int(hits), "distinct": len(keys),
             "hit_rate": hits / done if done else 0.0}
    return coords.T.copy(), stats
