"""Closed-form group orders and point counts for the three families."""

from __future__ import annotations

import dataclasses
from fractions import Fraction

__all__ = ["CountTable", "expected_counts", "family_params"]

FAMILIES = ("su3", "sz", "ree")


def family_params(family, m, p=None):
    """(p, q0, q, d) for a family; su3 takes p in {2, 3} (default 2)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if family == "su3":
        p = 2 if p is None else p
        if p not in (2, 3):
            raise ValueError("su3 needs p in {2, 3}")
        return p, p ** m, p ** (2 * m), 3
    if family == "sz":
        if p not in (None, 2):
            raise ValueError("sz lives in characteristic 2")
        return 2, 2 ** m, 2 ** (2 * m + 1), 4
    if family == "ree":
        if p not in (None, 3):
            raise ValueError("ree lives in characteristic 3")
        return 3, 3 ** m, 3 ** (2 * m + 1), 6
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


@dataclasses.dataclass(frozen=True)
class CountTable:
    family: str
    p: int
    q0: int
    q: int
    d: int
    G: int
    B: int
    T: int
    points: dict  # exact degree -> count, for n = 1, d, d+1

    def expected(self, n):
        """Exact-degree-n count: closed form for n in {1, d, d+1}, 0 for 1 < n < d, else None."""
        if n in self.points:
            return self.points[n]
        if 1 < n < self.d:
            return 0
        return None

    def embedding_degree(self):
        return Fraction(self.G, self.B * self.T)

    def degree_identity(self):
        """|G^sigma| / (|B^sigma| |T^sigma|) equals the degree of the curve."""
        return self.embedding_degree() == curve_degree(self.family, self.q0, self.q)

    def as_dict(self):
        out = dataclasses.asdict(self)
        out["points"] = {str(k): v for k, v in self.points.items()}
        return out


def curve_degree(family, q0, q):
    if family == "su3":
        return q0 + 1
    if family == "sz":
        return q + 2 * q0 + 1
    return (q + 3 * q0 + 1) * (q + 1)


def expected_counts(family, m, p=None):
    p, q0, q, d = family_params(family, m, p)
    if family == "su3":
        G = q0 ** 3 * (q0 ** 3 + 1) * (q - 1)
        B = q0 ** 3 * (q - 1)
        T = q - q0 + 1
        pts = {1: q0 ** 3 + 1, 3: q0 ** 3 * (q0 + 1) * (q - 1), 4: q0 ** 3 * (q0 ** 3 + 1) * (q - 1)}
    elif family == "sz":
        G = q ** 2 * (q ** 2 + 1) * (q - 1)
        B = q ** 2 * (q - 1)
        T = q - 2 * q0 + 1
        pts = {1: q ** 2 + 1, 4: q ** 2 * (q + 2 * q0 + 1) * (q - 1), 5: q ** 2 * (q ** 2 + 1) * (q - 1)}
    else:
        G = q ** 3 * (q ** 3 + 1) * (q - 1)
        B = q ** 3 * (q - 1)
        T = q - 3 * q0 + 1
        pts = {1: q ** 3 + 1, 6: q ** 3 * (q + 3 * q0 + 1) * (q ** 2 - 1), 7: q ** 3 * (q ** 3 + 1) * (q - 1)}
    return CountTable(family, p, q0, q, d, G, B, T, pts)
