"""Cartan data, Killing form and fundamental groups of the simple root systems.

Conventions:

* ``cartan[i][j] = (alpha_i, alpha_j) / d_i`` so that the symmetrized matrix
  ``d_i * cartan[i][j]`` is the Gram matrix of the simple roots, with short
  roots of square length 2.
* Weights are stored in fundamental-weight coordinates.  The simple root
  ``alpha_i`` then has coordinates given by column ``i`` of the Cartan matrix.
* ``weight_to_root`` has the fundamental weights as columns, written in the
  simple-root basis (it is the inverse of the Cartan matrix).
* ``gram_weights[i][j] = (lambda_i, lambda_j) = d_i * weight_to_root[i][j]``.

Node labels follow Bourbaki.  For D_n the spin weights are lambda_{n-1}, lambda_n.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

__all__ = [
    "RootSystemType",
    "RootSystemData",
    "DomainError",
    "build",
    "killing",
    "substitute_excluded",
    "parse_type",
]

Matrix = tuple[tuple[int, ...], ...]
QMatrix = tuple[tuple[Fraction, ...], ...]


class DomainError(ValueError):
    """Input outside the domain of an operation."""


_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 3,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True, order=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_OK:
            raise DomainError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or not _RANK_OK[self.family](self.rank):
            raise DomainError(f"rank {self.rank} not allowed for family {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def parse_type(s: str) -> RootSystemType:
    """'E6' -> RootSystemType('E', 6)."""
    s = s.strip().upper()
    return RootSystemType(s[0], int(s[1:]))


@dataclass(frozen=True)
class Pi1:
    """Fundamental group descriptor: invariant factors and generating weights.

    ``generators`` are indices of fundamental weights (0-based) whose classes
    generate the cyclic factors, in the order of ``invariant_factors``.
    """

    invariant_factors: tuple[int, ...]
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1


@dataclass(frozen=True)
class RootSystemData:
    type: RootSystemType
    cartan: Matrix
    d: tuple[int, ...]
    weight_to_root: QMatrix
    gram_weights: QMatrix
    pi1: Pi1
    n_positive_roots: tuple[int, ...] = field(default=())

    @property
    def rank(self) -> int:
        return self.type.rank

    def root(self, i: int) -> tuple[int, ...]:
        """alpha_i in fundamental-weight coordinates."""
        return tuple(self.cartan[k][i] for k in range(self.rank))

    def roots(self) -> list[tuple[int, ...]]:
        return [self.root(i) for i in range(self.rank)]

    def symmetrized(self) -> Matrix:
        return tuple(tuple(self.d[i] * self.cartan[i][j] for j in range(self.rank)) for i in range(self.rank))

    def pair(self, v, w) -> Fraction:
        return killing(self, v, w)

    def __str__(self):
        return str(self.type)


# --- Cartan matrices ------------------------------------------------------


def _zeros(n):
    return [[0] * n for _ in range(n)]


def _chain(n):
    a = _zeros(n)
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _cartan(t: RootSystemType) -> list[list[int]]:
    n = t.rank
    f = t.family
    if f == "A":
        return _chain(n)
    if f == "B":
        # alpha_n short: (alpha_{n-1}, alpha_n) = -2, d = (2,..,2,1)
        a = _chain(n)
        a[n - 2][n - 1] = -1
        a[n - 1][n - 2] = -2
        return a
    if f == "C":
        a = _chain(n)
        a[n - 2][n - 1] = -2
        a[n - 1][n - 2] = -1
        return a
    if f == "D":
        a = _chain(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if f == "E":
        a = _zeros(n)
        edges = [(1, 3), (2, 4), (3, 4)] + [(k, k + 1) for k in range(4, n)]
        for i in range(n):
            a[i][i] = 2
        for i, j in edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return a
    if f == "F":
        # symmetrized [[4,-2,0,0],[-2,4,-2,0],[0,-2,2,-1],[0,0,-1,2]], d=(2,2,1,1)
        return [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    if f == "G":
        # symmetrized [[2,-3],[-3,6]], d=(1,3)
        return [[2, -3], [-1, 2]]
    raise DomainError(f)


def _symmetrizers(t: RootSystemType) -> list[int]:
    n = t.rank
    return {
        "B": [2] * (n - 1) + [1],
        "C": [1] * (n - 1) + [2],
        "F": [2, 2, 1, 1],
        "G": [1, 3],
    }.get(t.family, [1] * n)


# --- weight_to_root: closed forms for the classical families --------------


def _w2r_closed(t: RootSystemType) -> list[list[Fraction]] | None:
    """Entry rules for A/B/C/D; row i, column j (0-based), column = lambda_j."""
    n = t.rank
    F = Fraction
    if t.family == "A":
        def e(i, j):
            i, j = i + 1, j + 1
            return F(i * (n - j + 1), n + 1) if i <= j else F(j * (n - i + 1), n + 1)
    elif t.family == "B":
        def e(i, j):
            if j == n - 1:
                return F(i + 1, 2)
            return F(min(i, j) + 1)
    elif t.family == "C":
        def e(i, j):
            if i == n - 1:
                return F(j + 1, 2)
            return F(min(i, j) + 1)
    elif t.family == "D":
        def e(i, j):
            spin = (n - 2, n - 1)
            if i in spin and j in spin:
                return F(n, 4) if i == j else F(n - 2, 4)
            if j in spin:
                return F(i + 1, 2)
            if i in spin:
                return F(j + 1, 2)
            return F(min(i, j) + 1)
    else:
        return None
    return [[e(i, j) for j in range(n)] for i in range(n)]


def _inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def _det(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


# Displayed weight-to-root matrices for the exceptional types (rows = simple
# roots, columns = fundamental weights).  F4 is omitted on purpose; its
# inverse Cartan matrix is computed instead (see tests for the comparison).
_F = Fraction
_EXCEPTIONAL_W2R = {
    ("E", 6): [
        [_F(4, 3), 1, _F(5, 3), 2, _F(4, 3), _F(2, 3)],
        [1, 2, 2, 3, 2, 1],
        [_F(5, 3), 2, _F(10, 3), 4, _F(8, 3), _F(4, 3)],
        [2, 3, 4, 6, 4, 2],
        [_F(4, 3), 2, _F(8, 3), 4, _F(10, 3), _F(5, 3)],
        [_F(2, 3), 1, _F(4, 3), 2, _F(5, 3), _F(4, 3)],
    ],
    ("E", 7): [
        [2, 2, 3, 4, 3, 2, 1],
        [2, _F(7, 2), 4, 6, _F(9, 2), 3, _F(3, 2)],
        [3, 4, 6, 8, 6, 4, 2],
        [4, 6, 8, 12, 9, 6, 3],
        [3, _F(9, 2), 6, 9, _F(15, 2), 5, _F(5, 2)],
        [2, 3, 4, 6, 5, 4, 2],
        [1, _F(3, 2), 2, 3, _F(5, 2), 2, _F(3, 2)],
    ],
    ("E", 8): [
        [4, 5, 7, 10, 8, 6, 4, 2],
        [5, 8, 10, 15, 12, 9, 6, 3],
        [7, 10, 14, 20, 16, 12, 8, 4],
        [10, 15, 20, 30, 24, 18, 12, 6],
        [8, 12, 16, 24, 20, 15, 10, 5],
        [6, 9, 12, 18, 15, 12, 8, 4],
        [4, 6, 8, 12, 10, 8, 6, 3],
        [2, 3, 4, 6, 5, 4, 3, 2],
    ],
    ("G", 2): [[2, 3], [1, 2]],
}


def _pi1(t: RootSystemType) -> Pi1:
    n = t.rank
    f = t.family
    if f == "A":
        return Pi1((n + 1,), (n - 1,))
    if f == "B":
        return Pi1((2,), (n - 1,))
    if f == "C":
        # lambda_i lies in the root lattice exactly when i is even
        return Pi1((2,), (n - 1,) if n % 2 else (0,))
    if f == "D":
        if n % 2 == 0:
            return Pi1((2, 2), (n - 2, n - 1))
        return Pi1((4,), (n - 1,))
    if f == "E" and n == 6:
        return Pi1((3,), (5,))
    if f == "E" and n == 7:
        return Pi1((2,), (6,))
    return Pi1((), ())


def _n_positive_roots(t: RootSystemType) -> tuple[int, ...]:
    """Number of positive roots that are (long, short) - used by the dimension formula."""
    n = t.rank
    f = t.family
    if f == "A":
        return (n * (n + 1) // 2, 0)
    if f == "B":
        return (n * (n - 1), n)
    if f == "C":
        return (n, n * (n - 1))
    if f == "D":
        return (n * (n - 1), 0)
    if f == "E":
        return ({6: 36, 7: 63, 8: 120}[n], 0)
    if f == "F":
        return (12, 12)
    return (3, 3)


def build(t: RootSystemType | str) -> RootSystemData:
    """Assemble all Lie-theoretic constants for one simple type."""
    if isinstance(t, str):
        t = parse_type(t)
    return _build(t)


@lru_cache(maxsize=None)
def _build(t: RootSystemType) -> RootSystemData:
    a = _cartan(t)
    d = _symmetrizers(t)
    n = t.rank
    w2r = _w2r_closed(t)
    if w2r is None:
        shown = _EXCEPTIONAL_W2R.get((t.family, t.rank))
        w2r = [[Fraction(x) for x in row] for row in shown] if shown else _inverse(a)
    gram = [[d[i] * w2r[i][j] for j in range(n)] for i in range(n)]
    return RootSystemData(
        type=t,
        cartan=tuple(tuple(r) for r in a),
        d=tuple(d),
        weight_to_root=tuple(tuple(r) for r in w2r),
        gram_weights=tuple(tuple(r) for r in gram),
        pi1=_pi1(t),
        n_positive_roots=_n_positive_roots(t),
    )


def killing(data: RootSystemData, v, w) -> Fraction:
    """(v, w) for vectors in fundamental-weight coordinates."""
    n = data.rank
    if len(v) != n or len(w) != n:
        raise DomainError("dimension mismatch")
    g = data.gram_weights
    total = Fraction(0)
    for i, vi in enumerate(v):
        if vi:
            row = g[i]
            for j, wj in enumerate(w):
                if wj:
                    total += vi * row[j] * wj
    return total


_EXCLUDED = {
    # family -> {ell: replacement}
    "B": {4: lambda n: [RootSystemType("A", 1)] * n},
    "C": {4: lambda n: [RootSystemType("D", n)]},
    "F": {4: lambda n: [RootSystemType("D", 4)]},
    "G": {
        3: lambda n: [RootSystemType("A", 2)],
        6: lambda n: [RootSystemType("A", 2)],
        4: lambda n: [RootSystemType("A", 3)],
    },
}


def substitute_excluded(t: RootSystemType, ell: int) -> list[RootSystemType] | None:
    """Replacement root system (as a list of simple factors) or None if (t, ell) is fine."""
    rule = _EXCLUDED.get(t.family, {}).get(ell)
    return rule(t.rank) if rule else None
