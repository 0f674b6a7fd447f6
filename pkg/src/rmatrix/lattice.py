"""Full-rank lattices between ell-multiples of the root lattice and the weight lattice.

Vectors live in fundamental-weight coordinates with exact rational entries.
Canonical identity of a lattice is the pair (denominator, column Hermite
normal form of the denominator-cleared basis).
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from .rootdata import DomainError, RootSystemData, killing

__all__ = [
    "IntegerLattice",
    "FiniteAbelianGroup",
    "root_lattice",
    "weight_lattice",
    "ell_lattice_round",
    "ell_lattice_square",
    "cent_q",
    "intersect",
    "quotient",
    "ResourceError",
]


class ResourceError(RuntimeError):
    """A configured size bound was exceeded."""


Vec = tuple[Fraction, ...]


def _vec(v) -> Vec:
    return tuple(Fraction(x) for x in v)


def _denominator(cols: Iterable[Vec]) -> int:
    return reduce(lcm, (x.denominator for c in cols for x in c), 1)


def _int_matrix(cols: Sequence[Vec], den: int, n: int) -> Matrix:
    return Matrix(n, len(cols), lambda i, j: int(cols[j][i] * den))


def _hnf_columns(m: Matrix) -> Matrix:
    if m.rank() < m.rows:
        raise DomainError("lattice is not of full rank")
    h = hermite_normal_form(m)
    if h.cols != m.rows:
        raise DomainError("unexpected Hermite form shape")
    return h


class IntegerLattice:
    """Subgroup of Q^n spanned by rational column vectors, required to have full rank."""

    __slots__ = ("ambient", "generators", "_den", "_hnf", "__dict__")

    def __init__(self, ambient: RootSystemData, generators: Iterable[Sequence]):
        self.ambient = ambient
        gens = [_vec(g) for g in generators]
        n = ambient.rank
        if any(len(g) != n for g in gens):
            raise DomainError("generator dimension mismatch")
        self.generators = tuple(gens)
        den = _denominator(gens)
        self._den = den
        self._hnf = _hnf_columns(_int_matrix(gens, den, n))

    # canonical data ------------------------------------------------------
    @cached_property
    def key(self) -> tuple:
        return (str(self.ambient.type), self._den, tuple(self._hnf))

    @cached_property
    def basis(self) -> tuple[Vec, ...]:
        n = self.ambient.rank
        return tuple(
            tuple(Fraction(int(self._hnf[i, j]), self._den) for i in range(n)) for j in range(n)
        )

    def basis_matrix(self) -> Matrix:
        """n x n sympy matrix with the canonical basis as columns (rational)."""
        n = self.ambient.rank
        return Matrix(n, n, lambda i, j: self.basis[j][i])

    @cached_property
    def covolume(self) -> Fraction:
        """|det| of a basis relative to the fundamental-weight lattice."""
        d = self._hnf.det()
        return abs(Fraction(int(d), self._den ** self.ambient.rank))

    def __eq__(self, other):
        return isinstance(other, IntegerLattice) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        cols = ", ".join("(" + ",".join(str(x) for x in c) + ")" for c in self.basis)
        return f"IntegerLattice({self.ambient.type}; {cols})"

    # membership ----------------------------------------------------------
    def coords(self, v) -> tuple[Fraction, ...]:
        """Coordinates of v in the canonical basis (rational)."""
        sol = self.basis_matrix().LUsolve(Matrix([Fraction(x) for x in v]))
        return tuple(Fraction(x) for x in sol)

    def __contains__(self, v) -> bool:
        return all(c.denominator == 1 for c in self.coords(v))

    def contains_lattice(self, other: "IntegerLattice") -> bool:
        return all(b in self for b in other.basis)

    def is_integral(self) -> bool:
        """True iff the lattice is contained in the weight lattice."""
        return self._den == 1

    def scaled(self, c) -> "IntegerLattice":
        c = Fraction(c)
        return IntegerLattice(self.ambient, [[c * x for x in b] for b in self.basis])

    def __add__(self, other: "IntegerLattice") -> "IntegerLattice":
        _same_ambient(self, other)
        return IntegerLattice(self.ambient, list(self.basis) + list(other.basis))

    def pair(self, v, w) -> Fraction:
        return killing(self.ambient, v, w)


def _same_ambient(a: IntegerLattice, b: IntegerLattice) -> None:
    if a.ambient.type != b.ambient.type:
        raise DomainError("lattices live over different root systems")


def _unit(n: int, i: int, c=1) -> list[int]:
    v = [0] * n
    v[i] = c
    return v


def weight_lattice(data: RootSystemData) -> IntegerLattice:
    n = data.rank
    return IntegerLattice(data, [_unit(n, i) for i in range(n)])


def root_lattice(data: RootSystemData) -> IntegerLattice:
    return IntegerLattice(data, data.roots())


def _base_vectors(data: RootSystemData, base: str) -> list[tuple]:
    if base == "roots":
        return data.roots()
    if base == "weights":
        n = data.rank
        return [tuple(_unit(n, i)) for i in range(n)]
    raise DomainError(f"base must be 'roots' or 'weights', not {base!r}")


def ell_round(data: RootSystemData, ell: int) -> list[int]:
    """ell_i = ell / gcd(ell, 2 d_i)."""
    return [ell // gcd(ell, 2 * d) for d in data.d]


def ell_square(data: RootSystemData, ell: int) -> list[int]:
    """ell_[i] = ell / gcd(ell, d_i)."""
    return [ell // gcd(ell, d) for d in data.d]


def ell_lattice_round(data: RootSystemData, base: str, ell: int) -> IntegerLattice:
    vs = _base_vectors(data, base)
    return IntegerLattice(data, [[c * x for x in v] for c, v in zip(ell_round(data, ell), vs)])


def ell_lattice_square(data: RootSystemData, base: str, ell: int) -> IntegerLattice:
    vs = _base_vectors(data, base)
    return IntegerLattice(data, [[c * x for x in v] for c, v in zip(ell_square(data, ell), vs)])


def _integer_kernel_mod(a: Matrix, modulus: int) -> list[list[int]]:
    """Generators of {x in Z^n : a x = 0 mod modulus} for an integer m x n matrix a."""
    n = a.cols
    s, _u, v = smith_normal_decomp(a)
    gens = []
    for i in range(n):
        si = int(s[i, i]) if i < s.rows else 0
        step = modulus // gcd(si, modulus)  # gcd(0, m) = m gives step 1
        gens.append([int(v[r, i]) * step for r in range(n)])
    return gens


def cent_q(data: RootSystemData, lam1: IntegerLattice, lam2: IntegerLattice, ell: int) -> IntegerLattice:
    """{eta in lam1 : (eta, lam) in ell*Z for every lam in lam2}."""
    _same_ambient(lam1, lam2)
    if not lam1.contains_lattice(lam2):
        raise DomainError("cent_q needs lam2 inside lam1")
    if not lam1.is_integral():
        raise DomainError("cent_q needs lam1 inside the weight lattice")
    b1 = lam1.basis
    b2 = lam2.basis
    # P[j][i] = (b1_i, b2_j) / ell ; need P x integral
    p = [[killing(data, u, w) / ell for u in b1] for w in b2]
    den = reduce(lcm, (x.denominator for row in p for x in row), 1)
    a = Matrix(len(b2), len(b1), lambda j, i: int(p[j][i] * den))
    xs = _integer_kernel_mod(a, den)
    n = data.rank
    gens = [[sum(x[i] * b1[i][r] for i in range(n)) for r in range(n)] for x in xs]
    return IntegerLattice(data, gens)


def _dual_basis(lat: IntegerLattice) -> list[list[Fraction]]:
    """Columns of B^{-T} (dual under the standard dot product)."""
    inv = lat.basis_matrix().inv().T
    n = lat.ambient.rank
    return [[Fraction(inv[i, j]) for i in range(n)] for j in range(n)]


def intersect(l1: IntegerLattice, l2: IntegerLattice) -> IntegerLattice:
    """l1 ∩ l2, computed as the dual of the sum of duals."""
    _same_ambient(l1, l2)
    dual_sum = IntegerLattice(l1.ambient, _dual_basis(l1) + _dual_basis(l2))
    return IntegerLattice(l1.ambient, _dual_basis(dual_sum))


# --- finite abelian groups --------------------------------------------------


class FiniteAbelianGroup:
    """Product of cyclic groups Z_{d_1} x ... x Z_{d_r}, d_1 | d_2 | ...

    Elements are tuples of residues.  When the group arises as a lattice
    quotient, ``project`` and ``lift`` translate between lattice vectors and
    group elements.
    """

    def __init__(self, invariant_factors: Sequence[int], project=None, lift=None, names=None):
        facs = tuple(int(d) for d in invariant_factors)
        if any(d < 2 for d in facs):
            raise DomainError("invariant factors must be at least 2 (omit trivial factors)")
        for a, b in zip(facs, facs[1:]):
            if b % a:
                raise DomainError("invariant factors must form a divisibility chain")
        self.invariant_factors = facs
        self._project = project
        self._lift = lift
        self.names = names

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        return cls((n,) if n > 1 else ())

    @classmethod
    def from_factors(cls, factors: Sequence[int]) -> "FiniteAbelianGroup":
        """Normalize any list of cyclic orders into invariant-factor form."""
        s = smith_normal_decomp(Matrix.diag(*factors))[0] if factors else Matrix()
        facs = sorted(int(abs(s[i, i])) for i in range(s.rows))
        return cls(tuple(d for d in facs if d > 1))

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def __len__(self):
        return self.order

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(d) for d in self.invariant_factors)))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.elements())

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x) -> tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(x, self.invariant_factors))

    def sub(self, x, y) -> tuple[int, ...]:
        return self.add(x, self.neg(y))

    def scale(self, c: int, x) -> tuple[int, ...]:
        return tuple((c * a) % d for a, d in zip(x, self.invariant_factors))

    def normalize(self, x) -> tuple[int, ...]:
        return tuple(int(a) % d for a, d in zip(x, self.invariant_factors))

    def element_order(self, x) -> int:
        o = 1
        for a, d in zip(x, self.invariant_factors):
            o = lcm(o, d // gcd(a, d))
        return o

    def generators(self) -> list[tuple[int, ...]]:
        return [tuple(_unit(self.rank, i)) for i in range(self.rank)]

    def project(self, v) -> tuple[int, ...]:
        if self._project is None:
            raise DomainError("group has no lattice projection")
        return self._project(v)

    def lift(self, x) -> tuple[Fraction, ...]:
        if self._lift is None:
            raise DomainError("group has no lattice lift")
        return self._lift(x)

    def span(self, gens: Iterable) -> frozenset:
        """Subgroup generated by gens, as a frozenset of elements."""
        seen = {self.zero()}
        frontier = [self.zero()]
        gens = [self.normalize(g) for g in gens]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.add(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def subgroups(self) -> list[frozenset]:
        """All subgroups; each is generated by at most ``rank`` elements."""
        elems = self.elements()
        found = {frozenset({self.zero()})}
        for r in range(1, self.rank + 1):
            for combo in itertools.combinations(elems, r):
                found.add(self.span(combo))
        return sorted(found, key=lambda h: (len(h), sorted(h)))

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __repr__(self):
        if not self.invariant_factors:
            return "Z1"
        return "x".join(f"Z{d}" for d in self.invariant_factors)


def quotient(l1: IntegerLattice, l2: IntegerLattice) -> FiniteAbelianGroup:
    """l1 / l2 for l2 of finite index in l1, with projection and lift maps."""
    _same_ambient(l1, l2)
    if not l1.contains_lattice(l2):
        raise DomainError("quotient needs l2 inside l1")
    n = l1.ambient.rank
    b1 = l1.basis_matrix()
    b1_inv = b1.inv()
    t = b1_inv * l2.basis_matrix()
    t = Matrix(n, n, lambda i, j: int(t[i, j]))
    s, u, _v = smith_normal_decomp(t)
    diag = [abs(int(s[i, i])) for i in range(n)]
    if 0 in diag:
        raise DomainError("infinite index")
    keep = [i for i in range(n) if diag[i] > 1]
    # sympy does not promise the divisibility order we want; sort by factor
    keep.sort(key=lambda i: diag[i])
    facs = [diag[i] for i in keep]
    u_inv = u.inv()
    pm = u * b1_inv

    def project(v):
        c = pm * Matrix([Fraction(x) for x in v])
        out = []
        for i in keep:
            x = Fraction(c[i])
            if x.denominator != 1:
                raise DomainError("vector not in the numerator lattice")
            out.append(int(x) % diag[i])
        return tuple(out)

    def lift(x):
        full = [0] * n
        for i, xi in zip(keep, x):
            full[i] = int(xi)
        w = b1 * (u_inv * Matrix(full))
        return tuple(Fraction(w[i]) for i in range(n))

    return FiniteAbelianGroup(facs, project=project, lift=lift)
