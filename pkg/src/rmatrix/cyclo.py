"""Exact arithmetic in cyclotomic fields Q(zeta_M).

An element is stored as a reduced integer numerator vector over the power
basis 1, z, ..., z^(phi(M)-1) modulo the M-th cyclotomic polynomial, plus a
positive common denominator.  Elements of different orders are combined in
Q(zeta_lcm).  Nothing here ever touches floating point except ``__complex__``,
which is for display.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "CycNum",
    "cyclotomic_poly",
    "root_of_unity",
    "q_pow",
    "qint",
    "qfact",
    "euler_phi",
]


def _poly_divmod_int(num: list[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (low degree first) by a monic divisor."""
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    rem = num[:dn] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Coefficients of Phi_M, lowest degree first.

    Computed by dividing x^M - 1 by Phi_d for every proper divisor d of M.
    """
    if M < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_poly(d))
            if any(rem):
                raise ArithmeticError("cyclotomic division left a remainder")
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


@lru_cache(maxsize=None)
def euler_phi(M: int) -> int:
    return len(cyclotomic_poly(M)) - 1


@lru_cache(maxsize=None)
def _powers(M: int) -> tuple[tuple[int, ...], ...]:
    """Rows are z^k reduced mod Phi_M for k = 0 .. M-1."""
    phi = euler_phi(M)
    cp = cyclotomic_poly(M)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(M):
        rows.append(tuple(cur))
        # multiply by z
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cp[j]
    return tuple(rows)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        num = [c // g for c in num]
        den //= g
    if not any(num):
        den = 1
    return tuple(num), den


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} as a rational")


class CycNum:
    """Element of Q(zeta_M) with zeta_M = exp(2 pi i / M)."""

    __slots__ = ("order", "num", "den", "_key")

    def __init__(self, order: int, coeffs: Iterable = (0,), den: int = 1):
        """``coeffs[k]`` multiplies z^k; any length is accepted and reduced."""
        coeffs = [_as_fraction(c) for c in coeffs]
        common = den
        for c in coeffs:
            common = lcm(common, c.denominator)
        ints = [int(c * common) for c in coeffs]
        self._set(order, _reduce(order, ints), common)

    def _set(self, order: int, num: list[int], den: int) -> None:
        self.order = order
        self.num, self.den = _normalize(num, den)
        self._key = None

    @classmethod
    def _raw(cls, order: int, num: list[int], den: int) -> "CycNum":
        obj = cls.__new__(cls)
        obj._set(order, num, den)
        return obj

    # constructors ------------------------------------------------------
    @classmethod
    def rational(cls, r, order: int = 1) -> "CycNum":
        r = _as_fraction(r)
        num = [0] * euler_phi(order)
        num[0] = r.numerator
        return cls._raw(order, num, r.denominator)

    @classmethod
    def zeta(cls, M: int, k: int = 1) -> "CycNum":
        """zeta_M^k."""
        return cls._raw(M, list(_powers(M)[k % M]), 1)

    # embedding ---------------------------------------------------------
    def lift(self, L: int) -> "CycNum":
        """Same number, expressed in Q(zeta_L); requires order | L."""
        if L == self.order:
            return self
        if L % self.order:
            raise ValueError(f"order {self.order} does not divide {L}")
        step = L // self.order
        rows = _powers(L)
        out = [0] * euler_phi(L)
        for k, c in enumerate(self.num):
            if c:
                row = rows[(k * step) % L]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycNum._raw(L, out, self.den)

    def _common(self, other: "CycNum") -> tuple["CycNum", "CycNum"]:
        if self.order == other.order:
            return self, other
        L = lcm(self.order, other.order)
        return self.lift(L), other.lift(L)

    @staticmethod
    def _coerce(x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        return CycNum.rational(x)

    # field operations ---------------------------------------------------
    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        if a.den == b.den:
            num = [x + y for x, y in zip(a.num, b.num)]
            return CycNum._raw(a.order, num, a.den)
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return CycNum._raw(a.order, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.order, [-c for c in self.num], self.den)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            r = _as_fraction(other)
            return CycNum._raw(self.order, [c * r.numerator for c in self.num], self.den * r.denominator)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._common(other)
        phi = len(a.num)
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        conv[i + j] += x * y
        return CycNum._raw(a.order, _fold(a.order, conv), a.den * b.den)

    __rmul__ = __mul__

    def inv(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        s = _poly_inverse_mod([Fraction(c) for c in self.num], [Fraction(c) for c in cyclotomic_poly(self.order)])
        return CycNum(self.order, [c * self.den for c in s])

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inv()
        e = abs(e)
        out = CycNum.rational(1, self.order)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self) -> "CycNum":
        """Complex conjugate, i.e. z -> z^-1."""
        return self.galois(-1)

    def galois(self, a: int) -> "CycNum":
        """Apply z -> z^a (a coprime to the order)."""
        M = self.order
        if gcd(a, M) != 1:
            raise ValueError("Galois exponent must be a unit")
        rows = _powers(M)
        out = [0] * len(self.num)
        for k, c in enumerate(self.num):
            if c:
                for j, r in enumerate(rows[(k * a) % M]):
                    out[j] += c * r
        return CycNum._raw(M, out, self.den)

    # predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        return hash(self.canonical())

    def canonical(self) -> tuple:
        """(minimal order, numerators, denominator): equal numbers give equal keys."""
        if self._key is None:
            x = self
            changed = True
            while changed and x.order > 1:
                changed = False
                for p in _prime_factors(x.order):
                    y = x._descend(x.order // p)
                    if y is not None:
                        x, changed = y, True
                        break
            self._key = (x.order, x.num, x.den)
        return self._key

    def _descend(self, m: int) -> "CycNum | None":
        """Express self in Q(zeta_m) if it lies there."""
        phi_m = euler_phi(m)
        cols = [CycNum.zeta(m, j).lift(self.order).num for j in range(phi_m)]
        sol = _solve_exact(cols, self.num)
        if sol is None:
            return None
        return CycNum(m, [c / self.den for c in sol])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.num[0], self.den)

    def __complex__(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * z**k for k, c in enumerate(self.num)) / self.den

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.num):
            if c:
                terms.append(f"{Fraction(c, self.den)}*z^{k}" if k else f"{Fraction(c, self.den)}")
        body = " + ".join(terms) or "0"
        return f"CycNum[{self.order}]({body})"


def _reduce(M: int, coeffs: list[int]) -> list[int]:
    phi = euler_phi(M)
    if len(coeffs) <= phi:
        return coeffs + [0] * (phi - len(coeffs))
    rows = _powers(M)
    out = [0] * phi
    for k, c in enumerate(coeffs):
        if c:
            for j, r in enumerate(rows[k % M]):
                if r:
                    out[j] += c * r
    return out


def _fold(M: int, conv: list[int]) -> list[int]:
    phi = euler_phi(M)
    out = conv[:phi]
    if len(conv) > phi:
        rows = _powers(M)
        for k in range(phi, len(conv)):
            c = conv[k]
            if c:
                for j, r in enumerate(rows[k % M]):
                    if r:
                        out[j] += c * r
    return out


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """Extended Euclid in Q[x]: returns s with s*a = 1 mod m."""
    r0, r1 = _trim(list(m)), _trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while any(r1):
        q, r = _poly_divmod_frac(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1 or r0[0] == 0:
        raise ZeroDivisionError("element is not invertible")
    c = r0[0]
    return [x / c for x in s0]


def _poly_divmod_frac(num, den):
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    lead = den[-1]
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        c = num[-1] / lead
        q[shift] = c
        for j, d in enumerate(den):
            num[shift + j] -= c * d
        num.pop()
        _trim(num)
        if len(num) < len(den):
            break
    return q, _trim(num or [Fraction(0)])


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _solve_exact(cols: list[tuple[int, ...]], rhs: tuple[int, ...]) -> list[Fraction] | None:
    """Solve sum_j x_j cols[j] = rhs over Q; None if inconsistent."""
    n = len(cols)
    rows = len(rhs)
    aug = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][n] != 0 for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = aug[i][n]
    return sol


def root_of_unity(turns) -> CycNum:
    """exp(2 pi i * turns) for rational ``turns``, at its exact order."""
    t = _as_fraction(turns)
    return CycNum.zeta(t.denominator, t.numerator)


def q_pow(ell: int, a) -> CycNum:
    """q^a = exp(2 pi i a / ell)."""
    return root_of_unity(_as_fraction(a) / ell)


def qint(ell: int, n: int, base_exponent=1) -> CycNum:
    """Quantum integer [n]_v = (v^n - v^-n)/(v - v^-1) with v = q^base_exponent.

    Evaluated as the Laurent polynomial v^(n-1) + v^(n-3) + ... + v^(1-n), so it
    never divides and is valid even where v - v^-1 vanishes.
    """
    if n < 0:
        return -qint(ell, -n, base_exponent)
    b = _as_fraction(base_exponent)
    total = CycNum.rational(0)
    for j in range(n):
        total = total + q_pow(ell, b * (n - 1 - 2 * j))
    return total


def qfact(ell: int, n: int, base_exponent=1) -> CycNum:
    """[n]_v! = [1]_v [2]_v ... [n]_v, with [0]! = 1."""
    out = CycNum.rational(1)
    for k in range(1, n + 1):
        out = out * qint(ell, k, base_exponent)
    return out
