"""Certified zero tests for sums in Z[zeta_M] via a completely split prime.

Pick a prime p = 1 (mod M).  Reducing modulo each prime of Z[zeta_M] above p
sends zeta_M to one of the phi(M) primitive M-th roots of unity in F_p, so an
algebraic integer x maps to a vector of phi(M) residues.  If every residue is
zero then p^phi(M) divides the norm of x; when p exceeds a bound B on all
complex absolute values |sigma(x)|, the norm is below p^phi(M), hence x = 0.
Conversely x = 0 gives zero residues, so the test is exact.

Callers scale rational coefficients to integers, track an absolute-value bound
for every quantity they compare, and pass it to :func:`field_for`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .cyclo import CycNum, euler_phi

__all__ = ["ModularField", "field_for", "encode"]

# residues stay below 2^25, so a product is below 2^50 and sums of up to
# 2^12 products fit comfortably in int64
_MAX_PRIME = 1 << 25


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primitive_root_of_order(M: int, p: int) -> int:
    factors = [q for q in range(2, M + 1) if M % q == 0 and all(q % r for r in range(2, q))]
    for g in range(2, p):
        r = pow(g, (p - 1) // M, p)
        if all(pow(r, M // q, p) != 1 for q in factors):
            return r
    raise ArithmeticError("no primitive root found")


class ModularField:
    """All phi(M) reductions of Z[zeta_M] modulo primes above one split prime p."""

    def __init__(self, M: int, p: int):
        if (p - 1) % M:
            raise ValueError("p must be 1 mod M")
        self.M = M
        self.p = p
        self.phi = euler_phi(M)
        r = _primitive_root_of_order(M, p) if M > 1 else 1
        exps = [j for j in range(1, M + 1) if gcd(j, M) == 1]
        self.roots = np.array([pow(r, j, p) for j in exps], dtype=np.int64)
        # zeta^e under each embedding, e in [0, M)
        self.zeta_table = np.array(
            [[pow(int(x), e, p) for x in self.roots] for e in range(M)], dtype=np.int64
        ).reshape(M, self.phi)
        # Vandermonde for power-basis coefficient vectors of length phi
        self.vander = np.array(
            [[pow(int(x), i, p) for x in self.roots] for i in range(self.phi)], dtype=np.int64
        ).reshape(self.phi, self.phi)

    def zeta(self, exps) -> np.ndarray:
        """Residues of zeta_M^e, shape exps.shape + (phi,)."""
        return self.zeta_table[np.asarray(exps) % self.M]

    def from_coeffs(self, coeffs: np.ndarray) -> np.ndarray:
        """Integer coefficient vectors (..., phi) to residues (..., phi)."""
        c = np.asarray(coeffs, dtype=object) % self.p
        c = c.astype(np.int64)
        return (c @ self.vander) % self.p

    def mod(self, a: np.ndarray) -> np.ndarray:
        return a % self.p


@lru_cache(maxsize=None)
def _prime_above(M: int, lower: int) -> int:
    k = lower // M + 1
    while True:
        p = k * M + 1
        if p > lower and _is_prime(p):
            if p >= _MAX_PRIME:
                raise OverflowError("bound too large for the modular zero test")
            return p
        k += 1


@lru_cache(maxsize=64)
def _field(M: int, p: int) -> ModularField:
    return ModularField(M, p)


def field_for(M: int, bound) -> ModularField:
    """A split prime field for order M certifying |sigma(x)| <= bound."""
    lower = max(int(bound) + 1, 1 << 20)
    return _field(M, _prime_above(M, lower))


def encode(values: Sequence[CycNum], M: int) -> tuple[np.ndarray, int, int]:
    """Common-denominator integer coefficients of values lifted to order M.

    Returns (coeffs with shape (len, phi), denominator D, l1 bound L) where
    L bounds sum |coeff| of every scaled entry, hence every |sigma(D * v)|.
    """
    lifted = [v.lift(M) for v in values]
    D = lcm(1, *(v.den for v in lifted))
    phi = euler_phi(M)
    out = np.zeros((len(lifted), phi), dtype=object)
    L = 0
    for i, v in enumerate(lifted):
        s = D // v.den
        row = [c * s for c in v.num]
        out[i, : len(row)] = row
        L = max(L, sum(abs(c) for c in row))
    return out, D, L
