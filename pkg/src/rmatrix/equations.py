"""Group-equations and diamond-equations on functions g: G x G -> Q(zeta).

A function g solves the group-equations when each slice is idempotent under
convolution and both normalization sums equal one.  Pairing-form solutions
are (1/d) * omega(x, y) supported on H1 x H2 for a bihomomorphism omega.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Callable, Iterable, Sequence

import numpy as np

from .cyclo import CycNum, root_of_unity
from .lattice import FiniteAbelianGroup, ResourceError
from .modular import encode, field_for
from .rootdata import DomainError

__all__ = [
    "GFunction",
    "Pairing",
    "Diamond",
    "pairing_solution",
    "check_group_equations",
    "check_group_equations_reference",
    "enumerate_pairings",
    "check_diamond_equations",
    "check_diamond_equations_reference",
    "scaling_equations_only",
    "gcd_criterion",
    "cyclic_pairing",
    "cyclic_diamond",
    "subgroup_basis",
]

Elem = tuple[int, ...]


def _turns(x) -> Fraction:
    return Fraction(x) % 1


class GFunction:
    """Sparse table g(x, y); absent keys are zero."""

    def __init__(self, G: FiniteAbelianGroup, values: dict):
        self.G = G
        self.values = {k: v for k, v in values.items() if not v.is_zero()}

    def __call__(self, x, y) -> CycNum:
        return self.values.get((tuple(x), tuple(y)), _ZERO)

    def order(self) -> int:
        return lcm(1, *(v.order for v in self.values.values()))

    def lifted(self, M: int) -> dict:
        return {k: v.lift(M) for k, v in self.values.items()}

    def __eq__(self, other):
        return isinstance(other, GFunction) and self.G == other.G and self.values == other.values

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def __repr__(self):
        return f"GFunction({self.G}, {len(self.values)} nonzero)"


_ZERO = CycNum.rational(0)
_ONE = CycNum.rational(1)


def subgroup_basis(G: FiniteAbelianGroup, H: Iterable) -> tuple[Elem, ...]:
    """A minimal independent generating tuple of the subgroup H.

    The returned elements b_i satisfy prod(order(b_i)) == |H|, so H is the
    internal direct sum of the cyclic groups they generate.  Orders decrease
    along the tuple; a cyclic H is generated by its smallest element of
    maximal order.
    """
    H = frozenset(G.normalize(h) for h in H)
    if len(H) == 1:
        return ()
    primary = [_primary_basis(G, H, p) for p in _primes(len(H))]
    basis = []
    for i in range(max(len(b) for b in primary)):
        x = G.zero()
        for b in primary:
            if i < len(b):
                x = G.add(x, b[i])
        basis.append(x)
    if len(basis) == 1:
        basis = [min(h for h in H if G.element_order(h) == len(H))]
    if G.span(basis) != H or prod(G.element_order(b) for b in basis) != len(H):
        raise DomainError("subgroup has no basis of the expected size")
    return tuple(basis)


def _primes(n: int) -> list[int]:
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


def _primary_basis(G: FiniteAbelianGroup, H: frozenset, p: int) -> list[Elem]:
    """Basis of the p-part of H with decreasing orders.

    Standard construction: take x of maximal order p^e modulo the span S of
    the elements chosen so far; then p^e x = p^e t for some t in S, and x - t
    has order p^e with <x - t> ∩ S = 0.
    """
    Hp = sorted(h for h in H if _is_power(G.element_order(h), p))
    chosen: list[Elem] = []
    S = frozenset({G.zero()})
    while len(S) < len(Hp):
        best, best_e = None, -1
        for x in Hp:
            e, y = 0, x
            while y not in S:
                y = G.scale(p, y)
                e += 1
            if e > best_e:
                best, best_e = x, e
        pe = p**best_e
        target = G.scale(pe, best)
        t = min(s for s in S if G.scale(pe, s) == target)
        x = G.sub(best, t)
        chosen.append(x)
        S = G.span(chosen)
    return chosen


def _is_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _coordinates(G: FiniteAbelianGroup, basis: Sequence[Elem]) -> dict:
    """Map each element of span(basis) to its coefficient tuple."""
    orders = [G.element_order(b) for b in basis]
    out = {}
    for coeffs in itertools.product(*(range(o) for o in orders)):
        x = G.zero()
        for c, b in zip(coeffs, basis):
            x = G.add(x, G.scale(c, b))
        out[x] = coeffs
    return out


@dataclass(frozen=True)
class Pairing:
    """Bihomomorphism omega: H1 x H2 -> roots of unity, |H1| = |H2|.

    ``turns[i][j]`` is the exponent t with omega(b1_i, b2_j) = exp(2 pi i t).
    """

    G: FiniteAbelianGroup
    basis1: tuple[Elem, ...]
    basis2: tuple[Elem, ...]
    turns: tuple[tuple[Fraction, ...], ...]
    _c1: dict = field(init=False, repr=False, compare=False, hash=False)
    _c2: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        G = self.G
        c1 = _coordinates(G, self.basis1)
        c2 = _coordinates(G, self.basis2)
        if len(c1) != len(c2):
            raise DomainError("pairing needs |H1| == |H2|")
        o1 = [G.element_order(b) for b in self.basis1]
        o2 = [G.element_order(b) for b in self.basis2]
        if len(self.turns) != len(o1) or any(len(r) != len(o2) for r in self.turns):
            raise DomainError("turns matrix has the wrong shape")
        for i, row in enumerate(self.turns):
            for j, t in enumerate(row):
                if (t * o1[i]).denominator != 1 or (t * o2[j]).denominator != 1:
                    raise DomainError("omega is not well defined on the subgroup orders")
        object.__setattr__(self, "turns", tuple(tuple(_turns(t) for t in r) for r in self.turns))
        object.__setattr__(self, "_c1", c1)
        object.__setattr__(self, "_c2", c2)

    @property
    def d(self) -> int:
        return len(self._c1)

    @property
    def H1(self) -> frozenset:
        return frozenset(self._c1)

    @property
    def H2(self) -> frozenset:
        return frozenset(self._c2)

    def omega_turns(self, x, y) -> Fraction:
        a = self._c1[tuple(x)]
        b = self._c2[tuple(y)]
        t = Fraction(0)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                t += ai * bj * self.turns[i][j]
        return t % 1

    def omega(self, x, y) -> CycNum:
        return root_of_unity(self.omega_turns(x, y))

    def is_symmetric(self) -> bool:
        return self.H1 == self.H2 and all(
            self.omega_turns(x, y) == self.omega_turns(y, x) for x in self.H1 for y in self.H2
        )


def cyclic_pairing(N: int, d: int, k: int) -> Pairing:
    """On Z_N: H1 = H2 = <N/d>, omega(N/d, N/d) = xi_d^k."""
    if N % d:
        raise DomainError("d must divide N")
    G = FiniteAbelianGroup.cyclic(N)
    if d == 1:
        return Pairing(G, (), (), ())
    b = ((N // d) % N,)
    return Pairing(G, (b,), (b,), ((Fraction(k, d),),))


def pairing_solution(p: Pairing) -> GFunction:
    inv_d = Fraction(1, p.d)
    vals = {}
    for x in p.H1:
        for y in p.H2:
            vals[(x, y)] = root_of_unity(p.omega_turns(x, y)) * inv_d
    return GFunction(p.G, vals)


def _table(g: GFunction, M: int):
    """Dense CycNum table at common order M, plus the element list."""
    elems = g.G.elements()
    zero = CycNum.rational(0).lift(M)
    tab = {(x, y): zero for x in elems for y in elems}
    tab.update(g.lifted(M))
    return elems, tab


def _sum(terms, zero):
    total = zero
    for t in terms:
        total = total + t
    return total


class _Encoded:
    """g scaled to integer coefficients and reduced under every embedding mod p."""

    def __init__(self, g: GFunction, M: int, extra_bound: int = 0):
        G = g.G
        self.elems = G.elements()
        n = len(self.elems)
        self.n = n
        self.index = {x: i for i, x in enumerate(self.elems)}
        self.add = np.array([[self.index[G.add(x, y)] for y in self.elems] for x in self.elems])
        self.sub = np.array([[self.index[G.sub(x, y)] for y in self.elems] for x in self.elems])
        zero = _ZERO.lift(M)
        flat = [g.values.get((x, y), zero) for x in self.elems for y in self.elems]
        coeffs, self.D, self.L = encode(flat, M)
        # worst case over all identities checked below
        bound = n * self.L * self.L + self.D * self.L + n * self.L + self.D + extra_bound
        self.F = field_for(M, bound)
        res = self.F.from_coeffs(coeffs)  # (n*n, phi)
        self.R = np.ascontiguousarray(res.reshape(n, n, -1).transpose(2, 0, 1))  # (phi, x, y)

    def zeta(self, exps) -> np.ndarray:
        return np.ascontiguousarray(self.F.zeta(exps).T)  # (phi, len)


def check_group_equations(g: GFunction) -> bool:
    """Convolution idempotency in both slots and both normalizations, exactly."""
    M = max(g.order(), 1)
    e = _Encoded(g, M)
    p, R, D, sub = e.F.p, e.R, e.D, e.sub
    z = e.index[g.G.zero()]
    if np.any((R[:, z, :].sum(axis=1) - D) % p):
        return False
    if np.any((R[:, :, z].sum(axis=1) - D) % p):
        return False
    # slot 2: sum_{y1} g(x,y1) g(x,y-y1)
    conv = (R[:, :, None, :] * R[:, :, sub]).sum(axis=-1)
    if np.any((conv - D * R) % p):
        return False
    Rt = np.ascontiguousarray(R.transpose(0, 2, 1))
    conv = (Rt[:, :, None, :] * Rt[:, :, sub]).sum(axis=-1)
    return not np.any((conv - D * Rt) % p)


def check_group_equations_reference(g: GFunction) -> bool:
    """Same as check_group_equations, evaluated term by term in CycNum."""
    G = g.G
    M = max(g.order(), 1)
    elems, tab = _table(g, M)
    one = _ONE.lift(M)
    zero = _ZERO.lift(M)
    if _sum((tab[(G.zero(), y)] for y in elems), zero) != one:
        return False
    if _sum((tab[(x, G.zero())] for x in elems), zero) != one:
        return False
    for x in elems:
        for y in elems:
            rhs = _sum((tab[(x, y1)] * tab[(x, G.sub(y, y1))] for y1 in elems), zero)
            if rhs != tab[(x, y)]:
                return False
            rhs = _sum((tab[(x1, y)] * tab[(G.sub(x, x1), y)] for x1 in elems), zero)
            if rhs != tab[(x, y)]:
                return False
    return True


def _bihoms(G: FiniteAbelianGroup, b1, b2):
    o1 = [G.element_order(b) for b in b1]
    o2 = [G.element_order(b) for b in b2]
    choices = [[Fraction(t, gcd(a, b)) for t in range(gcd(a, b))] for a in o1 for b in o2]
    for flat in itertools.product(*choices):
        yield tuple(tuple(flat[i * len(o2) + j] for j in range(len(o2))) for i in range(len(o1)))


def enumerate_pairings(G: FiniteAbelianGroup, bound: int = 16) -> list[Pairing]:
    """Every pairing-form candidate on G, deduplicated by the induced g."""
    if G.order > bound:
        raise ResourceError(f"|G| = {G.order} exceeds bound {bound}")
    subs = G.subgroups()
    bases = {h: subgroup_basis(G, h) for h in subs}
    seen = set()
    out = []
    for h1 in subs:
        for h2 in subs:
            if len(h1) != len(h2):
                continue
            for t in _bihoms(G, bases[h1], bases[h2]):
                p = Pairing(G, bases[h1], bases[h2], t)
                key = pairing_solution(p)
                if key in seen:
                    continue
                seen.add(key)
                out.append(p)
    return out


@dataclass(frozen=True)
class Diamond:
    """(G, A, B, C, D, phi1, phi2) with B, C, D given as subsets of A.

    ``phi1[a]`` is a tuple of turns t_i with phi1(a)(e_i) = exp(2 pi i t_i)
    for the standard generators e_i of G; ``phi2[a]`` is an element of G.
    Both are tabulated on every element of A.
    """

    G: FiniteAbelianGroup
    A: FiniteAbelianGroup
    B: frozenset
    C: frozenset
    D: frozenset
    phi1: dict
    phi2: dict

    def nontrivial(self) -> list[tuple[tuple[Fraction, ...], Elem]]:
        """Distinct (phi1(a), phi2(a)) for a in A outside B ∩ C."""
        bc = self.B & self.C
        seen = []
        for a in self.A.elements():
            if a in bc:
                continue
            key = (tuple(_turns(t) for t in self.phi1[a]), tuple(self.phi2[a]))
            if key not in seen:
                seen.append(key)
        return seen

    def shape(self) -> tuple:
        """Isomorphism types of A, B, C, D."""
        def typ(H):
            basis = subgroup_basis(self.A, H)
            return FiniteAbelianGroup.from_factors([self.A.element_order(b) for b in basis])
        return (self.A, typ(self.B), typ(self.C), typ(self.D))


def _char_value(chi, y) -> Fraction:
    return sum((Fraction(t) * yi for t, yi in zip(chi, y)), Fraction(0)) % 1


def cyclic_diamond(N: int, m: int, l: int) -> Diamond:
    """A = Z_N = <a>, phi1(a)(x) = xi_N^(m x), phi2(a) = l * lambda."""
    G = FiniteAbelianGroup.cyclic(N)
    A = FiniteAbelianGroup.cyclic(N)
    phi1, phi2 = {}, {}
    for a in A.elements():
        z = a[0] if a else 0
        phi1[a] = (Fraction(z * m, N),) if N > 1 else ()
        phi2[a] = G.normalize((z * l,)) if N > 1 else ()
    B = frozenset(a for a in A.elements() if all(t % 1 == 0 for t in phi1[a]))
    C = frozenset(a for a in A.elements() if phi2[a] == G.zero())
    return Diamond(G, A, B, C, B & C, phi1, phi2)


def _diamond_M(g: GFunction, items) -> int:
    return lcm(max(g.order(), 1), *(Fraction(t).denominator for chi, _ in items for t in chi))


def _diamond_terms(g: GFunction, dia: Diamond, full: bool) -> bool:
    G = g.G
    if G != dia.G:
        raise DomainError("g and diamond live on different groups")
    items = dia.nontrivial()
    if not items:
        return True
    M = _diamond_M(g, items)
    e = _Encoded(g, M)
    p, R = e.F.p, e.R
    Rt = np.ascontiguousarray(R.transpose(0, 2, 1))
    for chi, s in items:
        exps = [int(_char_value(chi, y) * M) for y in e.elems]
        zc = e.zeta(exps)  # (phi, n)
        zi = e.zeta([-x for x in exps])
        si = e.index[tuple(s)]
        if np.any((zi * R[:, si, :]).sum(axis=1) % p):
            return False
        if np.any((zi * R[:, :, si]).sum(axis=1) % p):
            return False
        if not full:
            continue
        # sum_{y1} chi(y1) g(x,y1) g(x+s, y-y1)
        left = (zc[:, None, :] * R) % p  # (phi, x, y1)
        right = R[:, e.add[:, si], :][:, :, e.sub]  # (phi, x, y, y1)
        if np.any((left[:, :, None, :] * right).sum(axis=-1) % p):
            return False
        # sum_{x1} chi(x1) g(x1,y) g(x-x1, y+s)
        left = (zc[:, None, :] * Rt) % p  # (phi, y, x1)
        right = Rt[:, e.add[:, si], :][:, :, e.sub]  # (phi, y, x, x1)
        if np.any((left[:, :, None, :] * right).sum(axis=-1) % p):
            return False
    return True


def _diamond_terms_reference(g: GFunction, dia: Diamond, full: bool) -> bool:
    G = g.G
    if G != dia.G:
        raise DomainError("g and diamond live on different groups")
    items = dia.nontrivial()
    if not items:
        return True
    M = _diamond_M(g, items)
    elems, tab = _table(g, M)
    zero = _ZERO.lift(M)
    for chi, s in items:
        char = {y: root_of_unity(_char_value(chi, y)).lift(M) for y in elems}
        char_inv = {y: root_of_unity(-_char_value(chi, y)).lift(M) for y in elems}
        if not _sum((char_inv[y] * tab[(s, y)] for y in elems), zero).is_zero():
            return False
        if not _sum((char_inv[x] * tab[(x, s)] for x in elems), zero).is_zero():
            return False
        if not full:
            continue
        for x in elems:
            xs = G.add(x, s)
            for y in elems:
                t1 = _sum((char[y1] * tab[(x, y1)] * tab[(xs, G.sub(y, y1))] for y1 in elems), zero)
                if not t1.is_zero():
                    return False
        for y in elems:
            ys = G.add(y, s)
            for x in elems:
                t2 = _sum((char[x1] * tab[(x1, y)] * tab[(G.sub(x, x1), ys)] for x1 in elems), zero)
                if not t2.is_zero():
                    return False
    return True


def check_diamond_equations(g: GFunction, dia: Diamond) -> bool:
    """All four families of diamond-equations, for every a in A outside B ∩ C."""
    return _diamond_terms(g, dia, full=True)


def check_diamond_equations_reference(g: GFunction, dia: Diamond) -> bool:
    """Term-by-term CycNum evaluation of the same system (slow oracle)."""
    return _diamond_terms_reference(g, dia, full=True)


def scaling_equations_only(g: GFunction, dia: Diamond) -> bool:
    """Only the two linear (scaling) families; enough for pairing-form g."""
    return _diamond_terms(g, dia, full=False)


def gcd_criterion(N: int, d: int, k: int, l: int, m: int) -> bool:
    """Whether the cyclic (d, k) solution survives the cyclic diamond with data (l, m)."""
    if d < 1 or N % d:
        raise DomainError(f"d={d} does not divide N={N}")
    if not 1 <= k <= d:
        raise DomainError("k must satisfy 1 <= k <= d")
    if m % N == 0 and l % N == 0:
        return True
    return gcd(gcd(N, d * l), k * l - (N // d) * m) == 1
