"""Toral parts R_0 of R-matrices: solving, coefficient functions, and the f-equation check."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .cyclo import CycNum, root_of_unity
from .diamond import DiamondSpec, build_diamond, cyclic_params, fundamental_group, lattice_data
from .equations import (
    GFunction,
    Pairing,
    check_diamond_equations,
    enumerate_pairings,
    gcd_criterion,
    pairing_solution,
)
from .lattice import FiniteAbelianGroup, IntegerLattice, ResourceError, quotient
from .modular import field_for
from .rootdata import DomainError, RootSystemData, RootSystemType, build, substitute_excluded

__all__ = [
    "R0Solution",
    "FFunction",
    "ExcludedError",
    "ConsistencyError",
    "solve",
    "candidates",
    "dn_even_solutions",
    "f_from_solution",
    "f_from_pairing",
    "check_f_equations",
    "fg_roundtrip",
    "g_to_f",
    "cyclic_shape_matches",
]


class ExcludedError(DomainError):
    """(type, ell) needs the substituted root system; see ``substitute``."""

    def __init__(self, t: RootSystemType, ell: int, substitute: list[RootSystemType]):
        self.type = t
        self.ell = ell
        self.substitute = substitute
        names = " x ".join(str(s) for s in substitute)
        super().__init__(f"{t} at ell={ell} is excluded; use {names} instead")


class ConsistencyError(ValueError):
    """A quantity depends on the choice of coset representative."""


def _data(g) -> RootSystemData:
    return g if isinstance(g, RootSystemData) else build(g)


@dataclass(frozen=True)
class R0Solution:
    g: RootSystemData
    ell: int
    lambda_prime: IntegerLattice
    omega: Pairing
    dk: tuple[int, int] | None
    lambda1: IntegerLattice
    lambda2: IntegerLattice
    starred: bool

    @property
    def H1(self) -> frozenset:
        return self.omega.H1

    @property
    def H2(self) -> frozenset:
        return self.omega.H2

    @property
    def d(self) -> int:
        return self.omega.d

    def sort_key(self):
        return (self.d, self.dk or (0, 0), sorted(self.H1), sorted(self.H2), self.omega.turns)

    def __repr__(self):
        extra = f" (d,k)={self.dk}" if self.dk else ""
        return f"R0Solution({self.g.type}, ell={self.ell}, |H|={self.d}{extra})"


def _preimage(data: RootSystemData, G: FiniteAbelianGroup, H: frozenset) -> IntegerLattice:
    ld_roots = [tuple(r) for r in data.roots()]
    return IntegerLattice(data, ld_roots + [G.lift(h) for h in H])


def _dk(G: FiniteAbelianGroup, p: Pairing) -> tuple[int, int] | None:
    if G.rank > 1 or p.H1 != p.H2:
        return None
    d = p.d
    if d == 1:
        return (1, 1)
    k = int(p.turns[0][0] * d)
    return (d, k if k else d)


def cyclic_shape_matches(spec: DiamondSpec) -> bool:
    """Whether the lattice diamond is the cyclic diamond described by (N, m_[n], ell_[n]).

    This holds when A is generated by ell_[n] lambda_n and pi1 by lambda_n,
    with the characters and images that the parameters predict.
    """
    if spec.cyclic_params is None:
        return False
    N, m, l = spec.cyclic_params
    data = spec.g
    G = spec.G
    A = spec.A
    if N == 1:
        return A.order == 1 or all(not any(t) for t in spec.diamond.phi1.values())
    n = data.pi1.generators[0]
    if n != _node_n(data):
        return False
    v = [0] * data.rank
    v[n] = l
    a0 = A.project(v)
    if len(A.span([a0])) != N or A.order != N:
        return False
    for z in range(N):
        a = A.scale(z, a0)
        if tuple(Fraction(t) % 1 for t in spec.diamond.phi1[a]) != (Fraction(z * m, N) % 1,):
            return False
        if spec.diamond.phi2[a] != ((z * l) % N,):
            return False
    return True


def _node_n(data: RootSystemData) -> int:
    """The node whose weight the cyclic parameters refer to."""
    return data.rank - 1 if data.type.family != "E" else data.pi1.generators[0]


def candidates(g, ell: int) -> list[Pairing]:
    """Every pairing-form candidate on pi1 (before any diamond filtering)."""
    return enumerate_pairings(fundamental_group(_data(g)))


def solve(g, ell: int, lambda_prime: IntegerLattice | None = None, method: str = "auto") -> list[R0Solution]:
    """All toral solutions (H1, H2, omega) for (g, ell, Lambda').

    ``method`` is 'brute' (diamond-equations evaluated exactly), 'gcd' (the
    closed cyclic criterion where the diamond has the cyclic shape, brute
    force elsewhere) or 'auto' (same as 'gcd').
    """
    data = _data(g)
    if ell < 3:
        raise DomainError("ell must exceed 2")
    sub = substitute_excluded(data.type, ell)
    if sub:
        raise ExcludedError(data.type, ell, sub)
    ld = lattice_data(data, ell)
    lp = ld.roots_square if lambda_prime is None else lambda_prime
    spec = build_diamond(data, ell, lp)
    if lp != ld.roots_square:
        return []
    if method not in ("auto", "gcd", "brute"):
        raise DomainError(f"unknown method {method!r}")
    G = spec.G
    use_gcd = method != "brute" and cyclic_shape_matches(spec)
    out = []
    for p in enumerate_pairings(G):
        dk = _dk(G, p)
        if use_gcd and dk is not None:
            N, m, l = spec.cyclic_params
            ok = gcd_criterion(N, dk[0], dk[1], l, m)
        else:
            ok = check_diamond_equations(pairing_solution(p), spec.diamond)
        if ok:
            out.append(
                R0Solution(
                    g=data,
                    ell=ell,
                    lambda_prime=lp,
                    omega=p,
                    dk=dk,
                    lambda1=_preimage(data, G, p.H1),
                    lambda2=_preimage(data, G, p.H2),
                    starred=ld.starred,
                )
            )
    out.sort(key=R0Solution.sort_key)
    return out


def dn_even_solutions(g, ell: int) -> list[R0Solution]:
    """Solutions for D_n with n even, where pi1 = Z2 x Z2 (always brute force)."""
    data = _data(g)
    if data.type.family != "D" or data.rank % 2:
        raise DomainError("dn_even_solutions needs D_n with n even")
    return solve(data, ell, method="brute")


# --- coefficient functions f ------------------------------------------------


def _int_gram(data: RootSystemData) -> tuple[np.ndarray, int]:
    den = reduce(lcm, (x.denominator for row in data.gram_weights for x in row), 1)
    gi = np.array([[int(x * den) for x in row] for row in data.gram_weights], dtype=np.int64)
    return gi, den


class FFunction:
    """f(mu, nu) = scale * zeta_M^exps[mu, nu] on the support, zero elsewhere.

    Indices run over the elements of X = Lambda_W / Lambda'.
    """

    def __init__(self, data, ell, lambda_prime, X, support, exps, M, scale):
        self.g = data
        self.ell = ell
        self.lambda_prime = lambda_prime
        self.X = X
        self.elements = X.elements()
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.reps = np.array([[int(c) for c in X.lift(x)] for x in self.elements], dtype=np.int64)
        self.support = np.asarray(support, dtype=bool)
        self.exps = np.asarray(exps, dtype=np.int64) % M
        self.M = M
        self.scale = Fraction(scale)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __call__(self, mu, nu) -> CycNum:
        i = self.index[tuple(mu)]
        j = self.index[tuple(nu)]
        if not self.support[i, j] or self.scale == 0:
            return CycNum.rational(0)
        return root_of_unity(Fraction(int(self.exps[i, j]), self.M)) * self.scale

    def pairings(self) -> np.ndarray:
        """(mu, nu) * den for all representatives, with den the Gram denominator."""
        gi, _ = _int_gram(self.g)
        return self.reps @ gi @ self.reps.T

    def restrict_equal(self, other: "FFunction") -> bool:
        """Equality as functions on X x X."""
        if self.size != other.size:
            return False
        if self.scale == 0 or not self.support.any():
            return other.scale == 0 or not other.support.any()
        if self.scale != other.scale or not np.array_equal(self.support, other.support):
            return False
        L = lcm(self.M, other.M)
        diff = (self.exps * (L // self.M) - other.exps * (L // other.M)) % L
        return bool(np.all((diff == 0) | ~self.support))


def _x_group(data: RootSystemData, ell: int, lambda_prime: IntegerLattice) -> FiniteAbelianGroup:
    return quotient(lattice_data(data, ell).weights, lambda_prime)


def f_from_pairing(
    g, ell: int, p: Pairing, lambda_prime: IntegerLattice | None = None, bound: int = 2000
) -> FFunction:
    """The coefficient function attached to a pairing candidate, accepted or not.

    Raises ResourceError when |Lambda_W / Lambda'| exceeds ``bound``.
    """
    data = _data(g)
    ld = lattice_data(data, ell)
    lp = ld.roots_square if lambda_prime is None else lambda_prime
    if not ld.cent_weights.contains_lattice(lp):
        raise ConsistencyError("Lambda' is not central in Lambda_W; f depends on representatives")
    X = _x_group(data, ell, lp)
    if X.order > bound:
        raise ResourceError(f"|Lambda_W/Lambda'| = {X.order} exceeds bound {bound}")
    G = fundamental_group(data)
    elems = X.elements()
    cls = [G.project(X.lift(x)) for x in elems]
    gi, gden = _int_gram(data)
    reps = np.array([[int(c) for c in X.lift(x)] for x in elems], dtype=np.int64)
    pair = reps @ gi @ reps.T
    om_den = reduce(lcm, (t.denominator for row in p.turns for t in row), 1)
    M = lcm(ell * gden, om_den)
    exps = -pair * (M // (ell * gden))
    # omega tabulated once on pi1 x pi1, then indexed by coset class
    gel = G.elements()
    gidx = {x: i for i, x in enumerate(gel)}
    ci = np.array([gidx[c] for c in cls])
    table = np.zeros((len(gel), len(gel)), dtype=np.int64)
    for x in p.H1:
        for y in p.H2:
            table[gidx[x], gidx[y]] = int(p.omega_turns(x, y) * M)
    h1 = np.array([x in p.H1 for x in gel])[ci]
    h2 = np.array([x in p.H2 for x in gel])[ci]
    support = h1[:, None] & h2[None, :]
    om = np.where(support, table[ci][:, ci], 0)
    exps = (exps + om) % M
    index_r = X.order // G.order  # |Lambda_R / Lambda'|
    scale = Fraction(1, index_r * p.d)
    return FFunction(data, ell, lp, X, support, exps, M, scale)


def f_from_solution(
    sol: R0Solution, lambda_prime: IntegerLattice | None = None, bound: int = 2000
) -> FFunction:
    lp = sol.lambda_prime if lambda_prime is None else lambda_prime
    return f_from_pairing(sol.g, sol.ell, sol.omega, lp, bound)


def _residues(f: FFunction, bound: int):
    F = field_for(f.M, bound)
    z = F.zeta(f.exps)  # (n, n, phi)
    z = np.where(f.support[:, :, None], z, 0)
    return F, np.ascontiguousarray(z.transpose(2, 0, 1))


def check_f_equations(f: FFunction, bound: int = 200) -> bool:
    """Exact check of the shift, convolution and normalization conditions on f."""
    n = f.size
    if n > bound:
        raise ResourceError(f"|Lambda/Lambda'| = {n} exceeds bound {bound}")
    a, b = f.scale.numerator, f.scale.denominator
    if a == 0 or not f.support.any():
        return False  # normalization at (0, 0) cannot hold
    F, R = _residues(f, a * n + b + 2)
    p = F.p
    if n * p * p >= 1 << 53:
        raise OverflowError("prime too large for exact float accumulation")
    X = f.X
    data = f.g
    elems = f.elements
    idx = f.index
    zero = idx[X.zero()]

    # shift conditions along each simple root
    for i in range(data.rank):
        alpha = data.root(i)
        step = X.project(alpha)
        shift = np.array([idx[X.add(x, step)] for x in elems])
        # (nu, alpha_i) = d_i * nu_i in weight coordinates
        e_nu = -data.d[i] * f.reps[:, i] * (f.M // f.ell)
        zn = F.zeta(e_nu).T  # (phi, n)
        if np.any((R[:, shift, :] - zn[:, None, :] * R) % p):
            return False
        if np.any((R[:, :, shift] - zn[:, :, None] * R) % p):
            return False

    # normalization
    delta = np.zeros(n, dtype=np.int64)
    delta[zero] = 1
    if np.any((a * R.sum(axis=1) - b * delta[None, :]) % p):
        return False
    if np.any((a * R.sum(axis=2) - b * delta[None, :]) % p):
        return False

    # convolution idempotency; mu1 over one representative per root-lattice coset
    G = fundamental_group(data)
    seen = {}
    for x in elems:
        seen.setdefault(G.project(X.lift(x)), idx[x])
    mu1s = sorted(seen.values())
    sub = np.array([[idx[X.sub(x, y)] for y in elems] for x in elems])
    Rf = R.astype(np.float64)
    for T in (Rf, np.ascontiguousarray(Rf.transpose(0, 2, 1))):
        for m1 in mu1s:
            row = T[:, m1, :]  # (phi, n)
            P = np.ascontiguousarray(row[:, sub].transpose(0, 2, 1))  # (phi, nu2, nu)
            S = np.matmul(T, P)  # (phi, mu2, nu)
            S = np.mod(S, p).astype(np.int64)
            expect = np.zeros_like(S)
            expect[:, m1, :] = b * T[:, m1, :].astype(np.int64)
            if np.any((a * S - expect) % p):
                return False
    return True


def fg_roundtrip(f: FFunction) -> GFunction:
    """g(mu-bar, nu-bar) = |Lambda_R/Lambda'| q^{(mu, nu)} f(mu, nu) as a function on pi1 x pi1."""
    data = f.g
    G = fundamental_group(data)
    X = f.X
    gi, gden = _int_gram(data)
    M = lcm(f.M, f.ell * gden)
    pair = f.reps @ gi @ f.reps.T
    e = (f.exps * (M // f.M) + pair * (M // (f.ell * gden))) % M
    gel = G.elements()
    gidx = {x: i for i, x in enumerate(gel)}
    cls = np.array([gidx[G.project(X.lift(x))] for x in f.elements])
    c = f.scale * (X.order // G.order)  # |Lambda_R / Lambda'|
    # -1 marks off-support entries; every class pair must carry one value
    val = np.where(f.support & (c != 0), e, -1)
    code = (cls[:, None] * len(gel) + cls[None, :]).ravel()
    lo = np.full(len(gel) ** 2, M, dtype=np.int64)
    hi = np.full(len(gel) ** 2, -2, dtype=np.int64)
    np.minimum.at(lo, code, val.ravel())
    np.maximum.at(hi, code, val.ravel())
    if np.any(lo != hi):
        raise ConsistencyError("f violates the shift condition; g is not defined on pi1")
    values = {}
    for k in np.nonzero(lo >= 0)[0]:
        x, y = gel[k // len(gel)], gel[k % len(gel)]
        values[(x, y)] = root_of_unity(Fraction(int(lo[k]), M)) * c
    return GFunction(G, values)


def g_to_f(g: GFunction, data, ell: int, lambda_prime: IntegerLattice | None = None) -> FFunction:
    """Inverse transform: f(mu, nu) = q^{-(mu, nu)} g(mu-bar, nu-bar) / |Lambda_R/Lambda'|.

    ``g`` must take values of the form c * root of unity with one common c.
    """
    data = _data(data)
    ld = lattice_data(data, ell)
    lp = ld.roots_square if lambda_prime is None else lambda_prime
    X = _x_group(data, ell, lp)
    G = fundamental_group(data)
    elems = X.elements()
    gel = G.elements()
    gidx = {x: i for i, x in enumerate(gel)}
    cls = np.array([gidx[G.project(X.lift(x))] for x in elems])
    gi, gden = _int_gram(data)
    reps = np.array([[int(c) for c in X.lift(x)] for x in elems], dtype=np.int64)
    pair = reps @ gi @ reps.T
    mags = set()
    turns = {}
    for k, v in g.values.items():
        mag, t = _polar(v)
        mags.add(mag)
        turns[k] = t
    if len(mags) > 1:
        raise DomainError("g values do not share one magnitude")
    mag = mags.pop() if mags else Fraction(0)
    M = lcm(ell * gden, *(t.denominator for t in turns.values()))
    on = np.zeros((len(gel), len(gel)), dtype=bool)
    tt = np.zeros((len(gel), len(gel)), dtype=np.int64)
    for (x, y), t in turns.items():
        on[gidx[x], gidx[y]] = True
        tt[gidx[x], gidx[y]] = int(t * M)
    support = on[cls][:, cls]
    exps = np.where(support, tt[cls][:, cls] - pair * (M // (ell * gden)), 0)
    index_r = X.order // G.order
    return FFunction(data, ell, lp, X, support, exps, M, mag / index_r)


def _polar(v: CycNum) -> tuple[Fraction, Fraction]:
    """Write v = r * exp(2 pi i t) with rational r > 0, assuming such a form exists."""
    M = v.order
    for e in range(M):
        w = v * root_of_unity(Fraction(-e, M))
        if w.is_rational():
            r = w.to_fraction()
            if r > 0:
                return r, Fraction(e, M)
            return -r, (Fraction(e, M) + Fraction(1, 2)) % 1
    raise DomainError("value is not a rational multiple of a root of unity")
