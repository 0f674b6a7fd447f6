"""The small quantum group of sl2 with exact coefficients, and R-matrix axiom checks.

Grouplikes are K_j := K_{j lambda} for the fundamental weight lambda, with j
taken mod the order of Lambda_W / Lambda'.  The simple root is alpha = 2
lambda, so (j lambda, alpha) = j and (i lambda, j lambda) = ij/2.  Basis
monomials are E^a K_j F^c with 0 <= a, c < ell_alpha, stored as (a, j, c).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable

from .cyclo import CycNum, root_of_unity
from .rootdata import DomainError

__all__ = [
    "SmallQuantumSl2",
    "UqElement",
    "TensorElement",
    "VerificationError",
    "QuasitriangularReport",
    "assemble_R",
    "assemble_R_from_solution",
    "verify_quasitriangular",
]

Mono = tuple  # (a, j, c)
_ZERO = CycNum.rational(0)
_ONE = CycNum.rational(1)


class VerificationError(ArithmeticError):
    """The candidate R cannot be checked, e.g. because it is not invertible."""


def _accumulate(out: dict, key, coeff: CycNum) -> None:
    v = out.get(key)
    v = coeff if v is None else v + coeff
    if v.is_zero():
        out.pop(key, None)
    else:
        out[key] = v


class _Linear:
    """Sparse linear combination over basis keys with CycNum coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "SmallQuantumSl2", terms: dict | None = None):
        self.alg = alg
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    def _new(self, terms):
        return type(self)(self.alg, terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(out, k, v)
        return self._new(out)

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "_Linear":
        c = c if isinstance(c, CycNum) else CycNum.rational(c)
        return self._new({k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return type(self) is type(other) and (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"{type(self).__name__}({len(self.terms)} terms)"


class UqElement(_Linear):
    """Element of u_q(sl2) in PBW normal form E^a K_j F^c."""

    def __mul__(self, other: "UqElement") -> "UqElement":
        if not isinstance(other, UqElement):
            return self.scale(other)
        alg = self.alg
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for m, c in alg.mono_product(m1, m2).items():
                    _accumulate(out, m, c12 * c)
        return UqElement(alg, out)


class TensorElement(_Linear):
    """Element of u^{(x) r}; keys are r-tuples of monomials."""

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return self.scale(other)
        alg = self.alg
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                factors = [alg.mono_product(a, b) for a, b in zip(k1, k2)]
                if any(not f for f in factors):
                    continue
                c12 = c1 * c2
                for combo in itertools.product(*(f.items() for f in factors)):
                    c = c12
                    for _, ci in combo:
                        c = c * ci
                    _accumulate(out, tuple(m for m, _ in combo), c)
        return TensorElement(alg, out)

    @property
    def rank(self) -> int:
        return len(next(iter(self.terms))) if self.terms else 0

    def flip(self) -> "TensorElement":
        return TensorElement(self.alg, {(b, a): v for (a, b), v in self.terms.items()})

    def embed(self, positions: tuple[int, ...], total: int) -> "TensorElement":
        """Place the tensor factors at ``positions`` of a ``total``-fold tensor, 1 elsewhere."""
        one = self.alg.one_mono
        out = {}
        for k, v in self.terms.items():
            key = [one] * total
            for p, m in zip(positions, k):
                key[p] = m
            out[tuple(key)] = v
        return TensorElement(self.alg, out)


class SmallQuantumSl2:
    """u_q(sl2, Lambda_W, Lambda') with Lambda' = kernel_order * lambda.

    ``kernel_order`` defaults to 2 ell, which is Lambda_R^[ell] = ell alpha.
    """

    def __init__(self, ell: int, kernel_order: int | None = None):
        if ell < 3:
            raise DomainError("ell must exceed 2")
        n = 2 * ell if kernel_order is None else kernel_order
        # n lambda must lie in Cent^q(Lambda_W): (n lambda, lambda) = n/2 in ell Z
        if n <= 0 or n % (2 * ell):
            raise DomainError("kernel_order must be a positive multiple of 2 ell")
        self.ell = ell
        self.n_k = n
        self.ell_alpha = ell // gcd(ell, 2)
        self.q = root_of_unity(Fraction(1, ell))
        self.qinv = self.q.inv()
        self._qq = (self.q - self.qinv).inv()  # 1 / (q - q^-1)
        self._qint = [self._int(a) for a in range(self.ell_alpha + 1)]
        self._prod: dict = {}
        self._delta: dict = {}
        self.one_mono: Mono = (0, 0, 0)

    @property
    def dimension(self) -> int:
        return self.n_k * self.ell_alpha**2

    def qpow(self, e) -> CycNum:
        return root_of_unity(Fraction(e) / self.ell)

    def _int(self, a: int) -> CycNum:
        return (self.qpow(a) - self.qpow(-a)) * self._qq

    def qfact(self, k: int) -> CycNum:
        out = _ONE
        for a in range(1, k + 1):
            out = out * self._qint[a]
        return out

    def monomials(self) -> list[Mono]:
        r = range(self.ell_alpha)
        return [(a, j, c) for a in r for j in range(self.n_k) for c in r]

    # --- elements --------------------------------------------------------

    def element(self, terms: dict) -> UqElement:
        return UqElement(self, {self._norm(m): CycNum._coerce(v) for m, v in terms.items()})

    def _norm(self, m: Mono) -> Mono:
        return (m[0], m[1] % self.n_k, m[2])

    def one(self) -> UqElement:
        return self.element({self.one_mono: 1})

    def E(self) -> UqElement:
        return self.element({(1, 0, 0): 1})

    def F(self) -> UqElement:
        return self.element({(0, 0, 1): 1})

    def K(self, j: int = 1) -> UqElement:
        return self.element({(0, j, 0): 1})

    def mono(self, a: int, j: int, c: int) -> UqElement:
        return self.element({(a, j, c): 1})

    def tensor(self, terms: dict) -> TensorElement:
        return TensorElement(
            self, {tuple(self._norm(m) for m in k): CycNum._coerce(v) for k, v in terms.items()}
        )

    def tensor_of(self, *xs: UqElement) -> TensorElement:
        out: dict = {}
        for combo in itertools.product(*(x.terms.items() for x in xs)):
            c = _ONE
            for _, ci in combo:
                c = c * ci
            _accumulate(out, tuple(m for m, _ in combo), c)
        return TensorElement(self, out)

    # --- multiplication ----------------------------------------------------

    def _left_E(self, terms: dict) -> dict:
        out: dict = {}
        for (a, j, c), v in terms.items():
            if a + 1 < self.ell_alpha:
                _accumulate(out, (a + 1, j, c), v)
        return out

    def _left_K(self, i: int, terms: dict) -> dict:
        out: dict = {}
        for (a, j, c), v in terms.items():
            _accumulate(out, (a, (i + j) % self.n_k, c), v * self.qpow(i * a))
        return out

    def _left_F(self, terms: dict) -> dict:
        # F E^a = E^a F - [a] E^{a-1} (q^{a-1} K_alpha - q^{1-a} K_alpha^{-1}) / (q - q^-1)
        # F K_j = q^j K_j F
        out: dict = {}
        n = self.n_k
        for (a, j, c), v in terms.items():
            if c + 1 < self.ell_alpha:
                _accumulate(out, (a, j, c + 1), v * self.qpow(j))
            if a:
                w = v * self._qint[a] * self._qq
                _accumulate(out, (a - 1, (j + 2) % n, c), -w * self.qpow(a - 1))
                _accumulate(out, (a - 1, (j - 2) % n, c), w * self.qpow(1 - a))
        return out

    def mono_product(self, m1: Mono, m2: Mono) -> dict:
        key = (m1, m2)
        hit = self._prod.get(key)
        if hit is not None:
            return hit
        a, j, c = m1
        terms = {m2: _ONE}
        for _ in range(c):
            terms = self._left_F(terms)
        if j:
            terms = self._left_K(j, terms)
        for _ in range(a):
            terms = self._left_E(terms)
        self._prod[key] = terms
        return terms

    # --- Hopf structure ------------------------------------------------------

    def coproduct(self, x: UqElement) -> TensorElement:
        out = TensorElement(self, {})
        for m, v in x.terms.items():
            out = out + self._delta_mono(m).scale(v)
        return out

    def _delta_mono(self, m: Mono) -> TensorElement:
        hit = self._delta.get(m)
        if hit is not None:
            return hit
        a, j, c = m
        dE = self.tensor({((1, 0, 0), (0, 2, 0)): 1, (self.one_mono, (1, 0, 0)): 1})
        dF = self.tensor({((0, 0, 1), self.one_mono): 1, ((0, -2, 0), (0, 0, 1)): 1})
        out = self.tensor({((0, j, 0), (0, j, 0)): 1})
        for _ in range(a):
            out = dE * out
        for _ in range(c):
            out = out * dF
        self._delta[m] = out
        return out

    def coproduct_tensor(self, t: TensorElement, slot: int) -> TensorElement:
        """Apply the coproduct to tensor factor ``slot``, producing one more factor."""
        out: dict = {}
        for k, v in t.terms.items():
            for k2, v2 in self._delta_mono(k[slot]).terms.items():
                _accumulate(out, k[:slot] + k2 + k[slot + 1 :], v * v2)
        return TensorElement(self, out)

    def counit(self, x: UqElement) -> CycNum:
        out = _ZERO
        for (a, j, c), v in x.terms.items():
            if a == 0 and c == 0:
                out = out + v
        return out

    def antipode(self, x: UqElement) -> UqElement:
        sE = self.mono(1, -2, 0).scale(-1)  # -E K_alpha^{-1}
        sF = self.mono(0, 2, 1).scale(-1)  # -K_alpha F
        out = UqElement(self, {})
        for (a, j, c), v in x.terms.items():
            y = self.one()
            for _ in range(c):
                y = y * sF
            y = y * self.K(-j)
            for _ in range(a):
                y = y * sE
            out = out + y.scale(v)
        return out

    # --- quasi R-matrix ------------------------------------------------------

    def theta(self) -> TensorElement:
        diff = self.q - self.qinv
        terms = {}
        for k in range(self.ell_alpha):
            c = diff**k * self.qfact(k).inv() * self.qpow(Fraction(-k * (k - 1), 2))
            terms[((k, 0, 0), (0, 0, k))] = c * (-1 if k % 2 else 1)
        return self.tensor(terms)

    def theta_bar(self) -> TensorElement:
        diff = self.q - self.qinv
        terms = {}
        for k in range(self.ell_alpha):
            terms[((k, 0, 0), (0, 0, k))] = diff**k * self.qfact(k).inv() * self.qpow(Fraction(k * (k - 1), 2))
        return self.tensor(terms)

    # --- toral part ------------------------------------------------------------

    def toral(self, f: Callable[[int, int], CycNum | None]) -> TensorElement:
        terms = {}
        for i in range(self.n_k):
            for j in range(self.n_k):
                v = f(i, j)
                if v is not None and not v.is_zero():
                    terms[((0, i, 0), (0, j, 0))] = v
        return self.tensor(terms)

    def group_inverse(self, t: TensorElement) -> TensorElement | None:
        """Inverse of a toral element of the group algebra of (Lambda/Lambda')^2, or None."""
        n = self.n_k
        if any(k[0][0] or k[0][2] or k[1][0] or k[1][2] for k in t.terms):
            raise DomainError("not a toral element")
        z = [root_of_unity(Fraction(e, n)) for e in range(n)]
        vals = {(k[0][1], k[1][1]): v for k, v in t.terms.items()}
        hat = {}
        for s, u in itertools.product(range(n), repeat=2):
            acc = _ZERO
            for (i, j), v in vals.items():
                acc = acc + v * z[(s * i + u * j) % n]
            if acc.is_zero():
                return None
            hat[(s, u)] = acc.inv()
        inv_n2 = CycNum.rational(Fraction(1, n * n))
        terms = {}
        for i, j in itertools.product(range(n), repeat=2):
            acc = _ZERO
            for (s, u), h in hat.items():
                acc = acc + h * z[(-(s * i + u * j)) % n]
            if not acc.is_zero():
                terms[((0, i, 0), (0, j, 0))] = acc * inv_n2
        return self.tensor(terms)


def assemble_R(
    alg: SmallQuantumSl2, H1: Iterable[int], H2: Iterable[int], omega_turns: Callable[[int, int], Fraction]
) -> TensorElement:
    """R = R_0 * theta_bar for subgroups H_i of pi1 = Z2 and a pairing omega on H1 x H2.

    R_0 = (1/|Lambda_1/Lambda'|) sum q^{-(mu, nu)} omega(mu-bar, nu-bar) K_mu (x) K_nu over
    mu in Lambda_1, nu in Lambda_2.
    """
    H1, H2 = set(H1), set(H2)
    size1 = sum(1 for i in range(alg.n_k) if i % 2 in H1)
    c = CycNum.rational(Fraction(1, size1))

    def f(i, j):
        if i % 2 not in H1 or j % 2 not in H2:
            return None
        return c * root_of_unity(Fraction(-i * j, 2 * alg.ell) + Fraction(omega_turns(i % 2, j % 2)))

    return alg.toral(f) * alg.theta_bar()


def assemble_R_from_solution(alg: SmallQuantumSl2, sol) -> TensorElement:
    """R for an A1 solution (or pairing) object exposing H1, H2 and omega_turns."""
    p = sol if hasattr(sol, "omega_turns") else sol.omega
    if getattr(getattr(sol, "g", None), "type", None) is not None and str(sol.g.type) != "A1":
        raise DomainError("the concrete algebra is only available for A1")
    return assemble_R(
        alg,
        {x[0] for x in p.H1},
        {x[0] for x in p.H2},
        lambda a, b: p.omega_turns((a,), (b,)),
    )


@dataclass(frozen=True)
class QuasitriangularReport:
    invertible: bool
    intertwines: bool  # R Delta(h) = Delta^op(h) R on generators
    coproduct_left: bool  # (Delta x Id)(R) = R13 R23
    coproduct_right: bool  # (Id x Delta)(R) = R13 R12

    @property
    def ok(self) -> bool:
        return self.invertible and self.intertwines and self.coproduct_left and self.coproduct_right

    def axioms(self) -> tuple[bool, bool, bool]:
        return (self.intertwines, self.coproduct_left, self.coproduct_right)


def _inverse_R(alg: SmallQuantumSl2, R: TensorElement) -> TensorElement | None:
    """Exact inverse of R = R_0 (1 + N), or None when R is singular.

    R must be triangular: first factors E^a K, second factors K F^c, and the
    terms with a = 0 form the toral part R_0.  Then N has positive E-degree in
    the first factor, hence is nilpotent, and R^-1 = (1 + N)^-1 R_0^-1.  The
    algebra is free over the group algebra of (Lambda/Lambda')^2, so R is
    singular exactly when R_0 is singular there.
    """
    if any(k[0][2] or k[1][0] or (k[0][0] == 0) != (k[1][2] == 0) for k in R.terms):
        raise VerificationError("R is not of the triangular form R_0 (1 + N)")
    toral = TensorElement(alg, {k: v for k, v in R.terms.items() if k[0][0] == 0})
    if toral.is_zero():
        return None
    inv0 = alg.group_inverse(toral)
    if inv0 is None:
        return None
    one = alg.tensor({(alg.one_mono, alg.one_mono): 1})
    # fast path for R = R_0 theta_bar, whose inverse is theta R_0^-1
    guess = alg.theta() * inv0
    if R * guess == one and guess * R == one:
        return guess
    N = inv0 * (R - toral)
    series, power = one, one
    for m in range(1, alg.ell_alpha):
        power = power * N
        series = series + (power if m % 2 == 0 else -power)
    Rinv = series * inv0
    if R * Rinv != one or Rinv * R != one:
        raise VerificationError("inverse certification failed")
    return Rinv


def verify_quasitriangular(alg: SmallQuantumSl2, R: TensorElement, require_invertible: bool = False):
    """Check the three R-matrix axioms exactly.

    The intertwining axiom is checked as R Delta(h) = Delta^op(h) R for h in
    {E, F, K_lambda}, which needs no inverse.  With ``require_invertible`` a
    singular R raises VerificationError instead of being reported.
    """
    Rinv = _inverse_R(alg, R)
    if Rinv is None and require_invertible:
        raise VerificationError("R is not invertible")
    inter = all(
        R * alg.coproduct(h) == alg.coproduct(h).flip() * R for h in (alg.E(), alg.F(), alg.K(1))
    )
    left = alg.coproduct_tensor(R, 0) == R.embed((0, 2), 3) * R.embed((1, 2), 3)
    right = alg.coproduct_tensor(R, 1) == R.embed((0, 2), 3) * R.embed((0, 1), 3)
    return QuasitriangularReport(Rinv is not None, inter, left, right)
