"""Quotient diamonds built from the lattice data of a root system at a root of unity."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod

from .equations import Diamond, subgroup_basis
from .lattice import (
    FiniteAbelianGroup,
    IntegerLattice,
    cent_q,
    ell_lattice_round,
    ell_lattice_square,
    intersect,
    quotient,
    root_lattice,
    weight_lattice,
)
from .rootdata import DomainError, RootSystemData, RootSystemType, build, killing

__all__ = [
    "DiamondSpec",
    "LatticeData",
    "lattice_data",
    "fundamental_group",
    "build_diamond",
    "cyclic_params",
    "classify_case",
    "ClassificationError",
    "kernel_lattice",
]


class ClassificationError(ValueError):
    """Cyclic parameters fit none of the three recognized cases."""


@dataclass(frozen=True)
class LatticeData:
    """The lattices that every construction at a fixed (type, ell) needs."""

    data: RootSystemData
    ell: int
    weights: IntegerLattice
    roots: IntegerLattice
    cent_roots: IntegerLattice  # Cent^q(Lambda_R) inside Lambda_W
    cent_weights: IntegerLattice  # Cent^q(Lambda_W) inside Lambda_W
    roots_square: IntegerLattice  # Lambda_R^[ell]
    lusztig: IntegerLattice  # 2 Lambda_R^(ell)

    @property
    def starred(self) -> bool:
        return self.lusztig == self.roots_square


@lru_cache(maxsize=None)
def _lattice_data(t: RootSystemType, ell: int) -> LatticeData:
    data = build(t)
    W = weight_lattice(data)
    R = root_lattice(data)
    return LatticeData(
        data=data,
        ell=ell,
        weights=W,
        roots=R,
        cent_roots=cent_q(data, W, R, ell),
        cent_weights=cent_q(data, W, W, ell),
        roots_square=ell_lattice_square(data, "roots", ell),
        lusztig=ell_lattice_round(data, "roots", ell).scaled(2),
    )


def lattice_data(data: RootSystemData | RootSystemType | str, ell: int) -> LatticeData:
    if isinstance(data, RootSystemData):
        data = data.type
    if isinstance(data, str):
        data = build(data).type
    if ell < 3:
        raise DomainError("ell must exceed 2")
    return _lattice_data(data, ell)


def kernel_lattice(data, ell: int, kernel: str) -> IntegerLattice:
    """Lambda' for the two named choices: 'square' or 'lusztig'."""
    ld = lattice_data(data, ell)
    if kernel == "square":
        return ld.roots_square
    if kernel == "lusztig":
        return ld.lusztig
    raise DomainError(f"unknown kernel {kernel!r}")


@lru_cache(maxsize=None)
def _fundamental_group(t: RootSystemType) -> FiniteAbelianGroup:
    data = build(t)
    W = weight_lattice(data)
    R = root_lattice(data)
    Q = quotient(W, R)
    facs = data.pi1.invariant_factors
    gens = data.pi1.generators
    n = data.rank
    table = {}
    for coeffs in itertools.product(*(range(f) for f in facs)):
        v = [0] * n
        for c, gi in zip(coeffs, gens):
            v[gi] += c
        table[Q.project(v)] = coeffs
    if len(table) != prod(facs):
        raise DomainError(f"designated generators do not generate pi1 for {t}")

    def project(v):
        return table[Q.project(v)]

    def lift(x):
        v = [Fraction(0)] * n
        for c, gi in zip(x, gens):
            v[gi] += c
        return tuple(v)

    names = tuple(f"lambda{gi + 1}" for gi in gens)
    return FiniteAbelianGroup(facs, project=project, lift=lift, names=names)


def fundamental_group(data) -> FiniteAbelianGroup:
    """pi1 = Lambda_W / Lambda_R in coordinates of the designated fundamental weights."""
    if isinstance(data, RootSystemData):
        data = data.type
    if isinstance(data, str):
        data = build(data).type
    return _fundamental_group(data)


@dataclass(frozen=True)
class DiamondSpec:
    g: RootSystemData
    ell: int
    lambda_prime: IntegerLattice
    diamond: Diamond
    A: FiniteAbelianGroup
    B: FiniteAbelianGroup
    C: FiniteAbelianGroup
    D: FiniteAbelianGroup
    phi1_data: tuple  # turns on pi1 generators, per A generator
    phi2_data: tuple  # pi1 element, per A generator
    cyclic_params: tuple | None

    @property
    def G(self) -> FiniteAbelianGroup:
        return self.diamond.G

    def phi1_image(self) -> str:
        """Generator of the image of phi1 in pi1^*, as a character on the pi1 generator."""
        G = self.G
        exps = {tuple(t) for t in self.diamond.phi1.values()}
        if all(all(x == 0 for x in e) for e in exps):
            return "1"
        if G.rank == 1:
            N = G.invariant_factors[0]
            j = gcd(N, *(int(e[0] * N) for e in exps))
            return f"xi{N}" if j == 1 else f"xi{N}^{j}"
        return "{" + ", ".join(sorted(_fmt_char(e) for e in exps if any(e))) + "}"

    def phi2_image(self) -> str:
        """Generator of the image of phi2 in pi1."""
        G = self.G
        elems = {tuple(v) for v in self.diamond.phi2.values()}
        if elems == {G.zero()}:
            return "0"
        if G.rank == 1:
            N = G.invariant_factors[0]
            j = gcd(N, *(e[0] for e in elems))
            return G.names[0] if j == 1 else f"{j}{G.names[0]}"
        return "{" + ", ".join(sorted(_fmt_elem(G, e) for e in elems if any(e))) + "}"

    def summary(self) -> tuple[str, ...]:
        """(G, A, B, C, D, phi1, phi2) with groups written as products of Z_k."""
        return (
            _zname(self.G),
            _zname(self.A),
            _zname(self.B),
            _zname(self.C),
            _zname(self.D),
            self.phi1_image(),
            self.phi2_image(),
        )


def _zname(G: FiniteAbelianGroup) -> str:
    return repr(G)


def _fmt_char(e) -> str:
    return "(" + ",".join(str(x) for x in e) + ")"


def _fmt_elem(G: FiniteAbelianGroup, e) -> str:
    parts = [f"{c}{n}" if c != 1 else n for c, n in zip(e, G.names) if c]
    return "+".join(parts)


def _subgroup_of(A: FiniteAbelianGroup, lat: IntegerLattice) -> frozenset:
    return A.span([A.project(b) for b in lat.basis])


def _group_type(A: FiniteAbelianGroup, H: frozenset) -> FiniteAbelianGroup:
    basis = subgroup_basis(A, H)
    return FiniteAbelianGroup.from_factors([A.element_order(b) for b in basis])


def build_diamond(g, ell: int, lambda_prime: IntegerLattice) -> DiamondSpec:
    """The diamond (pi1, A, B, C, D, phi1, phi2) attached to (g, ell, Lambda')."""
    ld = lattice_data(g, ell)
    data = ld.data
    if not lambda_prime.contains_lattice(ld.lusztig):
        raise DomainError("assumption violated: 2 Lambda_R^(ell) is not contained in Lambda'")
    upper = intersect(ld.cent_weights, ld.roots)
    if not upper.contains_lattice(lambda_prime):
        raise DomainError("assumption violated: Lambda' is not contained in Cent^q(Lambda_W) ∩ Lambda_R")

    G = fundamental_group(data)
    A = quotient(ld.cent_roots, lambda_prime)
    B = _subgroup_of(A, ld.cent_weights)
    C = _subgroup_of(A, intersect(ld.cent_roots, ld.roots))
    D = _subgroup_of(A, upper)
    if D != B & C:
        raise DomainError("D differs from B ∩ C")

    gen_weights = [G.lift(e) for e in G.generators()]
    phi1, phi2 = {}, {}
    for a in A.elements():
        v = A.lift(a)
        phi1[a] = tuple((killing(data, v, w) / ell) % 1 for w in gen_weights)
        phi2[a] = G.project(v)
    for a in A.elements():
        trivial1 = all(t == 0 for t in phi1[a])
        if trivial1 != (a in B):
            raise DomainError("phi1 is not injective on A/B")
        if (phi2[a] == G.zero()) != (a in C):
            raise DomainError("phi2 is not injective on A/C")

    dia = Diamond(G, A, B, C, D, phi1, phi2)
    gens = A.generators()
    cyc = cyclic_params(data, ell) if data.pi1.is_cyclic else None
    return DiamondSpec(
        g=data,
        ell=ell,
        lambda_prime=lambda_prime,
        diamond=dia,
        A=A,
        B=_group_type(A, B),
        C=_group_type(A, C),
        D=_group_type(A, D),
        phi1_data=tuple(phi1[a] for a in gens),
        phi2_data=tuple(phi2[a] for a in gens),
        cyclic_params=cyc,
    )


def cyclic_params(g, ell: int) -> tuple[int, int, int]:
    """(N, m_[n], ell_[n]) for a type with cyclic fundamental group.

    The distinguished node n is the generator of pi1 (the last node when pi1
    is trivial).
    """
    data = g if isinstance(g, RootSystemData) else build(g)
    if not data.pi1.is_cyclic:
        raise DomainError(f"pi1 of {data.type} is not cyclic")
    N = data.pi1.order
    n = data.pi1.generators[0] if data.pi1.generators else data.rank - 1
    dn = data.d[n]
    c = gcd(ell, dn)
    m = N * data.gram_weights[n][n] / c
    if m.denominator != 1:
        raise DomainError("m_[n] is not an integer")
    return N, int(m), ell // c


def classify_case(spec_or_params) -> str:
    """'I', 'II' or 'III' for the cyclic diamond parameters."""
    if isinstance(spec_or_params, DiamondSpec):
        if spec_or_params.cyclic_params is None:
            raise DomainError("pi1 is not cyclic")
        N, m, l = spec_or_params.cyclic_params
    else:
        N, m, l = spec_or_params
    if m % N == 0 and l % N == 0:
        return "I"
    if m % N == 0:
        return "II"
    if gcd(m, N) == 1:
        return "III"
    raise ClassificationError(f"(N, m, l) = ({N}, {m}, {l}) fits no case: 1 < gcd(m, N) < N")
