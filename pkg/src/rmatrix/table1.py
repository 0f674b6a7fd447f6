"""Reference solution table for R_0, encoded independently of the solver.

Each cell (type, ell) maps to a set of solution signatures.  A signature is the
frozenset of triples (x, y, t) with x in H1, y in H2 and omega(x, y) =
exp(2 pi i t), written in coordinates of the designated pi1 generators.  Such
a signature pins down (H1, H2, omega) completely and does not depend on how a
pairing was parameterized.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .rootdata import RootSystemType, parse_type

__all__ = [
    "Expected",
    "expected",
    "signature",
    "cyclic_signature",
    "grid",
    "is_excluded",
    "GRID_TYPES",
    "GRID_ELLS",
]

GRID_TYPES = (
    [f"A{n}" for n in range(1, 7)]
    + [f"B{n}" for n in range(2, 6)]
    + [f"C{n}" for n in range(3, 6)]
    + [f"D{n}" for n in range(4, 8)]
    + ["E6", "E7", "E8", "F4", "G2"]
)
GRID_ELLS = (3, 4, 5, 6, 7, 8, 9, 12)

Signature = frozenset


@dataclass(frozen=True)
class Expected:
    solutions: frozenset  # of signatures
    starred: bool
    labels: tuple = ()  # human-readable (d, k) or sign-matrix labels
    open_question: bool = False
    alternative: frozenset | None = None  # the other reading for open cells
    alternative_labels: tuple = ()
    note: str = ""


def _t(x) -> Fraction:
    return Fraction(x) % 1


def signature(pairing) -> Signature:
    """Signature of a pairing object exposing H1, H2 and omega_turns."""
    return frozenset(
        (tuple(x), tuple(y), _t(pairing.omega_turns(x, y))) for x in pairing.H1 for y in pairing.H2
    )


def cyclic_signature(N: int, d: int, k: int) -> Signature:
    """H1 = H2 = <(N/d) g> in Z_N with omega(g', g') = xi_d^k for g' = (N/d) g."""
    step = N // d
    return frozenset(
        (((i * step) % N,), ((j * step) % N,), Fraction(i * j * k, d) % 1)
        for i in range(d)
        for j in range(d)
    )


def _cyc(N: int, dks) -> tuple[frozenset, tuple]:
    if N == 1:
        return frozenset({frozenset({((), (), Fraction(0))})}), ((1, 1),)
    dks = sorted(set(dks))
    return frozenset(cyclic_signature(N, d, k) for d, k in dks), tuple(dks)


# pi1 = Z2 x Z2 for D_n, n even; coordinates over (lambda_{n-1}, lambda_n)
_V4 = [(0, 0), (1, 0), (0, 1), (1, 1)]
_V4_NAMES = {(1, 0): "a", (0, 1): "b", (1, 1): "c"}


def _v4_sig(H1, H2, form) -> Signature:
    return frozenset((x, y, _t(form(x, y))) for x in H1 for y in H2)


def _cyclic_sub(v):
    return [(0, 0), v]


def _sign_matrix_sig(m) -> Signature:
    """Full support with omega on generator pairs given by a 2x2 matrix of signs."""
    half = [[Fraction(0) if s == 1 else Fraction(1, 2) for s in row] for row in m]

    def form(x, y):
        return sum(x[i] * y[j] * half[i][j] for i in range(2) for j in range(2))

    return _v4_sig(_V4, _V4, form)


def _dn_even_odd_ell(matrices) -> tuple[frozenset, tuple]:
    sigs, labels = set(), []
    sigs.add(_v4_sig([(0, 0)], [(0, 0)], lambda x, y: 0))
    labels.append("Z1")
    for v in _V4[1:]:
        H = _cyclic_sub(v)
        sigs.add(_v4_sig(H, H, lambda x, y: Fraction(1, 2) if x == y == v else 0))
        labels.append(f"<{_V4_NAMES[v]}> sym -1")
    for v, w in itertools.permutations(_V4[1:], 2):
        sigs.add(_v4_sig(_cyclic_sub(v), _cyclic_sub(w), lambda x, y: 0))
        labels.append(f"<{_V4_NAMES[v]}>x<{_V4_NAMES[w]}> +1")
    for m in matrices:
        sigs.add(_sign_matrix_sig(m))
        labels.append(f"full {m}")
    return frozenset(sigs), tuple(labels)


_DN_EVEN_ODD_ELL = (
    ((1, 1), (1, 1)),
    ((-1, -1), (-1, -1)),
    ((1, 1), (1, -1)),
    ((-1, 1), (1, 1)),
    ((-1, 1), (-1, -1)),
    ((-1, -1), (1, -1)),
)


def _v4_candidates():
    """Every (H1, H2, omega) with |H1| = |H2| and omega a +-1 valued bihomomorphism."""
    yield [(0, 0)], [(0, 0)], lambda x, y: 0
    for v in _V4[1:]:
        for w in _V4[1:]:
            for t in (0, Fraction(1, 2)):
                yield _cyclic_sub(v), _cyclic_sub(w), (lambda t, v, w: lambda x, y: t if x == v and y == w else 0)(t, v, w)
    for m in _all_sign_matrices():
        half = [[Fraction(0) if s == 1 else Fraction(1, 2) for s in row] for row in m]
        yield _V4, _V4, (lambda h: lambda x, y: sum(x[i] * y[j] * h[i][j] for i in range(2) for j in range(2)))(half)


def _dn_system_solutions(sign: int) -> frozenset:
    """Solutions of the eight scaling equations for D_n, n even, odd ell.

    ``sign`` selects the branch of the +- / -+ coefficients.
    """
    z, a, b, c = _V4
    out = set()
    for H1, H2, form in _v4_candidates():
        d = len(H1)

        def g(x, y):
            if x in H1 and y in H2:
                return Fraction(1, d) * (1 if _t(form(x, y)) == 0 else -1)
            return Fraction(0)

        eqs = [
            g(z, z) + g(a, z) + g(b, z) + g(c, z) - 1,
            g(z, z) + g(z, a) + g(z, b) + g(z, c) - 1,
            g(z, a) + sign * g(a, a) - sign * g(b, a) - g(c, a),
            g(a, z) + sign * g(a, a) - sign * g(a, b) - g(a, c),
            g(z, b) - sign * g(a, b) + sign * g(b, b) - g(c, b),
            g(b, z) - sign * g(b, a) + sign * g(b, b) - g(b, c),
            g(z, c) - g(a, c) - g(b, c) + g(c, c),
            g(c, z) - g(c, a) - g(c, b) + g(c, c),
        ]
        if all(e == 0 for e in eqs):
            out.add(_v4_sig(H1, H2, form))
    return frozenset(out)


def _all_sign_matrices():
    return [((a, b), (c, d)) for a, b, c, d in itertools.product((1, -1), repeat=4)]


_EXCLUDED = {"B": (4,), "C": (4,), "F": (4,), "G": (3, 4, 6)}


def is_excluded(t: RootSystemType, ell: int) -> bool:
    return ell in _EXCLUDED.get(t.family, ())


def expected(t, ell: int) -> Expected | None:
    """Table entry for (type, ell); None for excluded cells."""
    t = parse_type(t) if isinstance(t, str) else t
    if is_excluded(t, ell):
        return None
    n, fam = t.rank, t.family
    even = ell % 2 == 0

    if fam == "A":
        N = n + 1
        dks = [
            (d, k)
            for d in range(1, N + 1)
            if N % d == 0
            for k in range(1, d + 1)
            if gcd(N, d * ell, k * ell - (N // d) * n) == 1
        ]
        sols, labels = _cyc(N, dks)
        return Expected(sols, even, labels)

    if fam == "B":
        if not even:
            sols, labels = _cyc(2, [(1, 1), (2, 1 if n % 2 == 0 else 2)])
            return Expected(sols, False, labels)
        dks = [(2, 1), (2, 2)] + ([(1, 1)] if n % 2 == 0 else [])
        sols, labels = _cyc(2, dks)
        if ell % 4 == 2:
            # second reading: (1,1), (2,1) for even n, (2,1), (2,2) for odd n
            alt_dks = [(1, 1), (2, 1)] if n % 2 == 0 else [(2, 1), (2, 2)]
            alt, alt_labels = _cyc(2, alt_dks)
            return Expected(sols, False, labels, True, alt, alt_labels, "B_n, ell = 2 mod 4")
        return Expected(sols, True, labels)

    if fam == "C":
        if not even:
            sols, labels = _cyc(2, [(1, 1), (2, 1)])
            return Expected(sols, False, labels)
        if ell % 4 == 2:
            sols, labels = _cyc(2, [(1, 1), (2, 1 if n % 2 == 0 else 2)])
            return Expected(sols, False, labels)
        dks = [(2, 1), (2, 2)] + ([(1, 1)] if n % 2 == 0 else [])
        sols, labels = _cyc(2, dks)
        return Expected(sols, True, labels)

    if fam == "D" and n % 2 == 0:
        if even:
            mats = _all_sign_matrices()
            sols = frozenset(_sign_matrix_sig(m) for m in mats)
            return Expected(sols, True, tuple(f"full {m}" for m in mats))
        sols, labels = _dn_even_odd_ell(_DN_EVEN_ODD_ELL)
        alt = _dn_system_solutions(-1)
        return Expected(
            sols, False, labels, True, alt, ("scaling system, other sign branch",), "D_n even, sign branch"
        )

    if fam == "D":
        if even:
            sols, labels = _cyc(4, [(4, k) for k in range(1, 5)])
            return Expected(sols, True, labels)
        sols, labels = _cyc(4, [(1, 1), (2, 1), (4, 2), (4, 4)])
        return Expected(sols, False, labels)

    if fam == "E" and n == 6:
        if ell % 3 == 0:
            dks = [(3, 1), (3, 2), (3, 3)]
        elif even:
            dks = [(1, 1), (3, 2), (3, 3)]
        else:
            dks = [(1, 1), (3, 1), (3, 3)]
        sols, labels = _cyc(3, dks)
        return Expected(sols, even, labels)

    if fam == "E" and n == 7:
        sols, labels = _cyc(2, [(2, 1), (2, 2)] if even else [(1, 1), (2, 2)])
        return Expected(sols, even, labels)

    # trivial pi1: E8, F4, G2
    sols, labels = _cyc(1, [(1, 1)])
    starred = ell % 4 == 0 if fam == "F" else even
    return Expected(sols, starred, labels)


def grid(types=GRID_TYPES, ells=GRID_ELLS):
    """Non-excluded cells of the reproduction grid."""
    for name in types:
        t = parse_type(name)
        for ell in ells:
            if not is_excluded(t, ell):
                yield t, ell
