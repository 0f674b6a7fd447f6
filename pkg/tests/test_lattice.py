from __future__ import annotations

import itertools
from fractions import Fraction
from math import lcm

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rmatrix.lattice import (
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
from rmatrix.rootdata import DomainError, build

SMALL_TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


def membership(lat: IntegerLattice, pts: np.ndarray) -> np.ndarray:
    """Vectorized v in lat for integer points (rows of pts)."""
    inv = lat.basis_matrix().inv()
    n = inv.rows
    den = lcm(*(Fraction(str(inv[i, j])).denominator for i in range(n) for j in range(n)))
    m = np.array([[int(Fraction(str(inv[i, j])) * den) for j in range(n)] for i in range(n)], dtype=np.int64)
    return np.all((pts @ m.T) % den == 0, axis=1)


def box(n, size):
    return np.array(list(itertools.product(range(size), repeat=n)), dtype=np.int64)


def int_gram(data):
    N = data.pi1.order
    return N, np.array([[int(x * N) for x in row] for row in data.gram_weights], dtype=np.int64)


@pytest.mark.parametrize("name", SMALL_TYPES)
def test_centralizers_against_coset_oracle(name):
    data = build(name)
    W, R = weight_lattice(data), root_lattice(data)
    N, G = int_gram(data)
    roots = np.array(data.roots(), dtype=np.int64)
    for ell in range(3, 9):
        # Cent^q(Lambda_R) contains ell Lambda_W, so the box [0, ell)^n decides it
        cr = cent_q(data, W, R, ell)
        pts = box(data.rank, ell)
        cond = np.all((pts @ G @ roots.T) % (N * ell) == 0, axis=1)
        assert np.array_equal(membership(cr, pts), cond), (name, ell)
        assert cr.contains_lattice(weight_lattice(data).scaled(ell))
        # Cent^q(Lambda_W) contains N ell Lambda_W
        cw = cent_q(data, W, W, ell)
        pts = box(data.rank, N * ell)
        cond = np.all((pts @ G) % (N * ell) == 0, axis=1)
        assert np.array_equal(membership(cw, pts), cond), (name, ell)
        in_roots = membership(R, pts)
        assert np.array_equal(membership(intersect(cw, R), pts), cond & in_roots), (name, ell)
        assert cw.contains_lattice(weight_lattice(data).scaled(N * ell))


@pytest.mark.parametrize("name", SMALL_TYPES)
def test_centralizer_identities_small(name):
    data = build(name)
    W, R = weight_lattice(data), root_lattice(data)
    for ell in range(3, 9):
        assert cent_q(data, W, R, ell) == ell_lattice_square(data, "weights", ell)
        assert intersect(cent_q(data, W, W, ell), R) == ell_lattice_square(data, "roots", ell)


def test_quotient_sizes():
    for name in ("A1", "A4", "B3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"):
        data = build(name)
        Q = quotient(weight_lattice(data), root_lattice(data))
        assert Q.order == data.pi1.order
    data = build("A1")
    Q = quotient(weight_lattice(data), ell_lattice_square(data, "roots", 5))
    assert Q.invariant_factors == (10,)


def test_lusztig_kernel_vs_square_kernel():
    # 2 Lambda_R^(ell) sits inside Lambda_R^[ell]; equal exactly when the index is 1
    for name in ("A1", "B2", "G2", "F4"):
        data = build(name)
        for ell in range(3, 13):
            lus = ell_lattice_round(data, "roots", ell).scaled(2)
            sq = ell_lattice_square(data, "roots", ell)
            assert sq.contains_lattice(lus)


def test_quotient_project_lift_roundtrip():
    data = build("B2")
    W = weight_lattice(data)
    lp = ell_lattice_square(data, "roots", 6)
    Q = quotient(W, lp)
    for x in Q.elements():
        assert Q.project(Q.lift(x)) == x
    for v in lp.basis:
        assert Q.project(v) == Q.zero()
    assert Q.invariant_factors == (6, 6)
    with pytest.raises(DomainError):
        quotient(lp, W)


def test_group_basics():
    G = FiniteAbelianGroup.from_factors([2, 3, 4])
    assert G.invariant_factors == (2, 12)
    assert G.order == 24
    assert len(G.subgroups()) == len(set(G.subgroups()))
    Z4 = FiniteAbelianGroup.cyclic(4)
    assert len(Z4.subgroups()) == 3
    V4 = FiniteAbelianGroup((2, 2))
    assert len(V4.subgroups()) == 5


rows = st.lists(st.integers(-6, 6), min_size=2, max_size=2)
mats = st.lists(rows, min_size=2, max_size=2).filter(lambda m: m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0)


@given(mats, mats)
def test_second_isomorphism_theorem(m1, m2):
    data = build("A2")
    L1 = IntegerLattice(data, m1)
    L2 = IntegerLattice(data, m2)
    meet = intersect(L1, L2)
    join = L1 + L2
    assert L1.contains_lattice(meet) and L2.contains_lattice(meet)
    assert join.contains_lattice(L1) and join.contains_lattice(L2)
    assert quotient(L1, meet).order == quotient(join, L2).order
    for v in meet.basis:
        assert v in L1 and v in L2
