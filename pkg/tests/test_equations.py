from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rmatrix.cyclo import CycNum
from rmatrix.equations import (
    GFunction,
    Pairing,
    check_diamond_equations,
    check_diamond_equations_reference,
    check_group_equations,
    check_group_equations_reference,
    cyclic_diamond,
    cyclic_pairing,
    enumerate_pairings,
    gcd_criterion,
    pairing_solution,
    scaling_equations_only,
    subgroup_basis,
)
from rmatrix.lattice import FiniteAbelianGroup
from rmatrix.rootdata import DomainError


def divisors(N):
    return [d for d in range(1, N + 1) if N % d == 0]


@pytest.mark.parametrize("N", range(1, 13))
def test_cyclic_pairing_count(N):
    ps = enumerate_pairings(FiniteAbelianGroup.cyclic(N))
    assert len(ps) == sum(divisors(N))
    assert all(check_group_equations(pairing_solution(p)) for p in ps)


def test_klein_four_count():
    ps = enumerate_pairings(FiniteAbelianGroup((2, 2)))
    assert len(ps) == 35
    assert all(check_group_equations(pairing_solution(p)) for p in ps)
    assert len({pairing_solution(p) for p in ps}) == 35


def test_fast_and_reference_group_checks_agree():
    for N in (1, 2, 3, 4, 6):
        G = FiniteAbelianGroup.cyclic(N)
        for p in enumerate_pairings(G):
            g = pairing_solution(p)
            assert check_group_equations_reference(g)
        # a non-solution: delta at a nonzero point
        if N > 1:
            bad = GFunction(G, {((1,), (0,)): CycNum.rational(1)})
            assert not check_group_equations(bad)
            assert not check_group_equations_reference(bad)


def test_zero_function_is_not_a_solution():
    G = FiniteAbelianGroup.cyclic(3)
    assert not check_group_equations(GFunction(G, {}))


def test_trivial_solution_is_delta():
    G = FiniteAbelianGroup.cyclic(4)
    g = pairing_solution(cyclic_pairing(4, 1, 1))
    assert g == GFunction(G, {((0,), (0,)): CycNum.rational(1)})


def test_cyclic_pairing_values():
    p = cyclic_pairing(6, 3, 2)
    assert p.H1 == frozenset({(0,), (2,), (4,)})
    assert p.omega_turns((2,), (2,)) == Fraction(2, 3)
    assert p.omega_turns((4,), (2,)) == Fraction(1, 3)
    g = pairing_solution(p)
    assert g((2,), (4,)) == CycNum.zeta(3, 1) / 3
    assert g((1,), (0,)) == 0


def test_pairing_requires_equal_orders():
    G = FiniteAbelianGroup.cyclic(4)
    with pytest.raises(DomainError):
        Pairing(G, ((2,),), ((1,),), ((0,),))


def test_subgroup_basis_generates():
    G = FiniteAbelianGroup((2, 4))
    for H in G.subgroups():
        b = subgroup_basis(G, H)
        assert G.span(b) == H
        assert len(b) <= 2


def test_gcd_criterion_domain():
    with pytest.raises(DomainError):
        gcd_criterion(4, 3, 1, 5, 1)
    with pytest.raises(DomainError):
        gcd_criterion(4, 2, 3, 5, 1)


def _cyclic_cells():
    for N in range(1, 9):
        for l in range(3, 13):
            for m in range(max(N, 1)):
                dia = cyclic_diamond(N, m, l)
                # the criterion is stated for diamonds whose D is trivial or everything
                if len(dia.D) > 1 and dia.D != frozenset(dia.A.elements()):
                    continue
                yield N, l, m, dia


def test_gcd_criterion_matches_brute_force():
    cells = disagreements = 0
    for N, l, m, dia in _cyclic_cells():
        for d in divisors(N):
            for k in range(1, d + 1):
                g = pairing_solution(cyclic_pairing(N, d, k))
                brute = check_diamond_equations(g, dia)
                cells += 1
                if brute != gcd_criterion(N, d, k, l, m) or brute != scaling_equations_only(g, dia):
                    disagreements += 1
    assert cells > 500
    assert disagreements == 0


def test_reference_diamond_check_on_sample():
    for N, l, m in [(2, 5, 0), (2, 6, 1), (3, 4, 1), (4, 6, 2), (4, 5, 3), (6, 4, 3)]:
        dia = cyclic_diamond(N, m, l)
        for d in divisors(N):
            for k in range(1, d + 1):
                g = pairing_solution(cyclic_pairing(N, d, k))
                assert check_diamond_equations(g, dia) == check_diamond_equations_reference(g, dia)


def test_criterion_fails_outside_its_scope():
    # N = 4, m = 2, l = 4: D = {0, 2} is neither trivial nor all of A
    dia = cyclic_diamond(4, 2, 4)
    assert len(dia.D) == 2
    found = [
        (d, k)
        for d in divisors(4)
        for k in range(1, d + 1)
        if gcd_criterion(4, d, k, 4, 2) != check_diamond_equations(pairing_solution(cyclic_pairing(4, d, k)), dia)
    ]
    assert found


@given(st.sampled_from([(2,), (3,), (4,), (2, 2), (6,)]), st.data())
def test_random_pairings_solve_group_equations(factors, data):
    G = FiniteAbelianGroup(factors)
    ps = enumerate_pairings(G)
    p = data.draw(st.sampled_from(ps))
    g = pairing_solution(p)
    assert check_group_equations(g)
    # scaling g breaks the normalization
    assert not check_group_equations(GFunction(G, {k: v * 2 for k, v in g.values.items()}))


@given(st.sampled_from([(6,), (12,), (2, 4), (2, 6), (3, 9), (2, 2, 4), (4, 8), (2, 2, 2, 6)]), st.data())
def test_subgroup_basis_is_minimal_and_independent(factors, data):
    G = FiniteAbelianGroup(factors)
    gens = data.draw(st.lists(st.sampled_from(G.elements()), min_size=1, max_size=3))
    H = G.span(gens)
    b = subgroup_basis(G, H)
    orders = [G.element_order(x) for x in b]
    assert G.span(b) == H
    assert prod(orders) == len(H)
    assert len(b) == len(FiniteAbelianGroup.from_factors(orders).invariant_factors)
