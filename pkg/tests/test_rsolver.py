from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rmatrix.cyclo import CycNum, q_pow, root_of_unity
from rmatrix.diamond import fundamental_group, kernel_lattice, lattice_data
from rmatrix.equations import cyclic_pairing, pairing_solution
from rmatrix.lattice import ResourceError, weight_lattice
from rmatrix.rootdata import DomainError, RootSystemType, build, killing
from rmatrix.rsolver import (
    ConsistencyError,
    ExcludedError,
    FFunction,
    candidates,
    check_f_equations,
    dn_even_solutions,
    f_from_pairing,
    f_from_solution,
    fg_roundtrip,
    g_to_f,
    solve,
)
from rmatrix.table1 import cyclic_signature, grid, signature


def dks(sols):
    return [s.dk for s in sols]


def test_a1_examples():
    assert dks(solve("A1", 5)) == [(1, 1), (2, 2)]
    sols = solve("A1", 4)
    assert dks(sols) == [(2, 1), (2, 2)]
    assert all(s.starred for s in sols)
    assert {s.omega.omega_turns((1,), (1,)) for s in sols} == {Fraction(0), Fraction(1, 2)}


def test_e6_and_d_examples():
    assert dks(solve("E6", 5)) == [(1, 1), (3, 1), (3, 3)]
    d6 = solve("D6", 8)
    assert len(d6) == 16
    assert all(s.d == 4 and s.starred for s in d6)
    d5 = solve("D5", 6)
    assert len(d5) == 4 and all(s.d == 4 for s in d5)
    assert [len(solve("E8", ell)) for ell in (3, 4, 5, 6, 7, 8, 9, 12)] == [1] * 8


def test_lambda_lattices_are_preimages():
    for s in solve("A3", 6) + solve("D6", 5):
        data = s.g
        G = fundamental_group(data)
        ld = lattice_data(data, s.ell)
        assert s.lambda1.contains_lattice(ld.roots) and ld.weights.contains_lattice(s.lambda1)
        assert G.span([G.project(v) for v in s.lambda1.basis]) == s.H1
        assert G.span([G.project(v) for v in s.lambda2.basis]) == s.H2


def test_exclusions_raise_with_substitute():
    with pytest.raises(ExcludedError) as e:
        solve("G2", 6)
    assert e.value.substitute == [RootSystemType("A", 2)]
    with pytest.raises(ExcludedError):
        solve("B3", 4)
    with pytest.raises(DomainError):
        solve("A1", 2)
    with pytest.raises(DomainError):
        solve("A1", 5, method="magic")


def test_lusztig_kernel_gate():
    for name, ell in grid():
        ld = lattice_data(name, ell)
        sols = solve(name, ell, kernel_lattice(name, ell, "lusztig"))
        if ld.starred:
            assert sols == solve(name, ell)
        else:
            assert sols == []


def test_gcd_matches_brute_on_cyclic_grid():
    for t, ell in grid():
        if not build(t).pi1.is_cyclic:
            continue
        a = [s.omega for s in solve(t, ell, method="gcd")]
        b = [s.omega for s in solve(t, ell, method="brute")]
        assert a == b, (t, ell)


def test_dn_even_solutions():
    assert len(dn_even_solutions("D4", 5)) == 16
    assert len(dn_even_solutions("D4", 6)) == 16
    with pytest.raises(DomainError):
        dn_even_solutions("D5", 5)
    sols = dn_even_solutions("D4", 5)
    sizes = sorted(s.d for s in sols)
    assert sizes == [1] + [2] * 9 + [4] * 6
    # symmetric solutions on a cyclic subgroup need omega(x, x) = -1
    for s in sols:
        if s.d == 2 and s.H1 == s.H2:
            x = max(s.H1)
            assert s.omega.omega_turns(x, x) == Fraction(1, 2)
        if s.d == 2 and s.H1 != s.H2:
            assert s.omega.omega_turns(max(s.H1), max(s.H2)) == 0


# --- f-functions ---------------------------------------------------------


def test_f_values_a1():
    sol = solve("A1", 5)[1]
    f = f_from_solution(sol)
    X = f.X
    assert f.size == 10
    assert f(X.zero(), X.zero()) == Fraction(1, 10)
    triv = f_from_solution(solve("A1", 5)[0])
    assert triv(X.zero(), X.zero()) == Fraction(1, 5)
    # off support: mu in Lambda_R, nu not
    lam = X.project((1,))
    assert triv(X.zero(), lam) == 0


@pytest.mark.parametrize("name,ell", [("A1", 5), ("A2", 4), ("B2", 5), ("A3", 3), ("B2", 6)])
def test_f_matches_direct_formula(name, ell):
    data = build(name)
    G = fundamental_group(data)
    lp = kernel_lattice(name, ell, "square")
    rng = np.random.default_rng(ell)
    for sol in solve(name, ell):
        f = f_from_solution(sol)
        X = f.X
        for _ in range(25):
            mu = tuple(int(x) for x in rng.integers(-9, 10, data.rank))
            nu = tuple(int(x) for x in rng.integers(-9, 10, data.rank))
            shift = lp.basis[int(rng.integers(0, data.rank))]
            mu2 = tuple(a + b for a, b in zip(mu, shift))
            mb, nb = G.project(mu), G.project(nu)
            if mb in sol.H1 and nb in sol.H2:
                want = q_pow(ell, -killing(data, mu2, nu)) * sol.omega.omega(mb, nb) * f.scale
            else:
                want = CycNum.rational(0)
            assert f(X.project(mu), X.project(nu)) == want


@pytest.mark.parametrize("ell", range(3, 9))
def test_f_equations_a1(ell):
    acc = {s.omega for s in solve("A1", ell)}
    for p in candidates("A1", ell):
        assert check_f_equations(f_from_pairing("A1", ell, p)) == (p in acc)


def test_f_equations_negative_controls():
    p = cyclic_pairing(2, 1, 1)
    assert not check_f_equations(f_from_pairing("A1", 4, p))
    f = f_from_solution(solve("A1", 5)[0])
    zero = FFunction(f.g, f.ell, f.lambda_prime, f.X, np.zeros_like(f.support), f.exps, f.M, 0)
    assert not check_f_equations(zero)


def test_f_bounds_and_consistency():
    with pytest.raises(ResourceError):
        f_from_solution(solve("E6", 5)[0], bound=100)
    f = f_from_solution(solve("B2", 5)[0])
    with pytest.raises(ResourceError):
        check_f_equations(f, bound=10)
    # (5 lambda, lambda) = 5/2, so 5 Lambda_W is not central at ell = 5
    with pytest.raises(ConsistencyError):
        f_from_pairing("A1", 5, cyclic_pairing(2, 1, 1), weight_lattice(build("A1")).scaled(5))


ROUNDTRIP_CELLS = [(t, ell) for t in ("A1", "A2", "A3", "B2") for ell in range(3, 9) if (t, ell) != ("B2", 4)]


@pytest.mark.parametrize("name,ell", ROUNDTRIP_CELLS)
def test_fg_roundtrip_identity(name, ell):
    for sol in solve(name, ell):
        f = f_from_solution(sol, bound=5000)
        g = fg_roundtrip(f)
        assert g == pairing_solution(sol.omega)
        assert g_to_f(g, sol.g, ell).restrict_equal(f)


def test_fg_roundtrip_trivial_solution_is_delta():
    f = f_from_solution(solve("A2", 5)[0])
    g = fg_roundtrip(f)
    G = fundamental_group("A2")
    assert g.values == {(G.zero(), G.zero()): CycNum.rational(1)}


def test_fg_roundtrip_detects_shift_violation():
    f = f_from_solution(solve("A1", 5)[1])
    exps = f.exps.copy()
    exps[1, 0] += 1
    bad = FFunction(f.g, f.ell, f.lambda_prime, f.X, f.support, exps, f.M, f.scale)
    with pytest.raises(ConsistencyError):
        fg_roundtrip(bad)


@given(st.sampled_from([("A1", 3), ("A1", 6), ("A2", 5), ("A3", 4), ("B2", 7)]), st.data())
def test_every_solution_gives_pairing_signature(cell, data):
    name, ell = cell
    sols = solve(name, ell)
    sol = data.draw(st.sampled_from(sols))
    if sol.dk:
        N = sol.g.pi1.order
        if N > 1:
            assert signature(sol.omega) == cyclic_signature(N, *sol.dk)
    assert check_f_equations(f_from_solution(sol), bound=300)
