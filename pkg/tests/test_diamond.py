from __future__ import annotations

import pytest

from rmatrix.diamond import (
    ClassificationError,
    build_diamond,
    classify_case,
    cyclic_params,
    fundamental_group,
    kernel_lattice,
    lattice_data,
)
from rmatrix.lattice import ell_lattice_square, weight_lattice
from rmatrix.rootdata import DomainError, build
from rmatrix.table1 import grid


def square(name, ell):
    return kernel_lattice(name, ell, "square")


def test_b2_odd_diamond():
    for ell in (3, 5, 7, 9):
        spec = build_diamond("B2", ell, square("B2", ell))
        assert spec.summary() == ("Z2", "Z2", "Z2", "Z1", "Z1", "1", "lambda2")


def test_b2_even_diamond_has_a_nontrivial_character():
    # (ell/2) lambda_1 is central for the roots but pairs to ell/2 with lambda_2
    for ell in (6, 8, 12):
        spec = build_diamond("B2", ell, square("B2", ell))
        assert spec.summary() == ("Z2", "Z2", "Z1", "Z2", "Z1", "xi2", "0")
        ld = lattice_data("B2", ell)
        v = (ell // 2, 0)
        assert v in ld.cent_roots and v in ld.roots
        assert v not in ld.cent_weights


@pytest.mark.parametrize("name,ell", list(grid()))
def test_grid_diamonds_build(name, ell):
    spec = build_diamond(name, ell, square(name, ell))
    d = spec.diamond
    assert d.D == d.B & d.C
    assert spec.A.order == d.A.order
    # D = Lambda_R^[ell] / Lambda' is trivial for the square kernel
    assert spec.D.order == 1


def test_lusztig_kernel_diamonds_build():
    for name in ("A1", "B2", "E6", "D4"):
        for ell in (5, 8):
            spec = build_diamond(name, ell, kernel_lattice(name, ell, "lusztig"))
            assert spec.D.order >= 1


def test_kernel_assumptions_enforced():
    data = build("A1")
    with pytest.raises(DomainError):
        build_diamond("A1", 5, weight_lattice(data).scaled(5))  # not inside the root lattice centralizer
    with pytest.raises(DomainError):
        build_diamond("A1", 5, ell_lattice_square(data, "roots", 5).scaled(3))  # misses 2 Lambda_R^(ell)
    with pytest.raises(DomainError):
        kernel_lattice("A1", 5, "other")


def test_cyclic_params_and_cases():
    assert cyclic_params("A1", 5) == (2, 1, 5)
    assert classify_case(cyclic_params("A1", 5)) == "III"
    assert cyclic_params("B2", 5) == (2, 2, 5)
    assert classify_case(cyclic_params("B2", 5)) == "II"
    assert classify_case((3, 3, 6)) == "I"
    assert cyclic_params("E6", 5) == (3, 4, 5)
    with pytest.raises(ClassificationError):
        classify_case((4, 2, 5))
    with pytest.raises(DomainError):
        cyclic_params("D4", 5)


def test_fundamental_group_generators():
    G = fundamental_group("D6")
    assert G.invariant_factors == (2, 2)
    assert G.names == ("lambda5", "lambda6")
    assert fundamental_group("C4").names == ("lambda1",)
    assert fundamental_group("E6").names == ("lambda6",)
    for name in ("A3", "C4", "C5", "D5", "D6", "E7"):
        G = fundamental_group(name)
        for x in G.elements():
            assert G.project(G.lift(x)) == x


def test_starred_cells():
    assert lattice_data("A1", 4).starred
    assert not lattice_data("A1", 5).starred
    assert lattice_data("B2", 8).starred
    assert not lattice_data("B2", 6).starred
    assert lattice_data("F4", 8).starred
    assert not lattice_data("F4", 6).starred
