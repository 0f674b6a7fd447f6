from __future__ import annotations

from rmatrix.rootdata import parse_type
from rmatrix.table1 import (
    _DN_EVEN_ODD_ELL,
    _dn_even_odd_ell,
    _dn_system_solutions,
    expected,
    grid,
    is_excluded,
)


def test_grid_excludes_the_right_cells():
    cells = list(grid())
    assert ("G2", 6) not in [(str(t), e) for t, e in cells]
    assert is_excluded(parse_type("B3"), 4)
    assert not is_excluded(parse_type("B3"), 8)
    assert len(cells) == 22 * 8 - 4 - 3 - 1 - 3  # B, C, F lose ell=4; G2 loses 3, 4 and 6


def test_counts_from_the_table():
    assert len(expected("A1", 5).solutions) == 2
    assert expected("A1", 4).starred
    assert len(expected("D6", 8).solutions) == 16
    assert len(expected("D5", 6).solutions) == 4
    assert len(expected("E6", 9).solutions) == 3
    assert all(len(expected("E8", ell).solutions) == 1 for ell in (3, 4, 5, 6, 7, 8, 9, 12))
    assert expected("G2", 6) is None


def test_dn_system_with_printed_sign_reproduces_printed_solutions():
    printed, _labels = _dn_even_odd_ell(_DN_EVEN_ODD_ELL)
    assert len(printed) == 16
    assert _dn_system_solutions(+1) == printed
    assert _dn_system_solutions(-1) != printed
    assert len(_dn_system_solutions(-1)) == 16


def test_open_cells_are_flagged():
    for t, ell in grid():
        e = expected(t, ell)
        if e.open_question:
            assert e.alternative is not None
            assert (t.family, ell % 4) == ("B", 2) or (t.family == "D" and t.rank % 2 == 0 and ell % 2)
