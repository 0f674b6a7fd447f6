"""R-matrices for extended small quantum groups at roots of unity."""
from __future__ import annotations

from .cyclo import CycNum, root_of_unity
from .diamond import build_diamond, fundamental_group, kernel_lattice, lattice_data
from .equations import Pairing, cyclic_pairing, enumerate_pairings, gcd_criterion, pairing_solution
from .rootdata import DomainError, build, parse_type
from .rsolver import ExcludedError, R0Solution, check_f_equations, f_from_solution, solve

__all__ = [
    "CycNum",
    "root_of_unity",
    "build",
    "parse_type",
    "DomainError",
    "lattice_data",
    "kernel_lattice",
    "fundamental_group",
    "build_diamond",
    "Pairing",
    "cyclic_pairing",
    "enumerate_pairings",
    "pairing_solution",
    "gcd_criterion",
    "solve",
    "R0Solution",
    "ExcludedError",
    "f_from_solution",
    "check_f_equations",
]
