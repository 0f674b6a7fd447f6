"""Rank one end to end: solve for R_0, build R = R_0 Theta-bar, check the axioms."""
from __future__ import annotations

import sys

from rmatrix import f_from_solution, solve
from rmatrix.uqverify import SmallQuantumSl2, assemble_R_from_solution, verify_quasitriangular


def main(ell: int = 4) -> None:
    alg = SmallQuantumSl2(ell)
    print(f"u_q(sl2) at ell={ell}: dimension {alg.dimension}")
    for sol in solve("A1", ell):
        f = f_from_solution(sol)
        zero = f.X.zero()
        R = assemble_R_from_solution(alg, sol.omega)
        rep = verify_quasitriangular(alg, R)
        star = "*" if sol.starred else ""
        print(f"  (d,k)={sol.dk}{star}  f(0,0)={f(zero, zero)}  terms={len(R.terms)}  axioms={rep.axioms()}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 4)
